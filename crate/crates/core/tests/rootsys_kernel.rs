use hdx_core::matgroup::{check_kernel_orders, matrix_order, reduction_kernel, IndexedGroup, MatElement};
use hdx_core::polyring::TruncPoly;
use hdx_core::rootsys::*;

#[test]
fn propagation_covers_everything_at_stage_two() {
    for n in 3..=5 {
        let rep = verify_propagation(n, 2).unwrap();
        assert!(rep.fully_covered_at(2), "n = {n}");
        assert!(rep.monotonicity_violations.is_empty());
        assert!(rep.invariance_violations.is_empty());
        assert_eq!(rep.stages[2].covered, rep.total_pairs);
    }
}

#[test]
fn lemma_families_have_no_counterexamples() {
    for n in 3..=6 {
        assert!(shared_index_counterexamples(n).is_empty(), "n = {n}");
        assert!(consecutive_root_counterexamples(n).is_empty(), "n = {n}");
        assert!(gamma_family_counterexamples(n).is_empty(), "n = {n}");
        assert!(gamma1_boundary_mismatches(n).is_empty(), "n = {n}");
    }
}

#[test]
fn kernel_elements_have_order_p_when_p_s_lo_reaches_s_hi() {
    for (n, p, s_hi, s_lo) in [(1, 2, 2, 1), (1, 3, 3, 1), (1, 2, 4, 2), (2, 2, 2, 1), (1, 5, 2, 1), (2, 3, 3, 2)] {
        let rep = check_kernel_orders(n, p, s_hi, s_lo, 1 << 20, 0, 0).unwrap();
        assert!(rep.exhaustive);
        assert_eq!(rep.violations, 0, "n={n} p={p} s_hi={s_hi} s_lo={s_lo}");
    }
    // the enumerated group gives the same orders
    let k = reduction_kernel(1, 3, 2, 1, 1 << 12).unwrap();
    assert_eq!(k.order(), 27);
    for x in 1..k.order() as u32 {
        assert_eq!(hdx_core::matgroup::element_order(&k, x), 3);
    }
}

#[test]
fn kernel_orders_exceed_p_below_that_range() {
    // I + tM with M = [[0,1],[1,t]] over F_2[t]/t^3 has order 4
    let p = 2;
    let e = |c: &[u64]| TruncPoly::from_coeffs(p, 3, c).unwrap();
    let m = MatElement::from_entries(2, &[e(&[1]), e(&[0, 1]), e(&[0, 1]), e(&[1, 0, 1])]).unwrap();
    assert!(m.det().is_one());
    assert!(m.reduce(1).unwrap().is_identity());
    assert_eq!(matrix_order(&m, 16), Some(4));
    let rep = check_kernel_orders(1, 2, 3, 1, 1 << 20, 0, 0).unwrap();
    assert!(rep.violations > 0);
}
