use hdx_core::matgroup::{elementary, MatrixOps};
use hdx_core::relations::*;

#[test]
fn sl_relations_hold_in_sl4() {
    for p in [3, 5] {
        let pres = presentation_sl(3, p, 1).unwrap();
        let rep = verify_in_matrices(&pres, 4).unwrap();
        assert!(rep.checked > 0);
        assert!(rep.ok(), "p = {p}: {} violations", rep.violations.len());
    }
}

#[test]
fn unipotent_relations_hold() {
    let pres = presentation_unipotent(4, 3, 1).unwrap();
    assert_eq!(pres.n, 4);
    let rep = verify_in_matrices(&pres, 4).unwrap();
    assert!(rep.ok(), "{} violations", rep.violations.len());
}

#[test]
fn chamber_relations_hold() {
    let (pre, full) = chamber_relation_sets(3, 2, 1).unwrap();
    assert!(pre.relations.len() <= full.relations.len());
    assert!(verify_in_matrices(&full, 4).unwrap().ok());
    let tilde = tilde_gamma_presentation(3, 2, 1).unwrap();
    assert!(verify_in_matrices(&tilde, 4).unwrap().ok());
}

#[test]
fn corrupted_assignment_is_caught() {
    let pres = presentation_sl(3, 3, 1).unwrap();
    let s = 4;
    let ops = MatrixOps::new(4, 3, s).unwrap();
    // send every generator to the transposed elementary matrix
    let rep = verify_relations(
        &pres,
        |g| elementary(3, g.root.j, g.root.i, &g.r.with_precision(s).unwrap()).ok(),
        &ops,
    )
    .unwrap();
    assert!(!rep.ok());
    assert!(rep.violations.iter().all(|&k| k < rep.checked));
}

#[test]
fn commutator_power_identity() {
    for (n, p, s) in [(2, 2, 3), (3, 3, 4), (3, 5, 4)] {
        let rep = sample_commutator_power(n, p, s, 1000, 17).unwrap();
        assert!(rep.qualifying >= 1000, "only {} qualifying pairs", rep.qualifying);
        assert_eq!(rep.violations, 0);
    }
}
