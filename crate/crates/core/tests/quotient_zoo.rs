use hdx_core::cohomology::quotient_h1;
use hdx_core::complex::{coset_complex, coset_complex_pairwise, quotient_pair, verify_quotient_proposition};
use hdx_core::fixtures::coset_zoo;
use hdx_core::matgroup::{IndexedGroup, TableGroup};

#[test]
fn quotient_is_the_coset_complex_of_the_quotient() {
    let mut checked = 0;
    for inst in coset_zoo().unwrap() {
        for n in &inst.normals {
            assert!(verify_quotient_proposition(&inst.group, &inst.subgroups, &n.subgroup).unwrap(), "{}", inst.label(n));
            let (left, right) = quotient_pair(&inst.group, &inst.subgroups, &n.subgroup).unwrap();
            assert_eq!(left.face_counts(), right.face_counts(), "{}", inst.label(n));
            assert!(left.weights().normalized());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} instances");
}

#[test]
fn face_rules_agree_where_the_flag_condition_holds() {
    for inst in coset_zoo().unwrap() {
        let orbit = coset_complex(&inst.group, &inst.subgroups).unwrap().complex;
        let pairwise = coset_complex_pairwise(&inst.group, &inst.subgroups).unwrap().complex;
        assert!(orbit.face_counts()[orbit.dim()] <= pairwise.face_counts()[pairwise.dim()], "{}", inst.name);
        if inst.subgroups.len() == 2 {
            assert_eq!(orbit, pairwise, "{}", inst.name);
        }
    }
}

/// Coefficient groups without elements of order `p`.
fn coprime_lambdas(p: u64) -> Vec<TableGroup> {
    [2usize, 3, 4, 5].into_iter().filter(|m| *m as u64 % p != 0).map(|m| TableGroup::cyclic(m).unwrap()).collect()
}

#[test]
fn vanishing_passes_to_quotients() {
    let mut non_vacuous = 0;
    for inst in coset_zoo().unwrap() {
        for n in &inst.normals {
            let Some(p) = n.prime else { continue };
            for lam in coprime_lambdas(p) {
                let r = quotient_h1(&inst.group, &inst.subgroups, &n.subgroup, &lam, 1 << 24).unwrap();
                if r.cover_trivial {
                    non_vacuous += 1;
                    assert!(r.quotient_trivial, "{} with Z/{}", inst.label(n), lam.order());
                }
            }
        }
    }
    assert!(non_vacuous >= 5, "only {non_vacuous} instances with trivial H^1 upstairs");
}
