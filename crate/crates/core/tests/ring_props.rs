use hdx_core::polyring::{enumerate_polys, TruncPoly};
use proptest::prelude::*;

fn poly(p: u32, s: usize) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(0..p as u64, s).prop_map(move |c| TruncPoly::from_coeffs(p, s, &c).unwrap())
}

fn ring() -> impl Strategy<Value = (u32, usize)> {
    (prop::sample::select(vec![2u32, 3, 5, 7, 13]), 1usize..6)
}

fn triple() -> impl Strategy<Value = (TruncPoly, TruncPoly, TruncPoly)> {
    ring().prop_flat_map(|(p, s)| (poly(p, s), poly(p, s), poly(p, s)))
}

proptest! {
    #[test]
    fn addition_is_an_abelian_group((a, b, c) in triple()) {
        let zero = TruncPoly::zero(a.p(), a.s()).unwrap();
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg()).unwrap());
    }

    #[test]
    fn multiplication_is_commutative_associative_distributive((a, b, c) in triple()) {
        let one = TruncPoly::one(a.p(), a.s()).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }

    #[test]
    fn units_are_exactly_nonzero_constant_term((a, _, _) in triple()) {
        prop_assert_eq!(a.is_unit(), a.coeff(0) != 0);
        if a.is_unit() {
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_one());
        } else {
            prop_assert!(a.inverse().is_err());
        }
    }

    #[test]
    fn compact_text_round_trips((a, _, _) in triple()) {
        prop_assert_eq!(TruncPoly::parse_compact(&a.to_compact()).unwrap(), a);
    }

    #[test]
    fn truncation_is_a_ring_map((a, b, _) in triple()) {
        let lo = a.s().saturating_sub(1).max(1);
        let ab = a.mul(&b).unwrap().with_precision(lo).unwrap();
        let ab2 = a.with_precision(lo).unwrap().mul(&b.with_precision(lo).unwrap()).unwrap();
        prop_assert_eq!(ab, ab2);
    }
}

#[test]
fn mismatched_moduli_are_rejected() {
    let a = TruncPoly::one(3, 2).unwrap();
    assert!(a.add(&TruncPoly::one(5, 2).unwrap()).is_err());
    assert!(a.mul(&TruncPoly::one(3, 3).unwrap()).is_err());
}

#[test]
fn enumeration_counts() {
    // all polynomials of degree <= d in F_p[t]/t^s: p^(d+1) of them
    for (p, s, d) in [(2, 3, 1), (3, 4, 2), (5, 3, 1)] {
        let v = enumerate_polys(p, s, d).unwrap();
        assert_eq!(v.len() as u64, (p as u64).pow(d as u32 + 1));
        let mut w = v.clone();
        w.sort();
        w.dedup();
        assert_eq!(w.len(), v.len());
    }
}
