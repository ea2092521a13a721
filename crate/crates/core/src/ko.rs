//! The coset complexes of `SL_{n+1}(F_p[t]/t^s)` with respect to the
//! subgroups `K_0, ..., K_n`, and their links.

use alloc::format;
use alloc::vec::Vec;

use crate::complex::{coset_complex, CosetComplex};
use crate::matgroup::{
    embed_subgroup, intersection_all, ko_group, subgroup_k, FiniteGroup, IndexedGroup, MatrixDomain, Subgroup,
};
use crate::spectral::{link_entry, SpectralReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KoParams {
    pub n: usize,
    pub p: u32,
    pub s: usize,
    pub d: usize,
}

impl KoParams {
    pub fn new(n: usize, p: u32, s: usize, d: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::param("rank n must be at least 1"));
        }
        if s <= d * n {
            return Err(Error::param(format!("need s > d*n, got s = {s}, d = {d}, n = {n}")));
        }
        crate::polyring::check_ring(p, s)?;
        Ok(KoParams { n, p, s, d })
    }
}

/// The ambient group with `K_0, ..., K_n` located inside it.
pub struct KoGroup {
    pub params: KoParams,
    pub group: FiniteGroup<MatrixDomain>,
    pub subgroups: Vec<Subgroup>,
}

pub fn ko_setup(params: KoParams, cap: usize) -> Result<KoGroup> {
    let KoParams { n, p, s, d } = params;
    let group = ko_group(n, p, s, d, cap)?;
    let mut subgroups = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let k = subgroup_k(n, p, s, d, i, cap)?;
        subgroups.push(embed_subgroup(&group, &k)?);
    }
    Ok(KoGroup { params, group, subgroups })
}

/// Face counts predicted by orbit-stabilizer: a face of type `I` has
/// stabilizer `K_I = cap_{i in I} K_i`, so there are `|G| / |K_I|` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoPrediction {
    pub group_order: u64,
    /// `(type, |K_I|, |G|/|K_I|)` for every non-empty type.
    pub by_type: Vec<(Vec<usize>, u64, u64)>,
    /// Predicted number of faces per dimension.
    pub per_dim: Vec<u64>,
}

pub fn ko_prediction(kg: &KoGroup) -> KoPrediction {
    let n = kg.params.n;
    let order = kg.group.order() as u64;
    let mut by_type = Vec::new();
    let mut per_dim = alloc::vec![0u64; n + 1];
    for mask in 1u32..(1 << (n + 1)) {
        let ty: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
        let subs: Vec<&Subgroup> = ty.iter().map(|&i| &kg.subgroups[i]).collect();
        let stab = intersection_all(&kg.group, &subs).order() as u64;
        per_dim[ty.len() - 1] += order / stab;
        by_type.push((ty, stab, order / stab));
    }
    KoPrediction { group_order: order, by_type, per_dim }
}

pub struct KoComplex {
    pub setup: KoGroup,
    pub complex: CosetComplex,
    pub prediction: KoPrediction,
}

/// Builds the full complex. Memory is linear in `|G|`.
pub fn ko_complex(params: KoParams, cap: usize) -> Result<KoComplex> {
    let setup = ko_setup(params, cap)?;
    let prediction = ko_prediction(&setup);
    let complex = coset_complex(&setup.group, &setup.subgroups)?;
    Ok(KoComplex { setup, complex, prediction })
}

/// The link of a face of type `ty` (a set of colors), built as the coset
/// complex of `K_ty` with respect to `K_ty ∩ K_j` for `j` outside `ty`.
/// Only the subgroups are enumerated, never the ambient group.
pub fn ko_link(params: KoParams, ty: &[usize], cap: usize) -> Result<CosetComplex> {
    let KoParams { n, p, s, d } = params;
    let mut ty = ty.to_vec();
    ty.sort_unstable();
    ty.dedup();
    if ty.is_empty() || ty.iter().any(|&i| i > n) {
        return Err(Error::param(format!("face type {ty:?} must be a non-empty subset of 0..={n}")));
    }
    let rest: Vec<usize> = (0..=n).filter(|i| !ty.contains(i)).collect();
    if rest.len() < 2 {
        return Err(Error::param("the link of this face type has no edges"));
    }
    let ks: Vec<FiniteGroup<MatrixDomain>> = (0..=n).map(|i| subgroup_k(n, p, s, d, i, cap)).collect::<Result<_>>()?;
    let base = &ks[ty[0]];
    let in_all = |x: u32, idx: &[usize]| idx.iter().all(|&j| ks[j].index_of_key(&base.key(x)).is_some());
    let members: Vec<u32> = (0..base.order() as u32).filter(|&x| in_all(x, &ty[1..])).collect();
    let host = sub_finite_group(base, &members)?;
    let subs: Vec<Subgroup> = rest
        .iter()
        .map(|&j| {
            let m: Vec<u32> = (0..host.order() as u32).filter(|&x| ks[j].index_of_key(&host.key(x)).is_some()).collect();
            Subgroup::from_elements(&host, &m)
        })
        .collect::<Result<_>>()?;
    coset_complex(&host, &subs)
}

/// Local spectral report over face types. Links of faces of the same type
/// are isomorphic (the group acts transitively on them), so one link per
/// type of dimension `0..=n-2` is enough; the empty face is skipped because
/// its link is the whole complex.
pub fn ko_spectral_report(params: KoParams, threshold: f64, cap: usize) -> Result<SpectralReport> {
    let n = params.n;
    let mut entries = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let ty: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
        if ty.len() + 1 > n {
            continue;
        }
        let link = ko_link(params, &ty, cap)?;
        entries.push(link_entry(ty.iter().map(|&i| i as u32).collect(), &link.complex)?);
    }
    entries.sort_by(|a, b| (a.face.len(), &a.face).cmp(&(b.face.len(), &b.face)));
    Ok(SpectralReport::from_entries(threshold, entries))
}

/// Re-indexes a subgroup of an enumerated group as a group in its own right.
fn sub_finite_group(g: &FiniteGroup<MatrixDomain>, members: &[u32]) -> Result<FiniteGroup<MatrixDomain>> {
    let mut keys: Vec<u128> = members.iter().map(|&x| g.key(x)).collect();
    keys.sort_unstable();
    let mut h = FiniteGroup::from_sorted_keys(*g.domain(), keys, &[])?;
    let gens = crate::matgroup::greedy_generators(&h);
    h.set_generators(gens);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_isomorphic_partite;

    #[test]
    fn small_ko_counts_match_prediction() {
        // SL_2 over F_2[t]/t^2 with d = 1 is small enough to build here.
        let params = KoParams::new(1, 2, 2, 1).unwrap();
        let ko = ko_complex(params, 1 << 12).unwrap();
        let counts: Vec<u64> = ko.complex.complex.face_counts().iter().map(|&c| c as u64).collect();
        assert_eq!(counts, ko.prediction.per_dim);
        assert!(ko.complex.complex.weights().normalized());
    }

    #[test]
    fn link_matches_direct_link() {
        let params = KoParams::new(2, 2, 3, 1).unwrap();
        let l0 = ko_link(params, &[0], 1 << 10).unwrap();
        let l1 = ko_link(params, &[1], 1 << 10).unwrap();
        assert_eq!(l0.complex.vertex_count(), l1.complex.vertex_count());
        assert!(is_isomorphic_partite(&l0.complex, &l1.complex, 10_000).unwrap().is_some());
        assert!(l0.complex.is_connected());
        assert!(ko_link(params, &[0, 1, 2], 1 << 10).is_err());
    }

    #[test]
    fn spectral_report_over_types() {
        let params = KoParams::new(2, 2, 3, 1).unwrap();
        let r = ko_spectral_report(params, 1.0, 1 << 10).unwrap();
        assert_eq!(r.entries.len(), 3);
        assert!(r.entries.iter().all(|e| e.connected));
        let l = r.entries[0].lambda2.unwrap();
        assert!(r.entries.iter().all(|e| (e.lambda2.unwrap() - l).abs() < 1e-9));
        assert!(r.pass);
    }
}
