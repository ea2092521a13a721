use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::group::{bfs_closure, FiniteGroup, GroupDomain, IndexedGroup, MatrixDomain};
use super::matrix::{elementary, MatElement};
use super::subgroup::Subgroup;
use crate::polyring::{enumerate_polys, TruncPoly};
use crate::{Error, Result};

/// `gamma_0^i(k)` for the cyclic shift `k -> k+1 mod n+1` on `{1, ..., n+1}`.
pub fn gamma0_pow(n: usize, i: usize, k: usize) -> usize {
    (k - 1 + i) % (n + 1) + 1
}

/// Generators of `K_i`: `e_{g(j), g(j+1)}(r)` with `g = gamma_0^i`,
/// `1 <= j <= n` and non-zero `r` of degree at most `d`.
pub fn subgroup_k_generators(n: usize, p: u32, s: usize, d: usize, i: usize) -> Result<Vec<MatElement>> {
    if n == 0 {
        return Err(Error::param("rank n must be at least 1"));
    }
    if s <= d * n {
        return Err(Error::param(format!("K_i needs s > d*n, got s = {s}, d = {d}, n = {n}")));
    }
    if i > n {
        return Err(Error::param(format!("subgroup index {i} outside 0..={n}")));
    }
    let polys = enumerate_polys(p, s, d)?;
    let mut gens = Vec::new();
    for j in 1..=n {
        let (a, b) = (gamma0_pow(n, i, j), gamma0_pow(n, i, j + 1));
        for r in polys.iter().filter(|r| !r.is_zero()) {
            gens.push(elementary(n, a, b, r)?);
        }
    }
    Ok(gens)
}

/// The subgroup `K_i` of `SL_{n+1}(F_p[t]/t^s)`, enumerated on its own.
pub fn subgroup_k(n: usize, p: u32, s: usize, d: usize, i: usize, cap: usize) -> Result<FiniteGroup<MatrixDomain>> {
    let gens = subgroup_k_generators(n, p, s, d, i)?;
    let dom = MatrixDomain::new(n + 1, p, s)?;
    bfs_closure(dom, &gens, cap)
}

/// The group generated by all the `K_i`.
pub fn ko_group(n: usize, p: u32, s: usize, d: usize, cap: usize) -> Result<FiniteGroup<MatrixDomain>> {
    let mut gens = Vec::new();
    for i in 0..=n {
        gens.extend(subgroup_k_generators(n, p, s, d, i)?);
    }
    bfs_closure(MatrixDomain::new(n + 1, p, s)?, &gens, cap)
}

/// Locates the elements of `k` inside `g` (both over the same domain).
pub fn embed_subgroup<D: GroupDomain>(g: &FiniteGroup<D>, k: &FiniteGroup<D>) -> Result<Subgroup> {
    let mut members = Vec::with_capacity(k.order());
    for key in k.keys() {
        members.push(g.index_of_key(key).ok_or_else(|| Error::structural("subgroup element missing from the group"))?);
    }
    Ok(Subgroup::from_members_unchecked(g.order(), members))
}

/// Parametrises the congruence kernel of `SL_{n+1}(F_p[t]/t^s_hi) ->
/// SL_{n+1}(F_p[t]/t^s_lo)`.
///
/// An element is `I + t^s_lo M`. Every coefficient except those of the last
/// diagonal entry is free; the last diagonal entry is then forced by
/// `det = 1` because its cofactor is congruent to 1 and hence a unit.
#[derive(Debug, Clone)]
pub struct KernelParam {
    pub dim: usize,
    pub p: u32,
    pub s_hi: usize,
    pub s_lo: usize,
}

impl KernelParam {
    pub fn new(n: usize, p: u32, s_hi: usize, s_lo: usize) -> Result<Self> {
        if !(s_hi > s_lo && s_lo >= 1) {
            return Err(Error::param(format!("kernel needs s_hi > s_lo >= 1, got {s_hi}, {s_lo}")));
        }
        if n == 0 {
            return Err(Error::param("rank n must be at least 1"));
        }
        crate::polyring::check_ring(p, s_hi)?;
        Ok(KernelParam { dim: n + 1, p, s_hi, s_lo })
    }

    /// Number of free coefficients.
    pub fn free_coeffs(&self) -> usize {
        (self.dim * self.dim - 1) * (self.s_hi - self.s_lo)
    }

    /// `p^free_coeffs`, or `None` if it overflows `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.free_coeffs() as u32)
    }

    /// Builds the element for a digit vector of length `free_coeffs()`.
    pub fn element(&self, digits: &[u32]) -> Result<MatElement> {
        let (dim, p, s) = (self.dim, self.p, self.s_hi);
        let width = s - self.s_lo;
        let mut m = MatElement::identity(dim, p, s)?;
        let mut it = digits.iter();
        for e in 0..dim * dim - 1 {
            let (r, c) = (e / dim, e % dim);
            let mut coeffs = vec![0u64; s];
            if r == c {
                coeffs[0] = 1;
            }
            for k in 0..width {
                coeffs[self.s_lo + k] = *it.next().ok_or_else(|| Error::param("too few digits"))? as u64;
            }
            m.set_entry(r, c, &TruncPoly::from_coeffs(p, s, &coeffs)?)?;
        }
        // det is affine in the last diagonal entry x: det = x * C + D.
        let last = dim - 1;
        m.set_entry(last, last, &TruncPoly::zero(p, s)?)?;
        let d0 = m.det();
        let cof = if dim == 1 {
            TruncPoly::one(p, s)?
        } else {
            let mut minor = MatElement::identity(dim - 1, p, s)?;
            for r in 0..dim - 1 {
                for c in 0..dim - 1 {
                    minor.set_entry(r, c, &m.entry(r, c))?;
                }
            }
            minor.det()
        };
        let x = TruncPoly::one(p, s)?.sub(&d0)?.mul(&cof.inverse()?)?;
        m.set_entry(last, last, &x)?;
        debug_assert!(m.det().is_one());
        Ok(m)
    }

    /// A uniformly random kernel element.
    pub fn sample<R: RngCore>(&self, rng: &mut R) -> Result<MatElement> {
        let digits: Vec<u32> = (0..self.free_coeffs()).map(|_| (rng.next_u64() % self.p as u64) as u32).collect();
        self.element(&digits)
    }
}

/// Element orders in a congruence kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOrderReport {
    pub checked: u64,
    /// Every element was checked (otherwise a uniform sample was).
    pub exhaustive: bool,
    /// Non-identity elements whose order is not `p`.
    pub violations: u64,
    /// The first offending element and its order (`None` if it exceeds `p^2`).
    pub first_violation: Option<(MatElement, Option<u64>)>,
}

/// Checks that every non-identity kernel element has order exactly `p`:
/// all elements when the kernel has at most `exhaustive_cap` of them,
/// otherwise `samples` uniform ones.
pub fn check_kernel_orders(
    n: usize,
    p: u32,
    s_hi: usize,
    s_lo: usize,
    exhaustive_cap: u64,
    samples: u64,
    seed: u64,
) -> Result<KernelOrderReport> {
    let param = KernelParam::new(n, p, s_hi, s_lo)?;
    let free = param.free_coeffs();
    let exhaustive = param.order().is_some_and(|o| o <= exhaustive_cap);
    let mut rep = KernelOrderReport { checked: 0, exhaustive, violations: 0, first_violation: None };
    let visit = |m: MatElement, rep: &mut KernelOrderReport| {
        rep.checked += 1;
        if m.is_identity() {
            return;
        }
        if !m.pow(p as u64).is_identity() {
            rep.violations += 1;
            if rep.first_violation.is_none() {
                let ord = super::matrix_order(&m, (p as u64) * (p as u64));
                rep.first_violation = Some((m, ord));
            }
        }
    };
    if exhaustive {
        let mut digits = vec![0u32; free];
        loop {
            visit(param.element(&digits)?, &mut rep);
            let mut k = 0;
            while k < free {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == free {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            visit(param.sample(&mut rng)?, &mut rep);
        }
    }
    Ok(rep)
}

/// The congruence kernel as an enumerated group, elements in ascending key
/// order. The identity has the smallest key, so it is element 0.
///
/// Only the kernel is enumerated, so `cap` bounds the kernel order rather
/// than the ambient group.
pub fn reduction_kernel(n: usize, p: u32, s_hi: usize, s_lo: usize, cap: usize) -> Result<FiniteGroup<MatrixDomain>> {
    let param = KernelParam::new(n, p, s_hi, s_lo)?;
    let dom = MatrixDomain::new(param.dim, p, s_hi)?;
    let order = param.order().filter(|&o| o <= cap as u64).ok_or_else(|| {
        Error::resource("enumerating a congruence kernel", cap as u64, param.order().unwrap_or(u64::MAX))
    })? as usize;
    let free = param.free_coeffs();
    let mut digits = vec![0u32; free];
    let mut keys = Vec::with_capacity(order);
    for _ in 0..order {
        keys.push(dom.encode(&param.element(&digits)?));
        for k in (0..free).rev() {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
    keys.sort_unstable();
    let mut g = FiniteGroup::from_sorted_keys(dom, keys, &[])?;
    let gens = greedy_generators(&g);
    g.set_generators(gens);
    Ok(g)
}

pub(crate) fn greedy_generators<G: IndexedGroup>(g: &G) -> Vec<u32> {
    let mut inside = vec![false; g.order()];
    let mut members = vec![g.identity()];
    inside[g.identity() as usize] = true;
    let mut gens: Vec<u32> = Vec::new();
    for x in 0..g.order() as u32 {
        if inside[x as usize] {
            continue;
        }
        gens.push(x);
        // Old members are closed under the old generators, so they only
        // need the new one; fresh members need all of them.
        let old = members.len();
        let mut i = 0;
        while i < members.len() {
            let y = members[i];
            let from = if i < old { gens.len() - 1 } else { 0 };
            for &s in &gens[from..] {
                let z = g.mul(y, s);
                if !inside[z as usize] {
                    inside[z as usize] = true;
                    members.push(z);
                }
            }
            i += 1;
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::permutation_matrix;

    #[test]
    fn k0_order_128() {
        let k0 = subgroup_k(2, 2, 3, 1, 0, 1000).unwrap();
        assert_eq!(k0.order(), 128);
        let k1 = subgroup_k(2, 2, 3, 1, 1, 1000).unwrap();
        assert_eq!(k1.order(), 128);
        assert!(matches!(subgroup_k(2, 2, 2, 1, 0, 1000), Err(Error::Parameter(_))));
    }

    #[test]
    fn k_i_is_conjugate_of_k0() {
        let (n, p, s, d) = (2, 2, 3, 1);
        let k0 = subgroup_k(n, p, s, d, 0, 1000).unwrap();
        let dom = *k0.domain();
        // 0-based gamma_0: k -> k+1 mod 3
        let w = permutation_matrix(&[1, 2, 0], p, s).unwrap();
        for i in 1..=n {
            let ki = subgroup_k(n, p, s, d, i, 1000).unwrap();
            let mut wp = MatElement::identity(n + 1, p, s).unwrap();
            for _ in 0..i {
                wp = wp.mul(&w).unwrap();
            }
            let wpi = wp.inverse().unwrap();
            let mut conj: Vec<u128> = k0.keys().iter().map(|&k| dom.encode(&wp.mul(&dom.decode(k)).unwrap().mul(&wpi).unwrap())).collect();
            let mut direct = ki.keys().to_vec();
            conj.sort_unstable();
            direct.sort_unstable();
            assert_eq!(conj, direct);
        }
    }

    #[test]
    fn sl2_kernel_order_8() {
        let k = reduction_kernel(1, 2, 2, 1, 1000).unwrap();
        assert_eq!(k.order(), 8);
        assert_eq!(k.identity(), 0);
        for i in 0..k.order() as u32 {
            let m = k.element(i);
            assert!(m.det().is_one());
            assert!(m.reduce(1).unwrap().is_identity());
        }
        let e = elementary(1, 1, 2, &TruncPoly::monomial(2, 2, 1, 1).unwrap()).unwrap();
        assert!(k.index_of(&e).is_some());
    }

    #[test]
    fn kernel_matches_filtered_enumeration() {
        // Oracle: all 2x2 matrices over F_3[t]/t^2 congruent to I mod t, det 1.
        let (p, s) = (3u32, 2usize);
        let mut count = 0;
        for code in 0..3u32.pow(4) {
            let digits: Vec<u64> = (0..4).map(|k| ((code / 3u32.pow(k)) % 3) as u64).collect();
            let entry = |e: usize| {
                let c0 = if e == 0 || e == 3 { 1 } else { 0 };
                TruncPoly::from_coeffs(p, s, &[c0, digits[e]]).unwrap()
            };
            let m = MatElement::from_entries(2, &[entry(0), entry(1), entry(2), entry(3)]).unwrap();
            if m.det().is_one() {
                count += 1;
            }
        }
        assert_eq!(reduction_kernel(1, p, s, 1, 1000).unwrap().order(), count);
    }

    #[test]
    fn kernel_cap() {
        assert!(matches!(reduction_kernel(2, 3, 3, 1, 1000), Err(Error::Resource { .. })));
    }
}
