use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;

use super::matrix::MatElement;
use crate::{Error, Result};

/// Multiplication, identity and inverse on some element type.
pub trait GroupOps {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

/// A [`GroupOps`] whose elements have a compact canonical key.
pub trait GroupDomain: GroupOps {
    type Key: Copy + Eq + Hash + Ord;
    fn encode(&self, a: &Self::Elem) -> Self::Key;
    fn decode(&self, key: Self::Key) -> Self::Elem;
}

/// A finite group whose elements are the indices `0..order()`.
pub trait IndexedGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
    fn generators(&self) -> &[u32];

    /// Like [`IndexedGroup::mul`] but reports products outside the element set.
    fn try_mul(&self, a: u32, b: u32) -> Option<u32> {
        Some(self.mul(a, b))
    }
}

/// Matrices of fixed dimension over `F_p[t]/<t^s>`.
///
/// Keys pack each coefficient into `ceil(log2 p)` bits, entries row-major and
/// coefficients lowest degree first, starting at the least significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixDomain {
    pub dim: usize,
    pub p: u32,
    pub s: usize,
    bits: u32,
}

impl MatrixDomain {
    pub fn new(dim: usize, p: u32, s: usize) -> Result<Self> {
        crate::polyring::check_ring(p, s)?;
        let bits = 32 - (p - 1).leading_zeros();
        let total = bits as usize * dim * dim * s;
        if total > 128 || dim == 0 {
            return Err(Error::param(format!(
                "SL_{dim} over F_{p}[t]/t^{s} needs {total} bits per element; at most 128 are supported"
            )));
        }
        Ok(MatrixDomain { dim, p, s, bits })
    }

    pub fn for_element(m: &MatElement) -> Result<Self> {
        Self::new(m.dim(), m.p(), m.s())
    }

    fn check(&self, m: &MatElement) -> Result<()> {
        if m.dim() != self.dim || m.p() != self.p || m.s() != self.s {
            return Err(Error::param("matrix does not belong to this domain"));
        }
        Ok(())
    }

    /// Checked encoding for matrices from outside the domain.
    pub fn try_encode(&self, m: &MatElement) -> Result<u128> {
        self.check(m)?;
        Ok(self.encode(m))
    }
}

impl GroupOps for MatrixDomain {
    type Elem = MatElement;

    fn identity(&self) -> MatElement {
        MatElement::identity(self.dim, self.p, self.s).expect("validated domain")
    }

    fn mul(&self, a: &MatElement, b: &MatElement) -> MatElement {
        a.mul_unchecked(b)
    }

    fn inv(&self, a: &MatElement) -> MatElement {
        a.inverse().expect("group elements are invertible")
    }
}

impl GroupDomain for MatrixDomain {
    type Key = u128;

    fn encode(&self, a: &MatElement) -> u128 {
        let mut key = 0u128;
        for (k, &c) in a.raw().iter().enumerate() {
            key |= (c as u128) << (k as u32 * self.bits);
        }
        key
    }

    fn decode(&self, key: u128) -> MatElement {
        let mask = (1u128 << self.bits) - 1;
        let len = self.dim * self.dim * self.s;
        let data = (0..len).map(|k| ((key >> (k as u32 * self.bits)) & mask) as u32).collect();
        MatElement::from_raw(self.dim, self.p, self.s, data)
    }
}

/// Matrix arithmetic without canonical keys, for groups too large to
/// enumerate (no bit limit applies).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixOps {
    pub dim: usize,
    pub p: u32,
    pub s: usize,
}

impl MatrixOps {
    pub fn new(dim: usize, p: u32, s: usize) -> Result<Self> {
        crate::polyring::check_ring(p, s)?;
        if dim == 0 {
            return Err(Error::param("matrix dimension must be positive"));
        }
        Ok(MatrixOps { dim, p, s })
    }
}

impl GroupOps for MatrixOps {
    type Elem = MatElement;

    fn identity(&self) -> MatElement {
        MatElement::identity(self.dim, self.p, self.s).expect("validated ring")
    }

    fn mul(&self, a: &MatElement, b: &MatElement) -> MatElement {
        a.mul_unchecked(b)
    }

    fn inv(&self, a: &MatElement) -> MatElement {
        a.inverse().expect("group elements are invertible")
    }
}

/// Permutations of `{0, ..., degree-1}` composed right to left:
/// `(a * b)(x) = a(b(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermDomain {
    pub degree: usize,
}

impl PermDomain {
    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 || degree > 25 {
            return Err(Error::param(format!("permutation degree {degree} outside 1..=25")));
        }
        Ok(PermDomain { degree })
    }

    /// Permutation from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(&self, cycles: &[&[usize]]) -> Result<Vec<u8>> {
        let mut img: Vec<u8> = (0..self.degree as u8).collect();
        let mut seen = vec![false; self.degree];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                let y = cyc[(k + 1) % cyc.len()];
                if x == 0 || x > self.degree || y == 0 || y > self.degree || seen[x - 1] {
                    return Err(Error::param("malformed cycle"));
                }
                seen[x - 1] = true;
                img[x - 1] = (y - 1) as u8;
            }
        }
        Ok(img)
    }
}

impl GroupOps for PermDomain {
    type Elem = Vec<u8>;

    fn identity(&self) -> Vec<u8> {
        (0..self.degree as u8).collect()
    }

    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    fn inv(&self, a: &Vec<u8>) -> Vec<u8> {
        let mut out = vec![0u8; a.len()];
        for (i, &x) in a.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        out
    }
}

impl GroupDomain for PermDomain {
    type Key = u128;

    fn encode(&self, a: &Vec<u8>) -> u128 {
        a.iter().enumerate().fold(0u128, |k, (i, &x)| k | ((x as u128) << (5 * i)))
    }

    fn decode(&self, key: u128) -> Vec<u8> {
        (0..self.degree).map(|i| ((key >> (5 * i)) & 31) as u8).collect()
    }
}

/// A finite group stored as an indexed arena of canonical keys.
#[derive(Debug, Clone)]
pub struct FiniteGroup<D: GroupDomain> {
    domain: D,
    keys: Vec<D::Key>,
    index: HashMap<D::Key, u32>,
    identity: u32,
    generators: Vec<u32>,
}

impl<D: GroupDomain> FiniteGroup<D> {
    /// Wraps a key set that is already known to be a group.
    ///
    /// The caller guarantees closure; `generators` are looked up by key.
    pub(crate) fn from_sorted_keys(domain: D, keys: Vec<D::Key>, generators: &[D::Key]) -> Result<Self> {
        let index: HashMap<D::Key, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let id_key = domain.encode(&domain.identity());
        let identity = *index.get(&id_key).ok_or_else(|| Error::structural("identity missing from element set"))?;
        let mut gens = Vec::new();
        for g in generators {
            let gi = *index.get(g).ok_or_else(|| Error::structural("generator outside element set"))?;
            if !gens.contains(&gi) {
                gens.push(gi);
            }
        }
        Ok(FiniteGroup { domain, keys, index, identity, generators: gens })
    }

    pub fn domain(&self) -> &D {
        &self.domain
    }

    pub fn keys(&self) -> &[D::Key] {
        &self.keys
    }

    pub fn key(&self, i: u32) -> D::Key {
        self.keys[i as usize]
    }

    pub fn element(&self, i: u32) -> D::Elem {
        self.domain.decode(self.keys[i as usize])
    }

    pub fn index_of_key(&self, key: &D::Key) -> Option<u32> {
        self.index.get(key).copied()
    }

    pub fn index_of(&self, elem: &D::Elem) -> Option<u32> {
        self.index_of_key(&self.domain.encode(elem))
    }

    /// Replaces the recorded generating set (indices must generate the group;
    /// this is not re-verified).
    pub fn set_generators(&mut self, gens: Vec<u32>) {
        self.generators = gens;
    }
}

impl<D: GroupDomain> IndexedGroup for FiniteGroup<D> {
    fn order(&self) -> usize {
        self.keys.len()
    }

    fn identity(&self) -> u32 {
        self.identity
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.try_mul(a, b).expect("product of group elements lies in the group")
    }

    fn inv(&self, a: u32) -> u32 {
        let x = self.domain.inv(&self.element(a));
        self.index_of(&x).expect("inverse of a group element lies in the group")
    }

    fn generators(&self) -> &[u32] {
        &self.generators
    }

    fn try_mul(&self, a: u32, b: u32) -> Option<u32> {
        let x = self.domain.mul(&self.element(a), &self.element(b));
        self.index_of(&x)
    }
}

/// Enumerates the group generated by `gens` by breadth-first search.
///
/// Elements are numbered layer by layer (layer `k` holds the elements first
/// reached by words of length `k` in the generators, multiplied on the
/// right), and within a layer by ascending key. The identity is element 0.
pub fn bfs_closure<D: GroupDomain>(domain: D, gens: &[D::Elem], cap: usize) -> Result<FiniteGroup<D>> {
    if cap == 0 {
        return Err(Error::param("cap must be positive"));
    }
    let id = domain.identity();
    let id_key = domain.encode(&id);
    let mut gen_elems: Vec<D::Elem> = Vec::new();
    let mut gen_keys: Vec<D::Key> = Vec::new();
    for g in gens {
        let k = domain.encode(g);
        if k != id_key && !gen_keys.contains(&k) {
            gen_keys.push(k);
            gen_elems.push(g.clone());
        }
    }
    let mut keys = vec![id_key];
    let mut index: HashMap<D::Key, u32> = HashMap::new();
    index.insert(id_key, 0);
    let mut layer_start = 0usize;
    while layer_start < keys.len() {
        let layer_end = keys.len();
        let mut fresh: Vec<D::Key> = Vec::new();
        for i in layer_start..layer_end {
            let x = domain.decode(keys[i]);
            for g in &gen_elems {
                let k = domain.encode(&domain.mul(&x, g));
                if let hashbrown::hash_map::Entry::Vacant(v) = index.entry(k) {
                    v.insert(u32::MAX);
                    fresh.push(k);
                    if keys.len() + fresh.len() > cap {
                        return Err(Error::resource("enumerating a group by BFS", cap as u64, (keys.len() + fresh.len()) as u64));
                    }
                }
            }
        }
        fresh.sort_unstable();
        for k in fresh {
            index.insert(k, keys.len() as u32);
            keys.push(k);
        }
        layer_start = layer_end;
    }
    let generators = gen_keys.iter().map(|k| index[k]).collect();
    Ok(FiniteGroup { domain, keys, index, identity: 0, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::matrix::elementary;
    use crate::polyring::{enumerate_polys, TruncPoly};

    #[test]
    fn sl2_f3_has_order_24() {
        let d = MatrixDomain::new(2, 3, 1).unwrap();
        let mut gens = Vec::new();
        for r in enumerate_polys(3, 1, 0).unwrap() {
            gens.push(elementary(1, 1, 2, &r).unwrap());
            gens.push(elementary(1, 2, 1, &r).unwrap());
        }
        let g = bfs_closure(d, &gens, 1000).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn trivial_group() {
        let d = MatrixDomain::new(3, 2, 2).unwrap();
        let g = bfs_closure(d, &[d.identity()], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.generators().is_empty());
    }

    #[test]
    fn cap_overflow_is_resource_error() {
        let d = PermDomain::new(5).unwrap();
        let gens = [d.from_cycles(&[&[1, 2]]).unwrap(), d.from_cycles(&[&[1, 2, 3, 4, 5]]).unwrap()];
        match bfs_closure(d, &gens, 50) {
            Err(Error::Resource { cap, reached, .. }) => {
                assert_eq!(cap, 50);
                assert!(reached > 50);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(bfs_closure(d, &gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn key_round_trip() {
        let d = MatrixDomain::new(3, 5, 3).unwrap();
        let m = elementary(2, 1, 3, &TruncPoly::from_coeffs(5, 3, &[4, 3, 2]).unwrap()).unwrap();
        assert_eq!(d.decode(d.encode(&m)), m);
        assert!(MatrixDomain::new(4, 5, 2).unwrap().bits == 3);
        assert!(MatrixDomain::new(4, 5, 4).is_err());
    }

    #[test]
    fn ordering_is_deterministic() {
        let d = PermDomain::new(4).unwrap();
        let gens = [d.from_cycles(&[&[1, 2]]).unwrap(), d.from_cycles(&[&[1, 2, 3, 4]]).unwrap()];
        let a = bfs_closure(d, &gens, 100).unwrap();
        let b = bfs_closure(d, &gens, 100).unwrap();
        assert_eq!(a.keys(), b.keys());
    }
}
