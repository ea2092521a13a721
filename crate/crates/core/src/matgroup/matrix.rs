use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::polyring::{check_ring, TruncPoly};
use crate::{Error, Result};

/// A square matrix over `F_p[t]/<t^s>`.
///
/// Entries are stored row-major, each entry as `s` coefficients lowest
/// degree first, so `data[(r * dim + c) * s + k]` is the `t^k` coefficient
/// of entry `(r, c)` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatElement {
    dim: usize,
    p: u32,
    s: usize,
    data: Vec<u32>,
}

impl MatElement {
    pub fn zero(dim: usize, p: u32, s: usize) -> Result<Self> {
        check_ring(p, s)?;
        if dim == 0 {
            return Err(Error::param("matrix dimension must be positive"));
        }
        Ok(MatElement { dim, p, s, data: vec![0; dim * dim * s] })
    }

    pub fn identity(dim: usize, p: u32, s: usize) -> Result<Self> {
        let mut m = Self::zero(dim, p, s)?;
        for r in 0..dim {
            m.data[(r * dim + r) * s] = 1;
        }
        Ok(m)
    }

    /// Builds a matrix from a row-major list of entries.
    pub fn from_entries(dim: usize, entries: &[TruncPoly]) -> Result<Self> {
        let first = entries.first().ok_or_else(|| Error::param("no entries"))?;
        if entries.len() != dim * dim {
            return Err(Error::param(format!("expected {} entries, got {}", dim * dim, entries.len())));
        }
        let (p, s) = (first.p(), first.s());
        let mut m = Self::zero(dim, p, s)?;
        for (e, poly) in entries.iter().enumerate() {
            if poly.p() != p || poly.s() != s {
                return Err(Error::param("entries do not share one coefficient ring"));
            }
            m.data[e * s..(e + 1) * s].copy_from_slice(poly.coeffs());
        }
        Ok(m)
    }

    pub(crate) fn from_raw(dim: usize, p: u32, s: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), dim * dim * s);
        MatElement { dim, p, s, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Raw coefficient array (row-major entries, low degree first).
    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    fn slot(&self, r: usize, c: usize) -> &[u32] {
        let o = (r * self.dim + c) * self.s;
        &self.data[o..o + self.s]
    }

    /// Entry `(r, c)` with 0-based indices.
    pub fn entry(&self, r: usize, c: usize) -> TruncPoly {
        TruncPoly::from_residues_unchecked(self.p, self.s, self.slot(r, c).to_vec())
    }

    pub fn set_entry(&mut self, r: usize, c: usize, value: &TruncPoly) -> Result<()> {
        if value.p() != self.p || value.s() != self.s {
            return Err(Error::param("entry ring does not match matrix ring"));
        }
        if r >= self.dim || c >= self.dim {
            return Err(Error::param(format!("index ({r}, {c}) outside {0}x{0} matrix", self.dim)));
        }
        let o = (r * self.dim + c) * self.s;
        self.data[o..o + self.s].copy_from_slice(value.coeffs());
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let e = self.slot(r, c);
                let head = if r == c { 1 } else { 0 };
                e[0] == head && e[1..].iter().all(|&x| x == 0)
            })
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.p != other.p || self.s != other.s {
            return Err(Error::param("matrices live in different groups"));
        }
        Ok(())
    }

    /// Matrix product. Zero entries of either factor are skipped, which
    /// makes multiplying by an elementary matrix cheap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, s, p) = (self.dim, self.s, self.p as u64);
        let mut acc = vec![0u64; n * n * s];
        for r in 0..n {
            for k in 0..n {
                let a = self.slot(r, k);
                let Some(alow) = a.iter().position(|&x| x != 0) else { continue };
                for c in 0..n {
                    let b = other.slot(k, c);
                    let Some(blow) = b.iter().position(|&x| x != 0) else { continue };
                    let out = &mut acc[(r * n + c) * s..(r * n + c + 1) * s];
                    for i in alow..s {
                        let ai = a[i] as u64;
                        if ai == 0 {
                            continue;
                        }
                        for j in blow..s - i {
                            out[i + j] += ai * b[j] as u64;
                        }
                    }
                }
            }
        }
        MatElement { dim: n, p: self.p, s, data: acc.into_iter().map(|x| (x % p) as u32).collect() }
    }

    /// Determinant, computed without divisions (Berkowitz).
    pub fn det(&self) -> TruncPoly {
        let n = self.dim;
        let zero = TruncPoly::from_residues_unchecked(self.p, self.s, vec![0; self.s]);
        let one = TruncPoly::from_residues_unchecked(self.p, self.s, {
            let mut v = vec![0; self.s];
            v[0] = 1;
            v
        });
        let add = |a: &TruncPoly, b: &TruncPoly| a.add(b).expect("same ring");
        let mul = |a: &TruncPoly, b: &TruncPoly| a.mul(b).expect("same ring");
        let a = |r: usize, c: usize| self.entry(r, c);

        // Characteristic polynomial coefficients of the leading r x r block,
        // highest power first.
        let mut v: Vec<TruncPoly> = vec![one.clone()];
        for r in 0..n {
            // Column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, ...
            let mut col = Vec::with_capacity(r + 2);
            col.push(one.clone());
            col.push(a(r, r).neg());
            let mut w: Vec<TruncPoly> = (0..r).map(|i| a(i, r)).collect();
            for _ in 0..r {
                let rc = (0..r).fold(zero.clone(), |acc, k| add(&acc, &mul(&a(r, k), &w[k])));
                col.push(rc.neg());
                w = (0..r)
                    .map(|i| (0..r).fold(zero.clone(), |acc, k| add(&acc, &mul(&a(i, k), &w[k]))))
                    .collect();
            }
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = zero.clone();
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        acc = add(&acc, &mul(&col[i - j], vj));
                    }
                }
                next.push(acc);
            }
            v = next;
        }
        let last = v.pop().expect("non-empty");
        if n % 2 == 1 {
            last.neg()
        } else {
            last
        }
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots.
    ///
    /// The ring is local, so an invertible matrix always has a unit pivot
    /// available in each column.
    pub fn inverse(&self) -> Result<Self> {
        let (n, s, p) = (self.dim, self.s, self.p);
        let mut a: Vec<TruncPoly> = (0..n * n).map(|e| self.entry(e / n, e % n)).collect();
        let mut b: Vec<TruncPoly> = Self::identity(n, p, s)?.entries();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r * n + col].is_unit())
                .ok_or_else(|| Error::param("matrix is not invertible"))?;
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    b.swap(piv * n + c, col * n + c);
                }
            }
            let inv = a[col * n + col].inverse()?;
            for c in 0..n {
                a[col * n + c] = a[col * n + c].mul(&inv)?;
                b[col * n + c] = b[col * n + c].mul(&inv)?;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for c in 0..n {
                    a[r * n + c] = a[r * n + c].sub(&f.mul(&a[col * n + c])?)?;
                    b[r * n + c] = b[r * n + c].sub(&f.mul(&b[col * n + c])?)?;
                }
            }
        }
        Self::from_entries(n, &b)
    }

    pub fn entries(&self) -> Vec<TruncPoly> {
        (0..self.dim * self.dim).map(|e| self.entry(e / self.dim, e % self.dim)).collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.p, self.s).expect("valid ring");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// `[x, y] = x y x^-1 y^-1`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let xi = self.inverse()?;
        let yi = other.inverse()?;
        Ok(self.mul_unchecked(other).mul_unchecked(&xi).mul_unchecked(&yi))
    }

    /// Reduces every entry modulo `t^s_lo`.
    pub fn reduce(&self, s_lo: usize) -> Result<Self> {
        if s_lo == 0 || s_lo > self.s {
            return Err(Error::param(format!("cannot reduce from s = {} to s = {s_lo}", self.s)));
        }
        let mut data = Vec::with_capacity(self.dim * self.dim * s_lo);
        for e in 0..self.dim * self.dim {
            data.extend_from_slice(&self.data[e * self.s..e * self.s + s_lo]);
        }
        Ok(MatElement { dim: self.dim, p: self.p, s: s_lo, data })
    }

    /// Re-reads a matrix in a higher precision ring (zero padding).
    pub fn lift(&self, s_hi: usize) -> Result<Self> {
        let entries: Result<Vec<_>> = self.entries().iter().map(|e| e.with_precision(s_hi)).collect();
        Self::from_entries(self.dim, &entries?)
    }

    /// Number of coefficients in the raw array.
    pub fn coeff_count(&self) -> usize {
        self.data.len()
    }

}

impl fmt::Display for MatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.dim {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.dim {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        f.write_str("]")
    }
}

/// The elementary matrix `e_{i,j}(r)` in dimension `n + 1` (1-based indices).
pub fn elementary(n: usize, i: usize, j: usize, r: &TruncPoly) -> Result<MatElement> {
    let dim = n + 1;
    if i == j {
        return Err(Error::param(format!("elementary matrix needs i != j, got i = j = {i}")));
    }
    if i == 0 || j == 0 || i > dim || j > dim {
        return Err(Error::param(format!("indices ({i}, {j}) outside 1..={dim}")));
    }
    let mut m = MatElement::identity(dim, r.p(), r.s())?;
    m.set_entry(i - 1, j - 1, r)?;
    Ok(m)
}

/// Permutation matrix sending basis vector `e_k` to `e_{perm(k)}`.
///
/// `perm` is given 0-based. Conjugation by this matrix maps `e_{i,j}(r)`
/// to `e_{perm(i),perm(j)}(r)`.
pub fn permutation_matrix(perm: &[usize], p: u32, s: usize) -> Result<MatElement> {
    let dim = perm.len();
    let mut seen = vec![false; dim];
    for &x in perm {
        if x >= dim || seen[x] {
            return Err(Error::param("not a permutation"));
        }
        seen[x] = true;
    }
    let mut m = MatElement::zero(dim, p, s)?;
    for (k, &x) in perm.iter().enumerate() {
        m.data[(x * dim + k) * s] = 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, s: usize, c: &[u64]) -> TruncPoly {
        TruncPoly::from_coeffs(p, s, c).unwrap()
    }

    #[test]
    fn elementary_zero_is_identity() {
        let z = poly(3, 2, &[]);
        assert!(elementary(3, 1, 2, &z).unwrap().is_identity());
        assert!(matches!(elementary(3, 2, 2, &z), Err(Error::Parameter(_))));
    }

    #[test]
    fn elementary_additive() {
        let a = elementary(2, 1, 2, &poly(2, 3, &[0, 1])).unwrap();
        let b = elementary(2, 1, 2, &poly(2, 3, &[0, 0, 1])).unwrap();
        let c = elementary(2, 1, 2, &poly(2, 3, &[0, 1, 1])).unwrap();
        assert_eq!(a.mul(&b).unwrap(), c);
    }

    #[test]
    fn steinberg_commutator() {
        let x = elementary(3, 1, 2, &poly(3, 5, &[0, 1])).unwrap();
        let y = elementary(3, 2, 3, &poly(3, 5, &[0, 0, 1])).unwrap();
        let z = elementary(3, 1, 3, &poly(3, 5, &[0, 0, 0, 1])).unwrap();
        assert_eq!(x.commutator(&y).unwrap(), z);
    }

    #[test]
    fn inverse_and_det_of_elementary_products() {
        let r = poly(5, 3, &[2, 1, 4]);
        let m = elementary(2, 1, 3, &r)
            .unwrap()
            .mul(&elementary(2, 3, 2, &poly(5, 3, &[1, 3])).unwrap())
            .unwrap()
            .mul(&elementary(2, 2, 1, &poly(5, 3, &[0, 0, 2])).unwrap())
            .unwrap();
        assert!(m.det().is_one());
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn det_of_diagonal() {
        let mut m = MatElement::identity(3, 3, 3).unwrap();
        m.set_entry(0, 0, &poly(3, 3, &[1, 1])).unwrap();
        m.set_entry(2, 2, &poly(3, 3, &[2])).unwrap();
        assert_eq!(m.det(), poly(3, 3, &[2, 2]));
    }

    #[test]
    fn permutation_conjugation_moves_roots() {
        // perm 0->1->2->0
        let perm = [1usize, 2, 0];
        let w = permutation_matrix(&perm, 2, 2).unwrap();
        let r = poly(2, 2, &[1, 1]);
        let e = elementary(2, 1, 2, &r).unwrap();
        let conj = w.mul(&e).unwrap().mul(&w.inverse().unwrap()).unwrap();
        assert_eq!(conj, elementary(2, 2, 3, &r).unwrap());
    }

    #[test]
    fn reduce_and_lift() {
        let m = elementary(1, 1, 2, &poly(2, 3, &[1, 0, 1])).unwrap();
        let lo = m.reduce(2).unwrap();
        assert_eq!(lo, elementary(1, 1, 2, &poly(2, 2, &[1])).unwrap());
        assert_eq!(lo.lift(3).unwrap(), elementary(1, 1, 2, &poly(2, 3, &[1])).unwrap());
    }
}
