//! Truncated polynomial rings `F_p[t]/<t^s>`.
//!
//! A [`TruncPoly`] always stores exactly `s` coefficients, lowest degree
//! first, each reduced into `[0, p)`. Equality is therefore plain
//! coefficient-wise equality.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest modulus accepted. Products of two residues must fit in `u64`
/// with room for accumulation, and packed group keys need small moduli anyway.
pub const MAX_MODULUS: u32 = 1 << 16;

/// Returns true if `p` is prime.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `(p, s)` describe a valid ring.
pub fn check_ring(p: u32, s: usize) -> Result<()> {
    if !is_prime(p) || p >= MAX_MODULUS {
        return Err(Error::param(format!("modulus {p} is not a prime below {MAX_MODULUS}")));
    }
    if s == 0 {
        return Err(Error::param("truncation exponent s must be at least 1"));
    }
    Ok(())
}

/// Degree of a polynomial, with a separate sentinel for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    /// Degree of a product in an untruncated ring.
    pub fn add(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }

    /// True if the degree is at most `d` (zero always qualifies).
    pub fn at_most(self, d: usize) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(k) => k <= d,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(k) => write!(f, "{k}"),
        }
    }
}

/// An element of `F_p[t]/<t^s>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncPoly {
    p: u32,
    s: usize,
    coeffs: Vec<u32>,
}

impl TruncPoly {
    pub fn zero(p: u32, s: usize) -> Result<Self> {
        check_ring(p, s)?;
        Ok(TruncPoly { p, s, coeffs: vec![0; s] })
    }

    pub fn one(p: u32, s: usize) -> Result<Self> {
        Self::constant(p, s, 1)
    }

    pub fn constant(p: u32, s: usize, c: u64) -> Result<Self> {
        let mut z = Self::zero(p, s)?;
        z.coeffs[0] = (c % p as u64) as u32;
        Ok(z)
    }

    /// `c * t^k`, which is zero when `k >= s`.
    pub fn monomial(p: u32, s: usize, c: u64, k: usize) -> Result<Self> {
        let mut z = Self::zero(p, s)?;
        if k < s {
            z.coeffs[k] = (c % p as u64) as u32;
        }
        Ok(z)
    }

    /// Builds a polynomial from coefficients (lowest degree first).
    ///
    /// Coefficients are reduced mod `p`; terms at or beyond `t^s` are dropped.
    pub fn from_coeffs(p: u32, s: usize, coeffs: &[u64]) -> Result<Self> {
        let mut z = Self::zero(p, s)?;
        for (k, &c) in coeffs.iter().enumerate().take(s) {
            z.coeffs[k] = (c % p as u64) as u32;
        }
        Ok(z)
    }

    /// Builds from residues already in `[0, p)` without re-validating the ring.
    pub(crate) fn from_residues_unchecked(p: u32, s: usize, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.len(), s);
        debug_assert!(coeffs.iter().all(|&c| c < p));
        TruncPoly { p, s, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.iter().rposition(|&c| c != 0) {
            Some(k) => Degree::Finite(k),
            None => Degree::NegInf,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.s != other.s {
            return Err(Error::param(format!(
                "ring mismatch: (p={}, s={}) vs (p={}, s={})",
                self.p, self.s, other.p, other.s
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u64 + b as u64) % p as u64) as u32)
            .collect();
        Ok(TruncPoly { p, s: self.s, coeffs })
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        let coeffs = self.coeffs.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        TruncPoly { p, s: self.s, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Truncated convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (p, s) = (self.p as u64, self.s);
        let mut acc = vec![0u64; s];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..s - i].iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Ok(TruncPoly { p: self.p, s, coeffs: acc.into_iter().map(|c| c as u32).collect() })
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p as u64;
        let c = c % p;
        let coeffs = self.coeffs.iter().map(|&a| ((a as u64 * c) % p) as u32).collect();
        TruncPoly { p: self.p, s: self.s, coeffs }
    }

    /// Units are exactly the polynomials with non-zero constant term.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// Multiplicative inverse of a unit, by power-series inversion.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::param(format!("{self} is not a unit")));
        }
        let p = self.p as u64;
        let a0_inv = inv_mod(self.coeffs[0] as u64, p);
        let mut b = vec![0u64; self.s];
        b[0] = a0_inv;
        for k in 1..self.s {
            let mut acc = 0u64;
            for i in 1..=k {
                acc = (acc + self.coeffs[i] as u64 * b[k - i]) % p;
            }
            b[k] = (p - acc) % p * a0_inv % p;
        }
        Ok(TruncPoly { p: self.p, s: self.s, coeffs: b.into_iter().map(|c| c as u32).collect() })
    }

    /// Re-reads the polynomial in `F_p[t]/<t^s'>`, truncating or zero-padding.
    pub fn with_precision(&self, s: usize) -> Result<Self> {
        check_ring(self.p, s)?;
        let mut coeffs = vec![0u32; s];
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(k);
        }
        Ok(TruncPoly { p: self.p, s, coeffs })
    }

    /// Compact form `[c0,c1,...]@p,s`.
    pub fn to_compact(&self) -> String {
        let mut out = String::from("[");
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&format!("{c}"));
        }
        out.push_str(&format!("]@{},{}", self.p, self.s));
        out
    }

    /// Parses the compact form produced by [`TruncPoly::to_compact`].
    pub fn parse_compact(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::input(format!("malformed compact polynomial {text:?}"));
        let (body, ring) = text.split_once('@').ok_or_else(bad)?;
        let (p, s) = ring.split_once(',').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let s: usize = s.trim().parse().map_err(|_| bad())?;
        let body = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let mut coeffs = Vec::new();
        if !body.trim().is_empty() {
            for part in body.split(',') {
                let c: u32 = part.trim().parse().map_err(|_| bad())?;
                if c >= p {
                    return Err(bad());
                }
                coeffs.push(c);
            }
        }
        if coeffs.len() != s {
            return Err(Error::input(format!("compact polynomial {text:?} must list exactly {s} coefficients")));
        }
        check_ring(p, s)?;
        Ok(TruncPoly { p, s, coeffs })
    }

    /// Parses the text form `c0+c1*t+c2*t^2` (any order, repeated powers summed).
    ///
    /// Coefficients may be omitted (`t^2`), and terms at or beyond `t^s` are
    /// rejected rather than silently truncated.
    pub fn parse_text(text: &str, p: u32, s: usize) -> Result<Self> {
        let mut z = Self::zero(p, s)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::input(format!("malformed polynomial {text:?}"));
        if compact.is_empty() {
            return Err(bad());
        }
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find('t') {
                None => (term, 0usize),
                Some(pos) => {
                    let head = &term[..pos];
                    let coef = match head {
                        "" => "1",
                        h => h.strip_suffix('*').ok_or_else(bad)?,
                    };
                    let tail = &term[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (coef, power)
                }
            };
            let c: u64 = coef.parse().map_err(|_| bad())?;
            if power >= s {
                return Err(Error::input(format!("term t^{power} is outside F_{p}[t]/t^{s}")));
            }
            z.coeffs[power] = ((z.coeffs[power] as u64 + c) % p as u64) as u32;
        }
        Ok(z)
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Inverse of `a` modulo the prime `p` (a must be non-zero mod p).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// All polynomials of degree at most `dmax`, in lexicographic order of
/// their coefficient vectors (`c0` most significant).
pub fn enumerate_polys(p: u32, s: usize, dmax: usize) -> Result<Vec<TruncPoly>> {
    check_ring(p, s)?;
    if dmax >= s {
        return Err(Error::param(format!("degree bound {dmax} must be below s = {s}")));
    }
    let len = dmax + 1;
    let count = (p as u64).checked_pow(len as u32).filter(|&c| c <= 1 << 24).ok_or_else(|| {
        Error::resource(format!("enumerating polynomials of degree <= {dmax} over F_{p}"), 1 << 24, u64::MAX)
    })?;
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u32; len];
    for _ in 0..count {
        let mut coeffs = vec![0u32; s];
        coeffs[..len].copy_from_slice(&digits);
        out.push(TruncPoly { p, s, coeffs });
        for k in (0..len).rev() {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
    Ok(out)
}
