//! The weighted random walk on a 1-skeleton and its second eigenvalue.
//!
//! From `u` the walk moves to `v` with probability `w(uv) / d(u)`, where
//! `d(u)` is the total weight of edges at `u`. The walk is reversible with
//! respect to `d`, so `D^{1/2} P D^{-1/2}` is symmetric with the same
//! spectrum; all solvers work on that matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::complex::SimplicialComplex;
use crate::{Error, Result};

/// Largest vertex count handled by the dense solver.
pub const DENSE_LIMIT: usize = 3000;
/// Residual target of the iterative solver.
pub const ITERATIVE_TOL: f64 = 1e-7;
const MAX_ITERS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct WalkMatrix {
    offsets: Vec<usize>,
    cols: Vec<u32>,
    /// Symmetrized entries `w(uv) / sqrt(d(u) d(v))`.
    sym: Vec<f64>,
    /// Transition probabilities `w(uv) / d(u)`.
    prob: Vec<f64>,
    degree: Vec<f64>,
}

impl WalkMatrix {
    pub fn size(&self) -> usize {
        self.degree.len()
    }

    /// `d(u)`: the total weight at each vertex.
    pub fn degrees(&self) -> &[f64] {
        &self.degree
    }

    /// Row `u` as `(v, P(u, v))`.
    pub fn row(&self, u: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let r = self.offsets[u]..self.offsets[u + 1];
        self.cols[r.clone()].iter().copied().zip(self.prob[r].iter().copied())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for u in 0..n {
            for (v, p) in self.row(u) {
                m[(u, v as usize)] = p;
            }
        }
        m
    }

    fn symmetric_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        let mut m = DMatrix::zeros(n, n);
        for u in 0..n {
            for k in self.offsets[u]..self.offsets[u + 1] {
                m[(u, self.cols[k] as usize)] = self.sym[k];
            }
        }
        m
    }

    fn sym_apply(&self, x: &[f64], out: &mut [f64]) {
        for (u, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.offsets[u]..self.offsets[u + 1] {
                acc += self.sym[k] * x[self.cols[k] as usize];
            }
            *o = acc;
        }
    }

    /// Stationary distribution `d / sum(d)`.
    pub fn stationary(&self) -> Vec<f64> {
        let total: f64 = self.degree.iter().sum();
        self.degree.iter().map(|d| d / total).collect()
    }
}

/// The walk on the weighted 1-skeleton of `x`.
pub fn walk_matrix(x: &SimplicialComplex) -> Result<WalkMatrix> {
    let (_, comps) = x.components();
    if comps != 1 {
        return Err(Error::structural(format!("1-skeleton has {comps} connected components")));
    }
    let edges = x.edges().filter(|e| !e.is_empty()).ok_or_else(|| Error::structural("complex has no edges"))?;
    let w = x.weights();
    let wf: Vec<f64> = w.dim(1).iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
    let sk = x.skeleton();
    let n = x.vertex_count();
    let mut degree = vec![0.0; n];
    for (f, &we) in edges.iter().zip(&wf) {
        degree[f[0] as usize] += we;
        degree[f[1] as usize] += we;
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut cols = Vec::new();
    let mut sym = Vec::new();
    let mut prob = Vec::new();
    offsets.push(0);
    for u in 0..n as u32 {
        for (&v, &e) in sk.neighbors(u).iter().zip(sk.edge_ids(u)) {
            let we = wf[e as usize];
            cols.push(v);
            prob.push(we / degree[u as usize]);
            sym.push(we / libm::sqrt(degree[u as usize] * degree[v as usize]));
        }
        offsets.push(cols.len());
    }
    Ok(WalkMatrix { offsets, cols, sym, prob, degree })
}

/// All eigenvalues in descending order (dense solver).
pub fn eigenvalues_dense(m: &WalkMatrix) -> Vec<f64> {
    let eig = SymmetricEigen::new(m.symmetric_dense());
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

/// Second-largest eigenvalue: dense up to [`DENSE_LIMIT`] vertices,
/// iterative above.
pub fn second_eigenvalue(m: &WalkMatrix) -> Result<f64> {
    if m.size() <= DENSE_LIMIT {
        let ev = eigenvalues_dense(m);
        ev.get(1).copied().ok_or_else(|| Error::param("a walk on one vertex has no second eigenvalue"))
    } else {
        second_eigenvalue_iterative(m, ITERATIVE_TOL, 0x5eed)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(a: &mut [f64]) -> f64 {
    let n = libm::sqrt(dot(a, a));
    if n > 0.0 {
        a.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Power iteration on `(S + I) / 2` with the top eigenvector
/// `sqrt(d)` projected out. The shift keeps eigenvalues near `-1` (as in
/// bipartite graphs) from dominating.
pub fn second_eigenvalue_iterative(m: &WalkMatrix, tol: f64, seed: u64) -> Result<f64> {
    let n = m.size();
    if n < 2 {
        return Err(Error::param("a walk on one vertex has no second eigenvalue"));
    }
    let mut top: Vec<f64> = m.degree.iter().map(|&d| libm::sqrt(d)).collect();
    normalize(&mut top);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5).collect();
    let project = |v: &mut [f64]| {
        let c = dot(v, &top);
        v.iter_mut().zip(&top).for_each(|(a, t)| *a -= c * t);
    };
    project(&mut x);
    normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERS {
        m.sym_apply(&x, &mut y);
        y.iter_mut().zip(&x).for_each(|(a, b)| *a = 0.5 * (*a + b));
        project(&mut y);
        let mu = dot(&x, &y);
        residual = libm::sqrt(y.iter().zip(&x).map(|(a, b)| (a - mu * b) * (a - mu * b)).sum::<f64>());
        if residual < tol {
            return Ok(2.0 * mu - 1.0);
        }
        core::mem::swap(&mut x, &mut y);
        if normalize(&mut x) == 0.0 {
            // x was orthogonal to everything but the top vector: S = the
            // rank-one walk of a complete structure; its second eigenvalue
            // is the shift's zero point.
            return Ok(-1.0);
        }
    }
    Err(Error::Numerical { msg: String::from("power iteration did not converge"), residual })
}

/// Second eigenvalue of the walk on one link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkEntry {
    /// The face whose link this is (vertex indices), or a face type
    /// (colors) when links are identified up to the group action.
    pub face: Vec<u32>,
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub lambda2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub threshold: f64,
    pub entries: Vec<LinkEntry>,
    /// Largest second eigenvalue over connected links.
    pub max_lambda2: Option<f64>,
    /// Every link is connected and has second eigenvalue at most the
    /// threshold.
    pub pass: bool,
}

impl SpectralReport {
    pub fn from_entries(threshold: f64, entries: Vec<LinkEntry>) -> Self {
        let max_lambda2 = entries.iter().filter_map(|e| e.lambda2).fold(None, |a: Option<f64>, b| Some(a.map_or(b, |a| a.max(b))));
        let pass = entries.iter().all(|e| e.connected && e.lambda2.is_some_and(|l| l <= threshold));
        SpectralReport { threshold, entries, max_lambda2, pass }
    }
}

/// Walk data for one complex viewed as a link.
pub fn link_entry(face: Vec<u32>, link: &SimplicialComplex) -> Result<LinkEntry> {
    let edges = link.edges().map_or(0, |e| e.len());
    let connected = link.is_connected();
    let lambda2 = if connected { Some(second_eigenvalue(&walk_matrix(link)?)?) } else { None };
    Ok(LinkEntry { face, vertices: link.vertex_count(), edges, connected, lambda2 })
}

/// Second eigenvalues of the links of all faces of dimension `-1..=n-2`
/// (the empty face first), i.e. every link that has edges.
pub fn local_spectral_report(x: &SimplicialComplex, threshold: f64) -> Result<SpectralReport> {
    let mut entries = Vec::new();
    if x.dim() >= 1 {
        entries.push(link_entry(Vec::new(), x)?);
    }
    for k in 0..x.dim().saturating_sub(1) {
        for f in x.faces(k).iter() {
            let (link, _) = x.link(f)?;
            entries.push(link_entry(f.to_vec(), &link)?);
        }
    }
    Ok(SpectralReport::from_entries(threshold, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: u32) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
        SimplicialComplex::from_facets(1, m as usize, None, &facets).unwrap()
    }

    #[test]
    fn triangle_walk() {
        let x = SimplicialComplex::from_facets(2, 3, None, &[vec![0, 1, 2]]).unwrap();
        let m = walk_matrix(&x).unwrap();
        let d = m.to_dense();
        for u in 0..3 {
            assert_eq!(d[(u, u)], 0.0);
            for v in 0..3 {
                if u != v {
                    assert!((d[(u, v)] - 0.5).abs() < 1e-15);
                }
            }
        }
        assert!((second_eigenvalue(&m).unwrap() + 0.5).abs() < 1e-9);
    }

    #[test]
    fn six_cycle_half() {
        let m = walk_matrix(&cycle(6)).unwrap();
        assert!((second_eigenvalue(&m).unwrap() - 0.5).abs() < 1e-9);
        let it = second_eigenvalue_iterative(&m, 1e-10, 1).unwrap();
        assert!((it - 0.5).abs() < 1e-6);
    }

    #[test]
    fn disconnected_rejected() {
        let x = SimplicialComplex::from_facets(1, 4, None, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(walk_matrix(&x), Err(Error::Structural(_))));
        let r = local_spectral_report(&x, 0.5).unwrap();
        assert!(!r.pass);
    }
}
