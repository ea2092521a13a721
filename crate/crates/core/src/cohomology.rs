//! Cochains with coefficients in a finite group `Λ` (given by its table) in
//! degrees 0, 1 and 2, the coboundary maps, the gauge action of `C^0` on
//! `Z^1`, the decision of whether `H^1` is trivial, and exact expansion
//! constants for small complexes.
//!
//! Edges and triangles are indexed by the face tables of the complex. A
//! 1-cochain stores `φ((u,v))` for `u < v`; the value on `(v,u)` is its
//! inverse, so antisymmetry holds by construction.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::HashMap;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::complex::{coset_complex, quotient_pair, SimplicialComplex, UnionFind, WeightTable};
use crate::matgroup::{IndexedGroup, Subgroup, TableGroup};
use crate::{Error, Rational, Result};

/// Default cap on `|Λ|^m` for exhaustive enumerations.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain0 {
    pub values: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain1 {
    pub values: Vec<u32>,
}

/// Values on triangles `(a, b, c)` with `a < b < c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain2 {
    pub values: Vec<u32>,
}

impl Cochain0 {
    pub fn identity(x: &SimplicialComplex, lam: &TableGroup) -> Self {
        Cochain0 { values: vec![lam.identity(); x.vertex_count()] }
    }
}

impl Cochain1 {
    pub fn identity(x: &SimplicialComplex, lam: &TableGroup) -> Self {
        Cochain1 { values: vec![lam.identity(); edge_count(x)] }
    }

    /// Builds a cochain from values on oriented edges. Every edge must be
    /// given in at least one orientation; when both are given they must be
    /// mutually inverse.
    pub fn from_oriented(x: &SimplicialComplex, lam: &TableGroup, values: &[(u32, u32, u32)]) -> Result<Self> {
        let edges = x.edges().ok_or_else(|| Error::input("complex has no edges"))?;
        let mut out = vec![u32::MAX; edges.len()];
        for &(u, v, g) in values {
            if g as usize >= lam.order() {
                return Err(Error::input(format!("value {g} is not an element of the coefficient group")));
            }
            let (key, val) = if u < v { ([u, v], g) } else { ([v, u], lam.inv(g)) };
            let e = edges.index_of(&key).ok_or_else(|| Error::input(format!("({u}, {v}) is not an edge")))?;
            if out[e] != u32::MAX && out[e] != val {
                return Err(Error::input(format!("values on ({u}, {v}) and its reverse are not inverse")));
            }
            out[e] = val;
        }
        if out.contains(&u32::MAX) {
            return Err(Error::input("some edge has no value"));
        }
        Ok(Cochain1 { values: out })
    }

    /// `φ((u, v))` for an oriented edge.
    pub fn value(&self, x: &SimplicialComplex, lam: &TableGroup, u: u32, v: u32) -> Option<u32> {
        let edges = x.edges()?;
        if u < v {
            edges.index_of(&[u, v]).map(|e| self.values[e])
        } else {
            edges.index_of(&[v, u]).map(|e| lam.inv(self.values[e]))
        }
    }

    pub fn is_identity(&self, lam: &TableGroup) -> bool {
        self.values.iter().all(|&g| g == lam.identity())
    }
}

fn edge_count(x: &SimplicialComplex) -> usize {
    x.edges().map_or(0, |e| e.len())
}

/// Edge indices `(ab, bc, ac)` of each triangle `a < b < c`.
pub fn triangle_edges(x: &SimplicialComplex) -> Vec<[u32; 3]> {
    let (Some(edges), Some(tris)) = (x.edges(), x.triangles()) else {
        return Vec::new();
    };
    tris.iter()
        .map(|t| {
            let e = |a: u32, b: u32| edges.index_of(&[a, b]).expect("faces are downward closed") as u32;
            [e(t[0], t[1]), e(t[1], t[2]), e(t[0], t[2])]
        })
        .collect()
}

/// `d_0 φ((u,v)) = φ(u) φ(v)^-1`.
pub fn d0(x: &SimplicialComplex, lam: &TableGroup, phi: &Cochain0) -> Cochain1 {
    let values = x.edges().map_or(Vec::new(), |edges| {
        edges.iter().map(|e| lam.mul(phi.values[e[0] as usize], lam.inv(phi.values[e[1] as usize]))).collect()
    });
    Cochain1 { values }
}

fn triangle_value(lam: &TableGroup, vals: &[u32], t: &[u32; 3]) -> u32 {
    lam.mul(lam.mul(vals[t[0] as usize], vals[t[1] as usize]), lam.inv(vals[t[2] as usize]))
}

/// `d_1 φ((a,b,c)) = φ((a,b)) φ((b,c)) φ((c,a))`.
pub fn d1(x: &SimplicialComplex, lam: &TableGroup, phi: &Cochain1) -> Cochain2 {
    let te = triangle_edges(x);
    Cochain2 { values: te.iter().map(|t| triangle_value(lam, &phi.values, t)).collect() }
}

pub fn is_cocycle(x: &SimplicialComplex, lam: &TableGroup, phi: &Cochain1) -> bool {
    triangle_edges(x).iter().all(|t| triangle_value(lam, &phi.values, t) == lam.identity())
}

/// `ψ.φ((u,v)) = ψ(u) φ((u,v)) ψ(v)^-1`, defined on cocycles.
pub fn gauge_act(x: &SimplicialComplex, lam: &TableGroup, psi: &Cochain0, phi: &Cochain1) -> Result<Cochain1> {
    if !is_cocycle(x, lam, phi) {
        return Err(Error::input("the gauge action is defined on cocycles only"));
    }
    Ok(gauge_unchecked(x, lam, psi, phi))
}

fn gauge_unchecked(x: &SimplicialComplex, lam: &TableGroup, psi: &Cochain0, phi: &Cochain1) -> Cochain1 {
    let values = x.edges().map_or(Vec::new(), |edges| {
        edges
            .iter()
            .zip(&phi.values)
            .map(|(e, &g)| lam.mul(lam.mul(psi.values[e[0] as usize], g), lam.inv(psi.values[e[1] as usize])))
            .collect()
    });
    Cochain1 { values }
}

/// Breadth-first spanning tree of the 1-skeleton rooted at vertex 0;
/// neighbors are visited in ascending order.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// `(parent, edge)` per vertex; `None` at the root.
    pub parent: Vec<Option<(u32, u32)>>,
    /// Vertices in visiting order.
    pub order: Vec<u32>,
    pub is_tree_edge: Vec<bool>,
}

pub fn spanning_tree(x: &SimplicialComplex) -> Result<SpanningTree> {
    let nv = x.vertex_count();
    let sk = x.skeleton();
    let mut parent = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut order = Vec::with_capacity(nv);
    let mut is_tree_edge = vec![false; edge_count(x)];
    if nv > 0 {
        seen[0] = true;
        let mut q = VecDeque::from([0u32]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for (&w, &e) in sk.neighbors(v).iter().zip(sk.edge_ids(v)) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = Some((v, e));
                    is_tree_edge[e as usize] = true;
                    q.push_back(w);
                }
            }
        }
    }
    if order.len() != nv {
        return Err(Error::input(format!("1-skeleton is disconnected ({} of {nv} vertices reachable)", order.len())));
    }
    Ok(SpanningTree { parent, order, is_tree_edge })
}

/// A cocycle in the same `C^0`-orbit as `phi` that is trivial on every
/// spanning-tree edge, together with the gauge used.
pub fn tree_gauge_fix(x: &SimplicialComplex, lam: &TableGroup, phi: &Cochain1) -> Result<(Cochain1, Cochain0)> {
    if !is_cocycle(x, lam, phi) {
        return Err(Error::input("tree gauge fixing needs a cocycle"));
    }
    let tree = spanning_tree(x)?;
    let edges = x.edges();
    let mut psi = Cochain0::identity(x, lam);
    for &v in &tree.order {
        if let Some((par, e)) = tree.parent[v as usize] {
            // want ψ(par) φ(par, v) ψ(v)^-1 = e
            let f = edges.unwrap().face(e as usize);
            let val = if f[0] == par { phi.values[e as usize] } else { lam.inv(phi.values[e as usize]) };
            psi.values[v as usize] = lam.mul(psi.values[par as usize], val);
        }
    }
    Ok((gauge_unchecked(x, lam, &psi, phi), psi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H1Mode {
    Gauge,
    Brute,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Result {
    pub trivial: bool,
    /// Lexicographically least non-trivial witness: a tree-trivial cocycle
    /// (gauge mode) or a cocycle outside `B^1` (brute mode).
    pub witness: Option<Cochain1>,
    /// Number of cohomology classes, when the mode computes it.
    pub classes: Option<u64>,
}

/// Backtracking over edge values subject to the triangle equations, with
/// some edges pinned to the identity. Solutions come out in lexicographic
/// order of the value vector.
struct CocycleSolver<'a> {
    lam: &'a TableGroup,
    tris: Vec<[u32; 3]>,
    tris_of_edge: Vec<Vec<u32>>,
    value: Vec<u32>,
    trail: Vec<u32>,
    nodes: u64,
    node_cap: u64,
}

const UNSET: u32 = u32::MAX;

impl<'a> CocycleSolver<'a> {
    fn new(x: &SimplicialComplex, lam: &'a TableGroup, pinned: &[bool], node_cap: u64) -> Self {
        let tris = triangle_edges(x);
        let ne = edge_count(x);
        let mut tris_of_edge = vec![Vec::new(); ne];
        for (i, t) in tris.iter().enumerate() {
            for &e in t {
                tris_of_edge[e as usize].push(i as u32);
            }
        }
        let value = (0..ne).map(|e| if pinned[e] { lam.identity() } else { UNSET }).collect();
        CocycleSolver { lam, tris, tris_of_edge, value, trail: Vec::new(), nodes: 0, node_cap }
    }

    /// Propagates forced values from the edges on the trail from `start`.
    fn propagate(&mut self, start: usize) -> bool {
        let lam = self.lam;
        let mut i = start;
        while i < self.trail.len() {
            let e = self.trail[i] as usize;
            i += 1;
            for k in 0..self.tris_of_edge[e].len() {
                let [ab, bc, ac] = self.tris[self.tris_of_edge[e][k] as usize];
                let (vab, vbc, vac) = (self.value[ab as usize], self.value[bc as usize], self.value[ac as usize]);
                let (target, val) = match (vab == UNSET, vbc == UNSET, vac == UNSET) {
                    (false, false, false) => {
                        if lam.mul(vab, vbc) != vac {
                            return false;
                        }
                        continue;
                    }
                    (false, false, true) => (ac, lam.mul(vab, vbc)),
                    (false, true, false) => (bc, lam.mul(lam.inv(vab), vac)),
                    (true, false, false) => (ab, lam.mul(vac, lam.inv(vbc))),
                    _ => continue,
                };
                self.value[target as usize] = val;
                self.trail.push(target);
            }
        }
        true
    }

    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let e = self.trail.pop().unwrap();
            self.value[e as usize] = UNSET;
        }
    }

    /// Calls `f` on every solution in lexicographic order until it returns
    /// `false`.
    fn run(&mut self, f: &mut dyn FnMut(&[u32]) -> bool) -> Result<()> {
        // Consistency of the pinned values themselves.
        let pinned: Vec<u32> = (0..self.value.len() as u32).filter(|&e| self.value[e as usize] != UNSET).collect();
        self.trail.extend(pinned);
        if !self.propagate(0) {
            return Ok(());
        }
        self.search(f).map(|_| ())
    }

    fn search(&mut self, f: &mut dyn FnMut(&[u32]) -> bool) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::resource("cocycle backtracking nodes", self.node_cap, self.nodes));
        }
        let Some(e) = self.value.iter().position(|&v| v == UNSET) else {
            return Ok(f(&self.value));
        };
        for g in 0..self.lam.order() as u32 {
            let mark = self.trail.len();
            self.value[e] = g;
            self.trail.push(e as u32);
            if self.propagate(mark) && !self.search(f)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

fn check_power(lam: &TableGroup, count: usize, cap: u64, what: &str) -> Result<u64> {
    let m = lam.order() as u64;
    let mut total: u64 = 1;
    for _ in 0..count {
        total = total.checked_mul(m).filter(|&t| t <= cap).ok_or_else(|| {
            Error::resource(what, cap, m.saturating_pow(count.min(64) as u32))
        })?;
    }
    Ok(total)
}

/// Decides whether `H^1(X, Λ)` is trivial.
///
/// Gauge mode pins a spanning tree to the identity and searches the
/// remaining edge values; `H^1` is trivial iff the identity is the only
/// solution. `cap` bounds the search nodes. Brute mode enumerates all of
/// `C^1` (`cap` bounds `|Λ|^{|X(1)|}`) and partitions `Z^1` into
/// `C^0`-orbits.
pub fn h1_trivial(x: &SimplicialComplex, lam: &TableGroup, mode: H1Mode, cap: u64) -> Result<H1Result> {
    match mode {
        H1Mode::Gauge => h1_gauge(x, lam, cap),
        H1Mode::Brute => h1_brute(x, lam, cap),
    }
}

fn h1_gauge(x: &SimplicialComplex, lam: &TableGroup, cap: u64) -> Result<H1Result> {
    let tree = spanning_tree(x)?;
    let mut solver = CocycleSolver::new(x, lam, &tree.is_tree_edge, cap);
    let id = lam.identity();
    let mut witness = None;
    solver.run(&mut |vals| {
        if vals.iter().all(|&g| g == id) {
            true
        } else {
            witness = Some(Cochain1 { values: vals.to_vec() });
            false
        }
    })?;
    Ok(H1Result { trivial: witness.is_none(), witness, classes: None })
}

/// Counts cohomology classes through tree-trivial cocycles: two of them are
/// cohomologous iff they differ by a constant gauge, i.e. by conjugation.
pub fn h1_class_count_gauge(x: &SimplicialComplex, lam: &TableGroup, node_cap: u64) -> Result<u64> {
    let tree = spanning_tree(x)?;
    let mut solver = CocycleSolver::new(x, lam, &tree.is_tree_edge, node_cap);
    let mut canon: hashbrown::HashSet<Vec<u32>> = hashbrown::HashSet::new();
    let order = lam.order() as u32;
    solver.run(&mut |vals| {
        let best = (0..order)
            .map(|c| {
                let ci = lam.inv(c);
                vals.iter().map(|&g| lam.mul(lam.mul(c, g), ci)).collect::<Vec<u32>>()
            })
            .min()
            .unwrap();
        canon.insert(best);
        true
    })?;
    Ok(canon.len() as u64)
}

fn decode(mut code: u64, m: u64, len: usize, out: &mut [u32]) {
    for k in (0..len).rev() {
        out[k] = (code % m) as u32;
        code /= m;
    }
}

fn encode(vals: &[u32], m: u64) -> u64 {
    vals.iter().fold(0u64, |acc, &g| acc * m + g as u64)
}

fn h1_brute(x: &SimplicialComplex, lam: &TableGroup, cap: u64) -> Result<H1Result> {
    spanning_tree(x)?;
    let ne = edge_count(x);
    let total = check_power(lam, ne, cap, "enumerating C^1")?;
    let m = lam.order() as u64;
    let tris = triangle_edges(x);
    let id = lam.identity();
    let mut cocycles: Vec<u64> = Vec::new();
    let mut vals = vec![0u32; ne];
    for code in 0..total {
        decode(code, m, ne, &mut vals);
        if tris.iter().all(|t| triangle_value(lam, &vals, t) == id) {
            cocycles.push(code);
        }
    }
    let index: HashMap<u64, u32> = cocycles.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let mut uf = UnionFind::new(cocycles.len());
    let edges = x.edges();
    let sk = x.skeleton();
    for (i, &code) in cocycles.iter().enumerate() {
        decode(code, m, ne, &mut vals);
        for v in 0..x.vertex_count() as u32 {
            for &g in lam.generators() {
                let gi = lam.inv(g);
                let mut moved = vals.clone();
                for &e in sk.edge_ids(v) {
                    let f = edges.unwrap().face(e as usize);
                    let cur = moved[e as usize];
                    moved[e as usize] = if f[0] == v { lam.mul(g, cur) } else { lam.mul(cur, gi) };
                }
                let j = index[&encode(&moved, m)];
                uf.union(i as u32, j);
            }
        }
    }
    let mut roots: Vec<u32> = (0..cocycles.len() as u32).map(|i| uf.find(i)).collect();
    let id_root = uf.find(index[&0]);
    let witness = cocycles.iter().zip(&roots).find(|(_, &r)| r != id_root).map(|(&c, _)| {
        let mut w = vec![0u32; ne];
        decode(c, m, ne, &mut w);
        Cochain1 { values: w }
    });
    roots.sort_unstable();
    roots.dedup();
    Ok(H1Result { trivial: witness.is_none(), witness, classes: Some(roots.len() as u64) })
}

/// `‖φ‖` for a 0-cochain: total weight of vertices with non-identity value.
pub fn norm0(w: &WeightTable, lam: &TableGroup, phi: &Cochain0) -> Rational {
    support_weight(w, 0, lam, &phi.values)
}

pub fn norm1(w: &WeightTable, lam: &TableGroup, phi: &Cochain1) -> Rational {
    support_weight(w, 1, lam, &phi.values)
}

pub fn norm2(w: &WeightTable, lam: &TableGroup, phi: &Cochain2) -> Rational {
    support_weight(w, 2, lam, &phi.values)
}

fn support_weight(w: &WeightTable, k: usize, lam: &TableGroup, vals: &[u32]) -> Rational {
    vals.iter()
        .enumerate()
        .filter(|(_, &g)| g != lam.identity())
        .fold(Rational::from_integer(0), |acc, (i, _)| acc + w.weight(k, i))
}

/// Integer numerators of the weights in dimension `k` over the common
/// denominator.
fn numerators(x: &SimplicialComplex, k: usize) -> Vec<u64> {
    let t = x.faces(k);
    (0..t.len()).map(|i| t.count(i)).collect()
}

/// Keeps the smallest fraction `num/den` (both in fixed units).
#[derive(Clone, Copy)]
struct Best {
    num: u64,
    den: u64,
}

impl Best {
    fn offer(slot: &mut Option<Best>, num: u64, den: u64) {
        if den == 0 {
            return;
        }
        match slot {
            Some(b) if (num as u128) * (b.den as u128) >= (b.num as u128) * (den as u128) => {}
            _ => *slot = Some(Best { num, den }),
        }
    }

    /// `(num / d_num) / (den / d_den)` as a rational.
    fn ratio(slot: Option<Best>, d_num: u64, d_den: u64) -> Option<Rational> {
        slot.map(|b| Rational::new(b.num as i128 * d_den as i128, b.den as i128 * d_num as i128))
    }
}

/// The 0-dimensional coboundary expansion constant
/// `min ‖d_0 φ‖ / dist(φ, B^0)` over non-constant `φ`, by exhaustive
/// enumeration (`cap` bounds `|Λ|^{|X(0)| - 1}`). `None` when every
/// 0-cochain is constant.
pub fn expansion_h0(x: &SimplicialComplex, lam: &TableGroup, cap: u64) -> Result<Option<Rational>> {
    let nv = x.vertex_count();
    if nv == 0 {
        return Ok(None);
    }
    // Right multiplication by a constant changes neither ‖d_0 φ‖ nor the
    // distance to the constants, so φ(0) = e.
    let total = check_power(lam, nv - 1, cap, "enumerating C^0")?;
    let m = lam.order() as u64;
    let wv = numerators(x, 0);
    let we = if x.dim() >= 1 { numerators(x, 1) } else { Vec::new() };
    let edges: Vec<[u32; 2]> = x.edges().map_or(Vec::new(), |t| t.iter().map(|f| [f[0], f[1]]).collect());
    let wsum: u64 = wv.iter().sum();
    let mut vals = vec![0u32; nv];
    let mut by_value = vec![0u64; m as usize];
    let mut best: Option<Best> = None;
    for code in 0..total {
        decode(code, m, nv - 1, &mut vals[1..]);
        vals[0] = lam.identity();
        by_value.iter_mut().for_each(|c| *c = 0);
        for (v, &g) in vals.iter().enumerate() {
            by_value[g as usize] += wv[v];
        }
        let dist = wsum - by_value.iter().max().unwrap();
        if dist == 0 {
            continue;
        }
        let cut: u64 = edges.iter().zip(&we).filter(|(e, _)| vals[e[0] as usize] != vals[e[1] as usize]).map(|(_, &w)| w).sum();
        Best::offer(&mut best, cut, dist);
    }
    let w = x.weights();
    let (d1, d0) = (if x.dim() >= 1 { w.common_denominator(1) } else { 1 }, w.common_denominator(0));
    Ok(Best::ratio(best, d1, d0))
}

/// Exact 1-dimensional constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Expansion {
    /// `min ‖d_1 φ‖ / dist(φ, B^1)` over `C^1 \ B^1`.
    pub cobound: Option<Rational>,
    /// `min ‖d_1 φ‖ / dist(φ, Z^1)` over `C^1 \ Z^1`.
    pub cosys: Option<Rational>,
    /// `min ‖φ‖` over `Z^1 \ B^1`; `None` when `H^1` is trivial.
    pub systole: Option<Rational>,
}

/// Multi-source shortest paths in the weighted Hamming graph on `Λ^E`.
fn hamming_distances(sources: &[bool], m: u64, weights: &[u64]) -> Vec<u64> {
    let ne = weights.len();
    let total = sources.len();
    let mut dist = vec![u64::MAX; total];
    let mut heap = BinaryHeap::new();
    for (c, &s) in sources.iter().enumerate() {
        if s {
            dist[c] = 0;
            heap.push(Reverse((0u64, c as u64)));
        }
    }
    // place value of edge k in the code
    let place: Vec<u64> = (0..ne).map(|k| m.pow((ne - 1 - k) as u32)).collect();
    while let Some(Reverse((d, c))) = heap.pop() {
        if d > dist[c as usize] {
            continue;
        }
        for k in 0..ne {
            let digit = (c / place[k]) % m;
            let base = c - digit * place[k];
            let nd = d + weights[k];
            for g in 0..m {
                if g == digit {
                    continue;
                }
                let nc = (base + g * place[k]) as usize;
                if nd < dist[nc] {
                    dist[nc] = nd;
                    heap.push(Reverse((nd, nc as u64)));
                }
            }
        }
    }
    dist
}

/// Exhaustive `h^1` constants; `cap` bounds `|Λ|^{|X(1)|}` and
/// `|Λ|^{|X(0)| - 1}`.
pub fn expansion_h1_exact(x: &SimplicialComplex, lam: &TableGroup, cap: u64) -> Result<H1Expansion> {
    if x.dim() < 1 {
        return Err(Error::param("h^1 needs a complex of dimension at least 1"));
    }
    let ne = edge_count(x);
    let nv = x.vertex_count();
    let total = check_power(lam, ne, cap, "enumerating C^1")? as usize;
    let c0_total = check_power(lam, nv.saturating_sub(1), cap, "enumerating C^0")?;
    let m = lam.order() as u64;
    let id = lam.identity();
    let tris = triangle_edges(x);
    let we = numerators(x, 1);
    let wt = if x.dim() >= 2 { numerators(x, 2) } else { Vec::new() };
    let mut vals = vec![0u32; ne];
    let mut d1_norm = vec![0u64; total];
    let mut in_z = vec![false; total];
    for code in 0..total {
        decode(code as u64, m, ne, &mut vals);
        let n2: u64 = tris.iter().zip(&wt).filter(|(t, _)| triangle_value(lam, &vals, t) != id).map(|(_, &w)| w).sum();
        d1_norm[code] = n2;
        in_z[code] = n2 == 0;
    }
    let mut in_b = vec![false; total];
    let mut psi = Cochain0 { values: vec![id; nv] };
    for code in 0..c0_total {
        decode(code, m, nv - 1, &mut psi.values[1..]);
        psi.values[0] = id;
        let b = d0(x, lam, &psi);
        in_b[encode(&b.values, m) as usize] = true;
    }
    let dist_b = hamming_distances(&in_b, m, &we);
    let dist_z = hamming_distances(&in_z, m, &we);
    let (mut cobound, mut cosys, mut systole): (Option<Best>, Option<Best>, Option<u64>) = (None, None, None);
    for code in 0..total {
        if !in_b[code] {
            Best::offer(&mut cobound, d1_norm[code], dist_b[code]);
        }
        if !in_z[code] {
            Best::offer(&mut cosys, d1_norm[code], dist_z[code]);
        }
        if in_z[code] && !in_b[code] {
            decode(code as u64, m, ne, &mut vals);
            let n1: u64 = vals.iter().zip(&we).filter(|(&g, _)| g != id).map(|(_, &w)| w).sum();
            systole = Some(systole.map_or(n1, |s| s.min(n1)));
        }
    }
    let w = x.weights();
    let d_e = w.common_denominator(1);
    let d_t = if x.dim() >= 2 { w.common_denominator(2) } else { 1 };
    Ok(H1Expansion {
        cobound: Best::ratio(cobound, d_t, d_e),
        cosys: Best::ratio(cosys, d_t, d_e),
        systole: systole.map(|s| Rational::new(s as i128, d_e as i128)),
    })
}

/// Result of a randomized search for small `h^1_cobound` ratios. Every
/// ratio is exact for the cochain that achieves it, so the minimum is an
/// upper bound on the constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1SearchBound {
    pub cobound_upper: Option<Rational>,
    pub witness: Option<Cochain1>,
    pub evaluated: u64,
    pub seed: u64,
}

/// Distance from `phi` to `B^1` (in edge-weight numerator units), by
/// enumerating `C^0` with `ψ(0) = e`.
fn dist_to_b1(x: &SimplicialComplex, lam: &TableGroup, phi: &[u32], we: &[u64], c0_total: u64) -> u64 {
    let nv = x.vertex_count();
    let m = lam.order() as u64;
    let id = lam.identity();
    let edges: Vec<[u32; 2]> = x.edges().unwrap().iter().map(|f| [f[0], f[1]]).collect();
    let mut psi = vec![id; nv];
    let mut best = u64::MAX;
    for code in 0..c0_total {
        decode(code, m, nv - 1, &mut psi[1..]);
        let mut d = 0u64;
        for (k, e) in edges.iter().enumerate() {
            let b = lam.mul(psi[e[0] as usize], lam.inv(psi[e[1] as usize]));
            if b != phi[k] {
                d += we[k];
                if d >= best {
                    break;
                }
            }
        }
        best = best.min(d);
    }
    best
}

/// Randomized plus local search for small `‖d_1 φ‖ / dist(φ, B^1)`.
///
/// Proposals are coboundaries with a few random edges changed, and uniform
/// cochains; the best one is then improved by single-edge changes.
/// `cap` bounds `|Λ|^{|X(0)| - 1}` (each distance is computed exactly).
pub fn expansion_h1_search(x: &SimplicialComplex, lam: &TableGroup, proposals: u64, seed: u64, cap: u64) -> Result<H1SearchBound> {
    if x.dim() < 1 {
        return Err(Error::param("h^1 needs a complex of dimension at least 1"));
    }
    let nv = x.vertex_count();
    let ne = edge_count(x);
    let c0_total = check_power(lam, nv.saturating_sub(1), cap, "enumerating C^0")?;
    let m = lam.order() as u64;
    let tris = triangle_edges(x);
    let we = numerators(x, 1);
    let wt = if x.dim() >= 2 { numerators(x, 2) } else { Vec::new() };
    let id = lam.identity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Best> = None;
    let mut best_phi: Option<Vec<u32>> = None;
    let mut evaluated = 0u64;
    let eval = |phi: &[u32], best: &mut Option<Best>, best_phi: &mut Option<Vec<u32>>, evaluated: &mut u64| {
        *evaluated += 1;
        let n2: u64 = tris.iter().zip(&wt).filter(|(t, _)| triangle_value(lam, phi, t) != id).map(|(_, &w)| w).sum();
        let db = dist_to_b1(x, lam, phi, &we, c0_total);
        let before = best.map(|b| (b.num, b.den));
        Best::offer(best, n2, db);
        if best.map(|b| (b.num, b.den)) != before {
            *best_phi = Some(phi.to_vec());
        }
    };
    let edges: Vec<[u32; 2]> = x.edges().map_or(Vec::new(), |t| t.iter().map(|f| [f[0], f[1]]).collect());
    for k in 0..proposals {
        let mut phi: Vec<u32> = if k % 2 == 0 {
            let psi: Vec<u32> = (0..nv).map(|_| (rng.next_u64() % m) as u32).collect();
            let mut phi: Vec<u32> = edges.iter().map(|e| lam.mul(psi[e[0] as usize], lam.inv(psi[e[1] as usize]))).collect();
            let flips = 1 + (rng.next_u64() % 3) as usize;
            for _ in 0..flips.min(ne) {
                let e = (rng.next_u64() % ne as u64) as usize;
                phi[e] = (rng.next_u64() % m) as u32;
            }
            phi
        } else {
            (0..ne).map(|_| (rng.next_u64() % m) as u32).collect()
        };
        if phi.is_empty() {
            break;
        }
        phi.truncate(ne);
        eval(&phi, &mut best, &mut best_phi, &mut evaluated);
    }
    // Local search from the best proposal.
    let mut improved = true;
    while improved {
        improved = false;
        let Some(cur) = best_phi.clone() else { break };
        for e in 0..ne {
            for g in 0..m as u32 {
                if g == cur[e] {
                    continue;
                }
                let mut next = cur.clone();
                next[e] = g;
                let before = best_phi.clone();
                eval(&next, &mut best, &mut best_phi, &mut evaluated);
                if best_phi != before {
                    improved = true;
                }
            }
        }
    }
    let w = x.weights();
    let d_e = w.common_denominator(1);
    let d_t = if x.dim() >= 2 { w.common_denominator(2) } else { 1 };
    Ok(H1SearchBound {
        cobound_upper: Best::ratio(best, d_t, d_e),
        witness: best_phi.map(|values| Cochain1 { values }),
        evaluated,
        seed,
    })
}

/// `(1 - λ) β / 24 - e λ`, the cosystolic lower bound from local spectral
/// expansion `λ` and local coboundary expansion `β`.
pub fn dd_bound(lambda: Rational, beta: Rational) -> Result<f64> {
    let zero = Rational::from_integer(0);
    if lambda < zero || lambda >= Rational::from_integer(1) || beta <= zero {
        return Err(Error::param("need 0 <= lambda < 1 and beta > 0"));
    }
    let l = *lambda.numer() as f64 / *lambda.denom() as f64;
    let b = *beta.numer() as f64 / *beta.denom() as f64;
    Ok((1.0 - l) * b / 24.0 - core::f64::consts::E * l)
}

/// H¹-triviality of a coset complex and of its quotient by left
/// translation by a normal subgroup, both decided in gauge mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientH1 {
    pub cover_trivial: bool,
    pub quotient_trivial: bool,
}

pub fn quotient_h1<G: IndexedGroup>(
    g: &G,
    subgroups: &[Subgroup],
    normal: &Subgroup,
    lam: &TableGroup,
    node_cap: u64,
) -> Result<QuotientH1> {
    let (quot, _) = quotient_pair(g, subgroups, normal)?;
    let cover = coset_complex(g, subgroups)?.complex;
    let cover_trivial = h1_trivial(&cover, lam, H1Mode::Gauge, node_cap)?.trivial;
    let quotient_trivial = h1_trivial(&quot, lam, H1Mode::Gauge, node_cap)?.trivial;
    Ok(QuotientH1 { cover_trivial, quotient_trivial })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(2, 3, None, &[vec![0, 1, 2]]).unwrap()
    }

    fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_facets(2, 4, None, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn d1_d0_trivial() {
        let x = sphere();
        let lam = TableGroup::symmetric(3).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let phi = Cochain0 { values: vec![a, b, (a + b) % 6, 3] };
                let c = d0(&x, &lam, &phi);
                assert!(d1(&x, &lam, &c).values.iter().all(|&g| g == 0));
                let (fixed, _) = tree_gauge_fix(&x, &lam, &c).unwrap();
                assert!(fixed.is_identity(&lam));
            }
        }
    }

    #[test]
    fn triangle_h0_is_two() {
        let lam = TableGroup::cyclic(2).unwrap();
        assert_eq!(expansion_h0(&triangle(), &lam, DEFAULT_ENUM_CAP).unwrap(), Some(Rational::from_integer(2)));
    }

    #[test]
    fn sphere_trivial_both_modes() {
        let x = sphere();
        for lam in [TableGroup::cyclic(2).unwrap(), TableGroup::cyclic(3).unwrap(), TableGroup::symmetric(3).unwrap()] {
            assert!(h1_trivial(&x, &lam, H1Mode::Gauge, 1 << 20).unwrap().trivial);
            let b = h1_trivial(&x, &lam, H1Mode::Brute, DEFAULT_ENUM_CAP).unwrap();
            assert!(b.trivial);
            assert_eq!(b.classes, Some(1));
        }
    }

    #[test]
    fn graph_cycle_nontrivial() {
        let c4 = SimplicialComplex::from_facets(1, 4, None, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let lam = TableGroup::cyclic(3).unwrap();
        let g = h1_trivial(&c4, &lam, H1Mode::Gauge, 1 << 20).unwrap();
        let b = h1_trivial(&c4, &lam, H1Mode::Brute, DEFAULT_ENUM_CAP).unwrap();
        assert!(!g.trivial && !b.trivial);
        assert_eq!(b.classes, Some(3));
        assert_eq!(h1_class_count_gauge(&c4, &lam, 1 << 20).unwrap(), 3);
    }

    #[test]
    fn oriented_input_validated() {
        let x = triangle();
        let lam = TableGroup::cyclic(3).unwrap();
        assert!(Cochain1::from_oriented(&x, &lam, &[(0, 1, 1), (1, 0, 1), (1, 2, 0), (0, 2, 0)]).is_err());
        let c = Cochain1::from_oriented(&x, &lam, &[(0, 1, 1), (1, 0, 2), (2, 1, 0), (0, 2, 0)]).unwrap();
        assert_eq!(c.value(&x, &lam, 1, 0), Some(2));
    }

    #[test]
    fn dd_bound_values() {
        assert!((dd_bound(Rational::from_integer(0), Rational::from_integer(24)).unwrap() - 1.0).abs() < 1e-12);
        let v = dd_bound(Rational::new(1, 10), Rational::from_integer(1)).unwrap();
        assert!((v - (0.9 / 24.0 - core::f64::consts::E / 10.0)).abs() < 1e-12);
        assert!(dd_bound(Rational::from_integer(1), Rational::from_integer(1)).is_err());
    }
}
