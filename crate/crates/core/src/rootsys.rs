//! The `A_n` root system, Weyl chambers and staged chamber propagation.
//!
//! Roots are ordered pairs `(i, j)` of distinct indices in `1..=n+1`.
//! A chamber `C_g` is the image of the positive roots under a permutation
//! `g`, and its boundary is `{(g(k), g(k+1))}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An ordered pair of distinct 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Error::param(format!("({i}, {j}) is not a root")));
        }
        Ok(Root { i, j })
    }

    pub fn opposite(self) -> Root {
        Root { i: self.j, j: self.i }
    }

    pub fn is_opposite(self, other: Root) -> bool {
        self.opposite() == other
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }
}

/// All `n(n+1)` roots of `A_n`, ordered lexicographically.
pub fn all_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            if i != j {
                out.push(Root { i, j });
            }
        }
    }
    out
}

/// A permutation of `{1, ..., m}` stored 0-based (`img[k] = g(k+1) - 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation { img: (0..m as u8).collect() }
    }

    /// From 1-based images `g(1), ..., g(m)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut img = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::param("not a permutation"));
            }
            seen[x - 1] = true;
            img.push((x - 1) as u8);
        }
        Ok(Permutation { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// `g(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.img[k - 1] as usize + 1
    }

    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0u8; self.img.len()];
        for (k, &x) in self.img.iter().enumerate() {
            img[x as usize] = k as u8;
        }
        Permutation { img }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        (0..e).fold(Permutation::identity(self.degree()), |acc, _| acc.compose(self))
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn act_root(&self, r: Root) -> Root {
        Root { i: self.apply(r.i), j: self.apply(r.j) }
    }
}

/// `gamma_0`: `k -> k+1` for `k <= n`, `n+1 -> 1`.
pub fn gamma0(n: usize) -> Permutation {
    let images: Vec<usize> = (1..=n + 1).map(|k| k % (n + 1) + 1).collect();
    Permutation::from_images(&images).expect("cyclic shift")
}

/// `gamma_1`: the `n`-cycle fixing `n+1` with `k -> k-1` for `2 <= k <= n`
/// and `1 -> n`.
pub fn gamma1(n: usize) -> Permutation {
    let images: Vec<usize> = (1..=n + 1).map(|k| if k == n + 1 { k } else if k == 1 { n } else { k - 1 }).collect();
    Permutation::from_images(&images).expect("cycle")
}

/// All permutations of `{1, ..., m}` in lexicographic order of images.
pub fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut cur: Vec<u8> = (0..m as u8).collect();
    let mut out = vec![Permutation { img: cur.clone() }];
    loop {
        let Some(k) = (0..m.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..m).rev().find(|&l| cur[k] < cur[l]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(Permutation { img: cur.clone() });
    }
}

/// The Weyl chamber `C_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber {
    gamma: Permutation,
    inv: Permutation,
}

impl Chamber {
    pub fn new(gamma: Permutation) -> Self {
        let inv = gamma.inverse();
        Chamber { gamma, inv }
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    /// `(a, b)` lies in `C_g` iff `g^-1(a) < g^-1(b)`.
    pub fn contains(&self, r: Root) -> bool {
        self.inv.apply(r.i) < self.inv.apply(r.j)
    }

    pub fn roots(&self) -> Vec<Root> {
        let m = self.gamma.degree();
        let mut out = Vec::with_capacity(m * (m - 1) / 2);
        for a in 1..=m {
            for b in a + 1..=m {
                out.push(Root { i: self.gamma.apply(a), j: self.gamma.apply(b) });
            }
        }
        out
    }

    pub fn boundary(&self) -> Vec<Root> {
        let m = self.gamma.degree();
        (1..m).map(|k| Root { i: self.gamma.apply(k), j: self.gamma.apply(k + 1) }).collect()
    }

    /// `g'.C_g = C_{g' g}`.
    pub fn act(&self, by: &Permutation) -> Chamber {
        Chamber::new(by.compose(&self.gamma))
    }
}

/// A stage of the propagation: a set of chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberSet {
    pub n: usize,
    pub stage: usize,
    pub chambers: BTreeSet<Chamber>,
    covered: Vec<bool>,
}

impl ChamberSet {
    pub fn new(n: usize, stage: usize, chambers: BTreeSet<Chamber>) -> Self {
        let roots = n * (n + 1);
        let mut covered = vec![false; roots * roots];
        let idx = |r: Root| root_index(n, r);
        for c in &chambers {
            let rs = c.roots();
            for &a in &rs {
                for &b in &rs {
                    covered[idx(a) * roots + idx(b)] = true;
                }
            }
        }
        ChamberSet { n, stage, chambers, covered }
    }

    /// `C_0 = {C_{gamma_0^i} : 0 <= i <= n}`.
    pub fn stage_zero(n: usize) -> Self {
        let g = gamma0(n);
        let chambers = (0..=n).map(|i| Chamber::new(g.pow(i))).collect();
        Self::new(n, 0, chambers)
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    /// True if some chamber holds both roots.
    pub fn pair_covered(&self, a: Root, b: Root) -> bool {
        if a.i > self.n + 1 || a.j > self.n + 1 || b.i > self.n + 1 || b.j > self.n + 1 {
            return false;
        }
        let roots = self.n * (self.n + 1);
        self.covered[root_index(self.n, a) * roots + root_index(self.n, b)]
    }

    pub fn contains(&self, c: &Chamber) -> bool {
        self.chambers.contains(c)
    }
}

/// Position of a root in [`all_roots`].
fn root_index(n: usize, r: Root) -> usize {
    let m = n + 1;
    (r.i - 1) * (m - 1) + if r.j < r.i { r.j - 1 } else { r.j - 2 }
}

/// True if `C_g` is admitted at the next stage after `prev`.
pub fn admits(prev: &ChamberSet, c: &Chamber) -> bool {
    let bd = c.boundary();
    for &a in &bd {
        for &b in &bd {
            if !prev.pair_covered(a, b) {
                return false;
            }
        }
    }
    let roots = c.roots();
    for &a in &roots {
        for &b in &roots {
            if (a.i == b.i || a.j == b.j) && !prev.pair_covered(a, b) {
                return false;
            }
        }
    }
    true
}

/// All chambers admitted after `prev`, found by scanning every permutation.
pub fn propagate_stage(prev: &ChamberSet) -> ChamberSet {
    let chambers = all_permutations(prev.n + 1)
        .into_iter()
        .map(Chamber::new)
        .filter(|c| admits(prev, c))
        .collect();
    ChamberSet::new(prev.n, prev.stage + 1, chambers)
}

/// Unordered pairs of non-opposite roots, including `{r, r}`.
pub fn non_opposite_pairs(n: usize) -> Vec<(Root, Root)> {
    let roots = all_roots(n);
    let mut out = Vec::new();
    for (x, &a) in roots.iter().enumerate() {
        for &b in &roots[x..] {
            if !a.is_opposite(b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageCoverage {
    pub stage: usize,
    pub chambers: usize,
    pub covered: usize,
    pub uncovered: Vec<(Root, Root)>,
}

/// Result of running the propagation to a given stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub n: usize,
    pub total_pairs: usize,
    pub stages: Vec<StageCoverage>,
    /// Stages (after the first) that dropped a chamber of the previous stage.
    pub monotonicity_violations: Vec<usize>,
    /// Stages that are not invariant under `gamma_0`.
    pub invariance_violations: Vec<usize>,
}

impl CoverageReport {
    pub fn fully_covered_at(&self, stage: usize) -> bool {
        self.stages.get(stage).is_some_and(|s| s.uncovered.is_empty())
    }
}

/// Runs the propagation up to `stages` and reports coverage of all
/// non-opposite unordered root pairs at each stage.
pub fn verify_propagation(n: usize, stages: usize) -> Result<CoverageReport> {
    if n < 3 {
        return Err(Error::param(format!("propagation needs n >= 3, got {n}")));
    }
    if n > 7 {
        return Err(Error::param(format!("n = {n} needs {}! chambers; at most n = 7 is supported", n + 1)));
    }
    let pairs = non_opposite_pairs(n);
    let g0 = gamma0(n);
    let mut sets = vec![ChamberSet::stage_zero(n)];
    for _ in 0..stages {
        let next = propagate_stage(sets.last().expect("non-empty"));
        sets.push(next);
    }
    let mut report = CoverageReport {
        n,
        total_pairs: pairs.len(),
        stages: Vec::new(),
        monotonicity_violations: Vec::new(),
        invariance_violations: Vec::new(),
    };
    for (k, set) in sets.iter().enumerate() {
        let uncovered: Vec<(Root, Root)> = pairs.iter().copied().filter(|&(a, b)| !set.pair_covered(a, b)).collect();
        report.stages.push(StageCoverage {
            stage: k,
            chambers: set.len(),
            covered: pairs.len() - uncovered.len(),
            uncovered,
        });
        if k > 0 && !sets[k - 1].chambers.is_subset(&set.chambers) {
            report.monotonicity_violations.push(k);
        }
        let moved: BTreeSet<Chamber> = set.chambers.iter().map(|c| c.act(&g0)).collect();
        if moved != set.chambers {
            report.invariance_violations.push(k);
        }
    }
    Ok(report)
}

/// The closed form for `boundary(C_{gamma_1^l})`:
/// `{(i, i+1) : 1 <= i <= n-1, i != n-l} ∪ {(n, 1)} ∪ {(n-l, n+1)}`.
pub fn boundary_of_gamma1_power(n: usize, l: usize) -> Result<BTreeSet<Root>> {
    if l == 0 || l >= n {
        return Err(Error::param(format!("l = {l} outside 1..={}", n.saturating_sub(1))));
    }
    let mut out: BTreeSet<Root> = (1..n).filter(|&i| i != n - l).map(|i| Root { i, j: i + 1 }).collect();
    out.insert(Root { i: n, j: 1 });
    out.insert(Root { i: n - l, j: n + 1 });
    Ok(out)
}

/// Pairs sharing their first or their second index that `C_0` misses.
pub fn shared_index_counterexamples(n: usize) -> Vec<(Root, Root)> {
    let c0 = ChamberSet::stage_zero(n);
    let roots = all_roots(n);
    let mut out = Vec::new();
    for &a in &roots {
        for &b in &roots {
            if (a.i == b.i || a.j == b.j) && !c0.pair_covered(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Pairs `(i, i+1), r` with `r != (i+1, i)` that `C_0` misses.
pub fn consecutive_root_counterexamples(n: usize) -> Vec<(Root, Root)> {
    let c0 = ChamberSet::stage_zero(n);
    let mut out = Vec::new();
    for i in 1..=n {
        let a = Root { i, j: i + 1 };
        for b in all_roots(n) {
            if b != a.opposite() && !c0.pair_covered(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Non-opposite pairs not contained in any `C_{gamma_0^t gamma_1^l}`.
pub fn gamma_family_counterexamples(n: usize) -> Vec<(Root, Root)> {
    let (g0, g1) = (gamma0(n), gamma1(n));
    let mut chambers = BTreeSet::new();
    for t in 0..=n {
        for l in 0..n {
            chambers.insert(Chamber::new(g0.pow(t).compose(&g1.pow(l))));
        }
    }
    let set = ChamberSet::new(n, 0, chambers);
    non_opposite_pairs(n).into_iter().filter(|&(a, b)| !set.pair_covered(a, b)).collect()
}

/// Values of `l` for which the closed-form boundary of `C_{gamma_1^l}`
/// differs from the generic boundary.
pub fn gamma1_boundary_mismatches(n: usize) -> Vec<usize> {
    let g1 = gamma1(n);
    (1..n)
        .filter(|&l| {
            let generic: BTreeSet<Root> = Chamber::new(g1.pow(l)).boundary().into_iter().collect();
            boundary_of_gamma1_power(n, l).map(|f| f != generic).unwrap_or(true)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    #[test]
    fn gamma1_boundary_examples() {
        let b1: BTreeSet<Root> = [r(1, 2), r(3, 1), r(2, 4)].into_iter().collect();
        assert_eq!(boundary_of_gamma1_power(3, 1).unwrap(), b1);
        let b2: BTreeSet<Root> = [r(2, 3), r(3, 1), r(1, 4)].into_iter().collect();
        assert_eq!(boundary_of_gamma1_power(3, 2).unwrap(), b2);
        assert!(boundary_of_gamma1_power(3, 3).is_err());
        for n in 2..=7 {
            assert!(gamma1_boundary_mismatches(n).is_empty(), "n = {n}");
        }
    }

    #[test]
    fn pair_coverage_examples() {
        let c0 = ChamberSet::stage_zero(3);
        assert_eq!(c0.len(), 4);
        assert!(c0.pair_covered(r(1, 2), r(2, 3)));
        assert!(!c0.pair_covered(r(2, 1), r(1, 2)));
        assert!(!c0.pair_covered(r(3, 1), r(1, 4)));
    }

    #[test]
    fn n3_report() {
        let rep = verify_propagation(3, 2).unwrap();
        assert_eq!(rep.total_pairs, 72);
        assert!(!rep.fully_covered_at(0));
        assert!(rep.fully_covered_at(2));
        assert!(rep.monotonicity_violations.is_empty());
        assert!(rep.invariance_violations.is_empty());
        assert!(verify_propagation(2, 2).is_err());
    }

    #[test]
    fn stage_membership_examples() {
        let n = 3;
        let c0 = ChamberSet::stage_zero(n);
        let c1 = propagate_stage(&c0);
        let c2 = propagate_stage(&c1);
        let (g0, g1) = (gamma0(n), gamma1(n));
        for t in 0..=n {
            for l in 0..=1 {
                assert!(c1.contains(&Chamber::new(g0.pow(t).compose(&g1.pow(l)))), "t={t} l={l}");
            }
        }
        assert!(c2.contains(&Chamber::new(g1.pow(n - 1))));
    }

    #[test]
    fn action_law_small() {
        for m in 2..=4 {
            let perms = all_permutations(m);
            for g in &perms {
                for h in &perms {
                    let c = Chamber::new(g.clone());
                    let moved: BTreeSet<Root> = c.roots().into_iter().map(|x| h.act_root(x)).collect();
                    let acted: BTreeSet<Root> = c.act(h).roots().into_iter().collect();
                    assert_eq!(moved, acted);
                }
            }
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(1).len(), 1);
    }
}
