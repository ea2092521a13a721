//! Pure simplicial complexes given by their maximal faces, coset complexes,
//! links, weights, quotients by vertex actions and partite isomorphism.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::matgroup::{cosets, quotient, CosetPartition, IndexedGroup, Subgroup};
use crate::{Error, Rational, Result};

/// All faces of one size, sorted lexicographically, with the number of
/// maximal faces containing each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceTable {
    size: usize,
    faces: Vec<u32>,
    counts: Vec<u64>,
}

impl FaceTable {
    /// Vertices per face.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn face(&self, i: usize) -> &[u32] {
        &self.faces[i * self.size..(i + 1) * self.size]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.faces.chunks_exact(self.size.max(1)).take(self.len())
    }

    /// Number of maximal faces containing face `i`.
    pub fn count(&self, i: usize) -> u64 {
        self.counts[i]
    }

    /// Position of a sorted face.
    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        if face.len() != self.size {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.face(mid).cmp(face) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Sorts fixed-size tuples and merges duplicates, summing their counts.
fn sort_tuples(flat: Vec<u32>, size: usize, counts: Option<Vec<u64>>) -> FaceTable {
    let m = if size == 0 { 0 } else { flat.len() / size };
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let (a, b) = (a as usize * size, b as usize * size);
        flat[a..a + size].cmp(&flat[b..b + size])
    });
    let mut faces = Vec::with_capacity(flat.len());
    let mut out_counts: Vec<u64> = Vec::with_capacity(m);
    for &i in &order {
        let i = i as usize;
        let t = &flat[i * size..(i + 1) * size];
        let c = counts.as_ref().map_or(1, |c| c[i]);
        let len = out_counts.len();
        if len > 0 && &faces[(len - 1) * size..] == t {
            out_counts[len - 1] += c;
        } else {
            faces.extend_from_slice(t);
            out_counts.push(c);
        }
    }
    FaceTable { size, faces, counts: out_counts }
}

/// Calls `f` on every `k`-subset of `set` (in lexicographic order).
fn for_each_subset(set: &[u32], k: usize, f: &mut impl FnMut(&[u32])) {
    let m = set.len();
    if k > m {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0u32; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = set[i];
        }
        f(&buf);
        let mut t = k;
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if idx[t] < m - k + t {
                idx[t] += 1;
                for u in t + 1..k {
                    idx[u] = idx[u - 1] + 1;
                }
                break;
            }
            if t == 0 {
                return;
            }
        }
    }
}

/// A pure `n`-dimensional simplicial complex on vertices `0..vertex_count`,
/// optionally colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    vertex_count: usize,
    colors: Option<Vec<u32>>,
    tables: Vec<FaceTable>,
}

impl SimplicialComplex {
    /// Builds the complex whose maximal faces are `facets` (each of size
    /// `n + 1`). Every vertex must lie in some facet; when colors are given
    /// every facet must carry `n + 1` distinct colors drawn from a palette of
    /// exactly `n + 1` colors.
    pub fn from_facets(n: usize, vertex_count: usize, colors: Option<Vec<u32>>, facets: &[Vec<u32>]) -> Result<Self> {
        let mut flat = Vec::with_capacity(facets.len() * (n + 1));
        for f in facets {
            if f.len() != n + 1 {
                return Err(Error::input(format!("facet {f:?} does not have {} vertices", n + 1)));
            }
            let mut g = f.clone();
            g.sort_unstable();
            flat.extend_from_slice(&g);
        }
        Self::from_flat(n, vertex_count, colors, flat)
    }

    pub(crate) fn from_flat(n: usize, vertex_count: usize, colors: Option<Vec<u32>>, mut flat: Vec<u32>) -> Result<Self> {
        let size = n + 1;
        for f in flat.chunks_exact_mut(size) {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("facet {f:?} repeats a vertex")));
            }
            if f.iter().any(|&v| v as usize >= vertex_count) {
                return Err(Error::input(format!("facet {f:?} uses a vertex outside 0..{vertex_count}")));
            }
        }
        if let Some(c) = &colors {
            if c.len() != vertex_count {
                return Err(Error::input("one color per vertex is required"));
            }
        }
        let top = sort_tuples(flat, size, None);
        let top = FaceTable { counts: vec![1; top.len()], ..top };
        let mut tables = Vec::with_capacity(size);
        for k in 1..size {
            let mut sub = Vec::new();
            for f in top.iter() {
                for_each_subset(f, k, &mut |s| sub.extend_from_slice(s));
            }
            tables.push(sort_tuples(sub, k, None));
        }
        tables.push(top);
        if tables[0].len() != vertex_count {
            return Err(Error::structural(format!(
                "complex is not pure: {} of {vertex_count} vertices lie in a maximal face",
                tables[0].len()
            )));
        }
        let x = SimplicialComplex { n, vertex_count, colors, tables };
        if x.colors.is_some() {
            x.check_partite()?;
        }
        Ok(x)
    }

    fn check_partite(&self) -> Result<()> {
        let palette = self.palette().expect("colored");
        if palette.len() != self.n + 1 {
            return Err(Error::structural(format!("{} colors for a {}-dimensional complex", palette.len(), self.n)));
        }
        for f in self.facets().iter() {
            let mut cs: Vec<u32> = f.iter().map(|&v| self.color(v).unwrap()).collect();
            cs.sort_unstable();
            if cs != palette {
                return Err(Error::structural(format!("facet {f:?} is not colorful")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn color(&self, v: u32) -> Option<u32> {
        self.colors.as_ref().map(|c| c[v as usize])
    }

    /// Distinct colors in ascending order.
    pub fn palette(&self) -> Option<Vec<u32>> {
        self.colors.as_ref().map(|c| {
            let mut p = c.clone();
            p.sort_unstable();
            p.dedup();
            p
        })
    }

    /// Faces of dimension `k` (size `k + 1`), `0 <= k <= n`.
    pub fn faces(&self, k: usize) -> &FaceTable {
        &self.tables[k]
    }

    pub fn facets(&self) -> &FaceTable {
        &self.tables[self.n]
    }

    /// Number of faces in each dimension `0..=n`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.tables.iter().map(|t| t.len()).collect()
    }

    /// Whether a sorted vertex set is a face (the empty set always is).
    pub fn contains_face(&self, face: &[u32]) -> bool {
        face.is_empty() || (face.len() <= self.n + 1 && self.tables[face.len() - 1].index_of(face).is_some())
    }

    /// Edges as index pairs into the vertex set; empty for `n = 0`.
    pub fn edges(&self) -> Option<&FaceTable> {
        self.tables.get(1)
    }

    pub fn triangles(&self) -> Option<&FaceTable> {
        self.tables.get(2)
    }

    /// Adjacency of the 1-skeleton.
    pub fn skeleton(&self) -> Skeleton {
        let mut deg = vec![0u32; self.vertex_count + 1];
        if let Some(e) = self.edges() {
            for f in e.iter() {
                deg[f[0] as usize + 1] += 1;
                deg[f[1] as usize + 1] += 1;
            }
        }
        for v in 0..self.vertex_count {
            deg[v + 1] += deg[v];
        }
        let offsets = deg;
        let total = offsets[self.vertex_count] as usize;
        let mut fill = offsets.clone();
        let mut neighbors = vec![0u32; total];
        let mut edge_ids = vec![0u32; total];
        if let Some(e) = self.edges() {
            for (id, f) in e.iter().enumerate() {
                for (a, b) in [(f[0], f[1]), (f[1], f[0])] {
                    let slot = fill[a as usize] as usize;
                    neighbors[slot] = b;
                    edge_ids[slot] = id as u32;
                    fill[a as usize] += 1;
                }
            }
        }
        // neighbors of each vertex come out sorted because edges are sorted
        // by first vertex, except the reversed halves; sort each row.
        for v in 0..self.vertex_count {
            let (lo, hi) = (offsets[v] as usize, offsets[v + 1] as usize);
            let mut row: Vec<(u32, u32)> = (lo..hi).map(|k| (neighbors[k], edge_ids[k])).collect();
            row.sort_unstable();
            for (k, (nb, id)) in row.into_iter().enumerate() {
                neighbors[lo + k] = nb;
                edge_ids[lo + k] = id;
            }
        }
        Skeleton { offsets, neighbors, edge_ids }
    }

    /// Connected components of the 1-skeleton: component id per vertex and
    /// the number of components.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let sk = self.skeleton();
        let mut comp = vec![u32::MAX; self.vertex_count];
        let mut count = 0u32;
        for s in 0..self.vertex_count {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s as u32]);
            while let Some(v) = queue.pop_front() {
                for &w in sk.neighbors(v) {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// The link of a face, with the map from link vertices to vertices here.
    pub fn link(&self, tau: &[u32]) -> Result<(SimplicialComplex, Vec<u32>)> {
        let mut tau = tau.to_vec();
        tau.sort_unstable();
        if !self.contains_face(&tau) {
            return Err(Error::input(format!("{tau:?} is not a face")));
        }
        if tau.is_empty() {
            return Ok((self.clone(), (0..self.vertex_count as u32).collect()));
        }
        if tau.len() == self.n + 1 {
            return Err(Error::input("the link of a maximal face is empty"));
        }
        let mut rest: Vec<u32> = Vec::new();
        let mut flat: Vec<u32> = Vec::new();
        for f in self.facets().iter() {
            if tau.iter().all(|v| f.binary_search(v).is_ok()) {
                for &v in f {
                    if tau.binary_search(&v).is_err() {
                        flat.push(v);
                        rest.push(v);
                    }
                }
            }
        }
        rest.sort_unstable();
        rest.dedup();
        for v in flat.iter_mut() {
            *v = rest.binary_search(v).unwrap() as u32;
        }
        let colors = self.colors.as_ref().map(|c| rest.iter().map(|&v| c[v as usize]).collect());
        let link = SimplicialComplex::from_flat(self.n - tau.len(), rest.len(), colors, flat)?;
        Ok((link, rest))
    }

    /// Exact weights of all faces.
    pub fn weights(&self) -> WeightTable {
        let top = self.facets().len() as i128;
        let mut per_dim = Vec::with_capacity(self.n + 1);
        for k in 0..=self.n {
            let denom = binomial(self.n + 1, k + 1) as i128 * top;
            let t = &self.tables[k];
            per_dim.push((0..t.len()).map(|i| Rational::new(t.count(i) as i128, denom)).collect());
        }
        WeightTable { per_dim, common: (0..=self.n).map(|k| binomial(self.n + 1, k + 1) as u64 * top as u64).collect() }
    }

    /// The image of a vertex relabeling (colors are carried along).
    pub fn relabel(&self, perm: &[u32]) -> Result<SimplicialComplex> {
        if perm.len() != self.vertex_count {
            return Err(Error::input("relabeling has the wrong length"));
        }
        let flat: Vec<u32> = self.facets().faces.iter().map(|&v| perm[v as usize]).collect();
        let colors = self.colors.as_ref().map(|c| {
            let mut out = vec![0u32; c.len()];
            for (v, &col) in c.iter().enumerate() {
                out[perm[v] as usize] = col;
            }
            out
        });
        SimplicialComplex::from_flat(self.n, self.vertex_count, colors, flat)
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Compressed adjacency of a 1-skeleton; neighbors sorted per vertex, each
/// paired with the edge index in the edge table.
#[derive(Debug, Clone)]
pub struct Skeleton {
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    edge_ids: Vec<u32>,
}

impl Skeleton {
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn edge_ids(&self, v: u32) -> &[u32] {
        &self.edge_ids[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

/// `w(tau) = #{facets containing tau} / (C(n+1, k+1) |X(n)|)`, aligned with
/// the face tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    per_dim: Vec<Vec<Rational>>,
    common: Vec<u64>,
}

impl WeightTable {
    pub fn dim(&self, k: usize) -> &[Rational] {
        &self.per_dim[k]
    }

    pub fn weight(&self, k: usize, i: usize) -> Rational {
        self.per_dim[k][i]
    }

    /// The weight of the empty face.
    pub fn empty_face(&self) -> Rational {
        Rational::from_integer(1)
    }

    /// Denominator shared by all dimension-`k` weights.
    pub fn common_denominator(&self, k: usize) -> u64 {
        self.common[k]
    }

    /// Sum of weights in each dimension.
    pub fn sums(&self) -> Vec<Rational> {
        self.per_dim.iter().map(|ws| ws.iter().fold(Rational::from_integer(0), |a, &b| a + b)).collect()
    }

    /// True if every dimension sums to exactly 1.
    pub fn normalized(&self) -> bool {
        self.sums().iter().all(|s| *s == Rational::from_integer(1))
    }
}

/// A coset complex together with the coset data that indexes its vertices:
/// vertex `offsets[i] + c` is the `c`-th coset of `K_i`.
#[derive(Debug, Clone)]
pub struct CosetComplex {
    pub complex: SimplicialComplex,
    pub partitions: Vec<CosetPartition>,
    pub offsets: Vec<u32>,
}

impl CosetComplex {
    /// Vertex of the coset `x K_i`.
    pub fn vertex_of(&self, i: usize, x: u32) -> u32 {
        self.offsets[i] + self.partitions[i].class_of[x as usize]
    }

    /// `(color, coset representative)` of a vertex.
    pub fn coset_of(&self, v: u32) -> (usize, u32) {
        let i = self.offsets.iter().rposition(|&o| o <= v).unwrap();
        (i, self.partitions[i].reps[(v - self.offsets[i]) as usize])
    }

    /// The vertex permutation `hK_i -> xhK_i`.
    pub fn left_translation<G: IndexedGroup>(&self, g: &G, x: u32) -> Vec<u32> {
        (0..self.complex.vertex_count() as u32)
            .map(|v| {
                let (i, r) = self.coset_of(v);
                self.vertex_of(i, g.mul(x, r))
            })
            .collect()
    }
}

fn coset_setup<G: IndexedGroup>(g: &G, subgroups: &[Subgroup]) -> Result<(Vec<CosetPartition>, Vec<u32>, Vec<u32>)> {
    if subgroups.len() < 2 {
        return Err(Error::param("a coset complex needs at least two subgroups"));
    }
    let mut parts = Vec::with_capacity(subgroups.len());
    let mut offsets = Vec::with_capacity(subgroups.len());
    let mut colors = Vec::new();
    for (i, k) in subgroups.iter().enumerate() {
        if k.mask().len() != g.order() {
            return Err(Error::structural(format!("subgroup K_{i} is not a subgroup of the given group")));
        }
        let part = cosets(g, k)?;
        offsets.push(colors.len() as u32);
        colors.extend(core::iter::repeat_n(i as u32, part.count()));
        parts.push(part);
    }
    Ok((parts, offsets, colors))
}

/// The coset complex of `g` with respect to `K_0, ..., K_n`, with maximal
/// faces the `g`-orbit of the base face `{K_0, ..., K_n}`.
pub fn coset_complex<G: IndexedGroup>(g: &G, subgroups: &[Subgroup]) -> Result<CosetComplex> {
    let (partitions, offsets, colors) = coset_setup(g, subgroups)?;
    let n = subgroups.len() - 1;
    let mut flat = Vec::with_capacity(g.order() * (n + 1));
    for x in 0..g.order() {
        for (i, part) in partitions.iter().enumerate() {
            flat.push(offsets[i] + part.class_of[x]);
        }
    }
    let complex = SimplicialComplex::from_flat(n, colors.len(), Some(colors), flat)?;
    Ok(CosetComplex { complex, partitions, offsets })
}

/// The coset complex under the literal flag rule: maximal faces are the
/// colorful sets of cosets with pairwise non-empty intersections.
pub fn coset_complex_pairwise<G: IndexedGroup>(g: &G, subgroups: &[Subgroup]) -> Result<CosetComplex> {
    let (partitions, offsets, colors) = coset_setup(g, subgroups)?;
    let n = subgroups.len() - 1;
    // meets[i][j][c] = set of cosets of K_j meeting coset c of K_i
    let members: Vec<Vec<Vec<u32>>> =
        partitions.iter().map(|p| (0..p.count() as u32).map(|c| p.members(c)).collect()).collect();
    let meets = |i: usize, c: u32, j: usize, d: u32| -> bool {
        members[i][c as usize].iter().any(|&x| partitions[j].class_of[x as usize] == d)
    };
    let mut flat = Vec::new();
    let mut choice: Vec<u32> = Vec::with_capacity(n + 1);
    fn extend(
        level: usize,
        n: usize,
        choice: &mut Vec<u32>,
        counts: &[usize],
        meets: &dyn Fn(usize, u32, usize, u32) -> bool,
        out: &mut Vec<u32>,
        offsets: &[u32],
    ) {
        if level == n + 1 {
            out.extend(choice.iter().enumerate().map(|(i, &c)| offsets[i] + c));
            return;
        }
        for c in 0..counts[level] as u32 {
            if (0..level).all(|i| meets(i, choice[i], level, c)) {
                choice.push(c);
                extend(level + 1, n, choice, counts, meets, out, offsets);
                choice.pop();
            }
        }
    }
    let counts: Vec<usize> = partitions.iter().map(|p| p.count()).collect();
    extend(0, n, &mut choice, &counts, &meets, &mut flat, &offsets);
    let complex = SimplicialComplex::from_flat(n, colors.len(), Some(colors), flat)?;
    Ok(CosetComplex { complex, partitions, offsets })
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Links the two classes under the smaller root.
    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Quotient of `x` by the group generated by the vertex permutations in
/// `action`. Orbits are numbered by their smallest vertex; the returned
/// vector maps each vertex to its orbit.
///
/// Each permutation must preserve colors and map maximal faces to maximal
/// faces. A set of orbits is a face of the quotient when some face of `x`
/// meets each of them.
pub fn quotient_by_action(x: &SimplicialComplex, action: &[Vec<u32>]) -> Result<(SimplicialComplex, Vec<u32>)> {
    let nv = x.vertex_count();
    let mut uf = UnionFind::new(nv);
    for perm in action {
        if perm.len() != nv {
            return Err(Error::input("action permutation has the wrong length"));
        }
        let mut seen = vec![false; nv];
        for &w in perm {
            if w as usize >= nv || core::mem::replace(&mut seen[w as usize], true) {
                return Err(Error::input("action map is not a permutation"));
            }
        }
        if let Some(c) = x.colors() {
            if (0..nv).any(|v| c[v] != c[perm[v] as usize]) {
                return Err(Error::structural("action does not preserve colors"));
            }
        }
        let mut img = vec![0u32; x.dim() + 1];
        for f in x.facets().iter() {
            for (t, &v) in img.iter_mut().zip(f) {
                *t = perm[v as usize];
            }
            img.sort_unstable();
            if x.facets().index_of(&img).is_none() {
                return Err(Error::structural("action does not map maximal faces to maximal faces"));
            }
        }
        for v in 0..nv as u32 {
            uf.union(v, perm[v as usize]);
        }
    }
    let mut orbit_of = vec![u32::MAX; nv];
    let mut count = 0u32;
    for v in 0..nv as u32 {
        let r = uf.find(v);
        if orbit_of[r as usize] == u32::MAX {
            orbit_of[r as usize] = count;
            count += 1;
        }
        orbit_of[v as usize] = orbit_of[r as usize];
    }
    let mut flat = Vec::with_capacity(x.facets().len() * (x.dim() + 1));
    for f in x.facets().iter() {
        let mut img: Vec<u32> = f.iter().map(|&v| orbit_of[v as usize]).collect();
        img.sort_unstable();
        img.dedup();
        if img.len() != f.len() {
            return Err(Error::structural("a maximal face collapses in the quotient"));
        }
        flat.extend(img);
    }
    let colors = x.colors().map(|c| {
        let mut out = vec![0u32; count as usize];
        for v in 0..nv {
            out[orbit_of[v] as usize] = c[v];
        }
        out
    });
    let q = SimplicialComplex::from_flat(x.dim(), count as usize, colors, flat)?;
    Ok((q, orbit_of))
}

/// Both sides of the quotient identification: the quotient of the coset
/// complex by left translation by `normal`, and the coset complex of the
/// quotient group with the projected subgroups.
pub fn quotient_pair<G: IndexedGroup>(
    g: &G,
    subgroups: &[Subgroup],
    normal: &Subgroup,
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let cc = coset_complex(g, subgroups)?;
    let action: Vec<Vec<u32>> = normal.members().iter().map(|&x| cc.left_translation(g, x)).collect();
    let (left, _) = quotient_by_action(&cc.complex, &action)?;
    let (qg, proj) = quotient(g, normal)?;
    let images: Vec<Subgroup> = subgroups
        .iter()
        .map(|k| {
            let elems: Vec<u32> = k.members().iter().map(|&x| proj[x as usize]).collect();
            Subgroup::from_elements(&qg, &elems)
        })
        .collect::<Result<_>>()?;
    let right = coset_complex(&qg, &images)?.complex;
    Ok((left, right))
}

/// Builds both sides of the quotient identification and decides whether they
/// are isomorphic as colored complexes.
pub fn verify_quotient_proposition<G: IndexedGroup>(g: &G, subgroups: &[Subgroup], normal: &Subgroup) -> Result<bool> {
    let (left, right) = quotient_pair(g, subgroups, normal)?;
    Ok(is_isomorphic_partite(&left, &right, ISO_VERTEX_CAP)?.is_some())
}

/// Default vertex cap for [`is_isomorphic_partite`].
pub const ISO_VERTEX_CAP: usize = 10_000;
const ISO_STEP_CAP: u64 = 50_000_000;

/// A color-preserving isomorphism `x -> y` (vertex map), or `None`.
pub fn is_isomorphic_partite(x: &SimplicialComplex, y: &SimplicialComplex, vertex_cap: usize) -> Result<Option<Vec<u32>>> {
    let (cx, cy) = match (x.colors(), y.colors()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::param("partite isomorphism needs colored complexes")),
    };
    let nv = x.vertex_count();
    if nv > vertex_cap || y.vertex_count() > vertex_cap {
        return Err(Error::resource("partite isomorphism search", vertex_cap as u64, nv.max(y.vertex_count()) as u64));
    }
    if x.dim() != y.dim() || nv != y.vertex_count() || x.face_counts() != y.face_counts() {
        return Ok(None);
    }
    let (sx, sy) = (x.skeleton(), y.skeleton());
    let incid = |c: &SimplicialComplex| -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); c.vertex_count()];
        for (i, f) in c.facets().iter().enumerate() {
            for &v in f {
                inc[v as usize].push(i as u32);
            }
        }
        inc
    };
    let (ix, iy) = (incid(x), incid(y));
    let sig = |c: &[u32], s: &Skeleton, inc: &[Vec<u32>], v: u32| (c[v as usize], s.degree(v), inc[v as usize].len());
    let mut sigs_x: Vec<_> = (0..nv as u32).map(|v| sig(cx, &sx, &ix, v)).collect();
    let mut sigs_y: Vec<_> = (0..nv as u32).map(|v| sig(cy, &sy, &iy, v)).collect();
    let by_sig_y = {
        let mut m: Vec<(_, u32)> = sigs_y.iter().copied().zip(0..nv as u32).collect();
        m.sort_unstable();
        m
    };
    sigs_x.sort_unstable();
    sigs_y.sort_unstable();
    if sigs_x != sigs_y {
        return Ok(None);
    }
    // BFS order so most vertices have a mapped neighbor when reached.
    let mut order = Vec::with_capacity(nv);
    let mut seen = vec![false; nv];
    for s in 0..nv as u32 {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &w in sx.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut fwd = vec![u32::MAX; nv];
    let mut bwd = vec![u32::MAX; nv];
    let consistent = |v: u32, cand: u32, fwd: &[u32], bwd: &[u32]| -> bool {
        if bwd[cand as usize] != u32::MAX || sig(cx, &sx, &ix, v) != sig(cy, &sy, &iy, cand) {
            return false;
        }
        let mut mapped_nb = 0;
        for &u in sx.neighbors(v) {
            let fu = fwd[u as usize];
            if fu != u32::MAX {
                if !sy.adjacent(fu, cand) {
                    return false;
                }
                mapped_nb += 1;
            }
        }
        let mapped_nb_y = sy.neighbors(cand).iter().filter(|&&w| bwd[w as usize] != u32::MAX).count();
        if mapped_nb != mapped_nb_y {
            return false;
        }
        let mut img = vec![0u32; x.dim() + 1];
        for &fi in &ix[v as usize] {
            let f = x.facets().face(fi as usize);
            let mut complete = true;
            for (t, &u) in img.iter_mut().zip(f) {
                *t = if u == v { cand } else { fwd[u as usize] };
                complete &= *t != u32::MAX;
            }
            if complete {
                img.sort_unstable();
                if y.facets().index_of(&img).is_none() {
                    return false;
                }
            }
        }
        true
    };
    let candidates = |v: u32, fwd: &[u32]| -> Vec<u32> {
        if let Some(&u) = sx.neighbors(v).iter().find(|&&u| fwd[u as usize] != u32::MAX) {
            sy.neighbors(fwd[u as usize]).to_vec()
        } else {
            let s = sig(cx, &sx, &ix, v);
            let lo = by_sig_y.partition_point(|e| e.0 < s);
            by_sig_y[lo..].iter().take_while(|e| e.0 == s).map(|e| e.1).collect()
        }
    };
    let mut stack: Vec<(Vec<u32>, usize)> = Vec::with_capacity(nv);
    let mut steps = 0u64;
    if nv == 0 {
        return Ok(Some(Vec::new()));
    }
    stack.push((candidates(order[0], &fwd), 0));
    while !stack.is_empty() {
        let depth = stack.len() - 1;
        let v = order[depth];
        let (cands, next) = &mut stack[depth];
        if fwd[v as usize] != u32::MAX {
            bwd[fwd[v as usize] as usize] = u32::MAX;
            fwd[v as usize] = u32::MAX;
        }
        let mut placed = false;
        while *next < cands.len() {
            let c = cands[*next];
            *next += 1;
            steps += 1;
            if steps > ISO_STEP_CAP {
                return Err(Error::resource("partite isomorphism search steps", ISO_STEP_CAP, steps));
            }
            if consistent(v, c, &fwd, &bwd) {
                fwd[v as usize] = c;
                bwd[c as usize] = v;
                placed = true;
                break;
            }
        }
        if !placed {
            stack.pop();
            continue;
        }
        if depth + 1 == nv {
            return Ok(Some(fwd));
        }
        let nc = candidates(order[depth + 1], &fwd);
        stack.push((nc, 0));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{normal_closure, subgroup_generated, TableGroup};

    fn s3() -> TableGroup {
        TableGroup::symmetric(3).unwrap()
    }

    fn involutions(g: &TableGroup) -> Vec<u32> {
        g.elements_of_order(2)
    }

    #[test]
    fn subsets_enumerated() {
        let mut out = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, &mut |s| out.push(s.to_vec()));
        assert_eq!(out.len(), 6);
        assert_eq!(out[0], [1, 2]);
        assert_eq!(out[5], [3, 4]);
    }

    #[test]
    fn s3_six_cycle() {
        let g = s3();
        let inv = involutions(&g);
        let k0 = subgroup_generated(&g, &[inv[0]]);
        let k1 = subgroup_generated(&g, &[inv[1]]);
        let cc = coset_complex(&g, &[k0.clone(), k1.clone()]).unwrap();
        let x = &cc.complex;
        assert_eq!(x.face_counts(), [6, 6]);
        let sk = x.skeleton();
        assert!((0..6).all(|v| sk.degree(v) == 2));
        assert!(x.is_connected());
        let pw = coset_complex_pairwise(&g, &[k0, k1]).unwrap();
        assert_eq!(pw.complex, cc.complex);
        let (l, _) = x.link(&[0]).unwrap();
        assert_eq!(l.dim(), 0);
        assert_eq!(l.vertex_count(), 2);
        assert!(x.weights().normalized());
    }

    #[test]
    fn triangle_weights() {
        let x = SimplicialComplex::from_facets(2, 3, None, &[vec![0, 1, 2]]).unwrap();
        let w = x.weights();
        assert!(w.dim(0).iter().all(|&r| r == Rational::new(1, 3)));
        assert!(w.dim(1).iter().all(|&r| r == Rational::new(1, 3)));
        assert_eq!(w.dim(2)[0], Rational::from_integer(1));
        assert!(w.normalized());
        assert_eq!(x.link(&[]).unwrap().0, x);
    }

    #[test]
    fn non_pure_rejected() {
        assert!(SimplicialComplex::from_facets(1, 3, None, &[vec![0, 1]]).is_err());
        assert!(SimplicialComplex::from_facets(1, 2, Some(vec![0, 0]), &[vec![0, 1]]).is_err());
    }

    #[test]
    fn quotient_by_a3() {
        let g = s3();
        let inv = involutions(&g);
        let subs = [subgroup_generated(&g, &[inv[0]]), subgroup_generated(&g, &[inv[1]])];
        let a3 = normal_closure(&g, &g.elements_of_order(3));
        assert_eq!(a3.order(), 3);
        let (left, right) = quotient_pair(&g, &subs, &a3).unwrap();
        assert_eq!(left.face_counts(), [2, 1]);
        assert!(is_isomorphic_partite(&left, &right, 100).unwrap().is_some());
        assert!(verify_quotient_proposition(&g, &subs, &Subgroup::trivial(&g)).unwrap());
    }

    #[test]
    fn iso_relabel_and_negative() {
        let cyc = |m: u32| -> SimplicialComplex {
            let facets: Vec<Vec<u32>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
            let colors = (0..m).map(|i| i % 2).collect();
            SimplicialComplex::from_facets(1, m as usize, Some(colors), &facets).unwrap()
        };
        let x = cyc(6);
        let perm = [2, 3, 4, 5, 0, 1];
        let y = x.relabel(&perm).unwrap();
        let f = is_isomorphic_partite(&x, &y, 100).unwrap().unwrap();
        assert_eq!(x.relabel(&f).unwrap(), y);
        let squares = SimplicialComplex::from_facets(
            1,
            8,
            Some(vec![0, 1, 0, 1, 0, 1, 0, 1]),
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![4, 5], vec![5, 6], vec![6, 7], vec![7, 4]],
        )
        .unwrap();
        assert!(is_isomorphic_partite(&cyc(8), &squares, 100).unwrap().is_none());
    }

    #[test]
    fn klein_four_pairwise_has_extra_faces() {
        let v4 = TableGroup::from_table(4, vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]).unwrap();
        let subs: Vec<Subgroup> = (1..4).map(|a| subgroup_generated(&v4, &[a])).collect();
        let orbit = coset_complex(&v4, &subs).unwrap();
        let pair = coset_complex_pairwise(&v4, &subs).unwrap();
        assert_eq!(orbit.complex.facets().len(), 4);
        assert_eq!(pair.complex.facets().len(), 8);
    }
}
