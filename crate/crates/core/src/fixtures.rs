//! Small complexes, graphs and coset-complex instances used by the test
//! suites and the `suite` command.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::{borrow::ToOwned, format};

use crate::complex::{coset_complex, CosetComplex, SimplicialComplex};
use crate::matgroup::{
    bfs_closure, element_order, elementary, subgroup_generated, GroupDomain, IndexedGroup, MatElement, MatrixDomain,
    PermDomain, Subgroup, TableGroup,
};
use crate::polyring::TruncPoly;
use crate::Result;

fn complex(n: usize, vc: usize, facets: &[Vec<u32>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(n, vc, None, facets).expect("fixture is a valid complex")
}

/// A graph as a 1-dimensional complex. Every vertex must lie on an edge.
pub fn graph(vertex_count: usize, edges: &[(u32, u32)]) -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = edges.iter().map(|&(a, b)| vec![a, b]).collect();
    complex(1, vertex_count, &facets)
}

/// One filled triangle.
pub fn triangle() -> SimplicialComplex {
    complex(2, 3, &[vec![0, 1, 2]])
}

/// The four triangles of the boundary of a tetrahedron (a 2-sphere).
pub fn tetrahedron_boundary() -> SimplicialComplex {
    complex(2, 4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// The 7-vertex triangulation of the torus: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    complex(2, 7, &facets)
}

/// Two triangles glued along an edge.
pub fn two_triangles() -> SimplicialComplex {
    complex(2, 4, &[vec![0, 1, 2], vec![1, 2, 3]])
}

/// Two triangles sharing one vertex.
pub fn bowtie() -> SimplicialComplex {
    complex(2, 5, &[vec![0, 1, 2], vec![0, 3, 4]])
}

/// The cone over an `m`-cycle: a disk with `m` triangles.
pub fn fan(m: u32) -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
    complex(2, m as usize + 1, &facets)
}

/// An annulus: the triangulated band between two triangles.
pub fn annulus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..3u32 {
        let j = (i + 1) % 3;
        facets.push(vec![i, j, 3 + i]);
        facets.push(vec![j, 3 + i, 3 + j]);
    }
    complex(2, 6, &facets)
}

pub fn cycle(m: u32) -> SimplicialComplex {
    let e: Vec<(u32, u32)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
    graph(m as usize, &e)
}

pub fn path(m: u32) -> SimplicialComplex {
    let e: Vec<(u32, u32)> = (0..m - 1).map(|i| (i, i + 1)).collect();
    graph(m as usize, &e)
}

pub fn complete_graph(m: u32) -> SimplicialComplex {
    let mut e = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            e.push((a, b));
        }
    }
    graph(m as usize, &e)
}

pub fn complete_bipartite(a: u32, b: u32) -> SimplicialComplex {
    let mut e = Vec::new();
    for x in 0..a {
        for y in 0..b {
            e.push((x, a + y));
        }
    }
    graph((a + b) as usize, &e)
}

pub fn star(leaves: u32) -> SimplicialComplex {
    let e: Vec<(u32, u32)> = (1..=leaves).map(|i| (0, i)).collect();
    graph(leaves as usize + 1, &e)
}

/// Hub 0 joined to an `m`-cycle on `1..=m`.
pub fn wheel(m: u32) -> SimplicialComplex {
    let mut e: Vec<(u32, u32)> = (1..=m).map(|i| (0, i)).collect();
    e.extend((0..m).map(|i| (1 + i, 1 + (i + 1) % m)));
    graph(m as usize + 1, &e)
}

pub fn petersen() -> SimplicialComplex {
    let mut e = Vec::new();
    for i in 0..5u32 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &e)
}

pub fn cube() -> SimplicialComplex {
    let mut e = Vec::new();
    for v in 0..8u32 {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    graph(8, &e)
}

pub fn grid(rows: u32, cols: u32) -> SimplicialComplex {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
            }
        }
    }
    graph((rows * cols) as usize, &e)
}

/// Two `k`-cliques joined by a single edge.
pub fn barbell(k: u32) -> SimplicialComplex {
    let mut e = Vec::new();
    for off in [0, k] {
        for a in 0..k {
            for b in a + 1..k {
                e.push((off + a, off + b));
            }
        }
    }
    e.push((k - 1, k));
    graph(2 * k as usize, &e)
}

/// Connected complexes with at most 8 edges, for exhaustive cohomology
/// cross-checks.
pub fn small_zoo() -> Vec<(&'static str, SimplicialComplex)> {
    let mut zoo = vec![
        ("triangle", triangle()),
        ("tetrahedron-boundary", tetrahedron_boundary()),
        ("two-triangles", two_triangles()),
        ("bowtie", bowtie()),
        ("fan-3", fan(3)),
        ("fan-4", fan(4)),
        ("path-4", path(4)),
        ("star-4", star(4)),
        ("k4-graph", complete_graph(4)),
        ("k23", complete_bipartite(2, 3)),
        ("wheel-4", wheel(4)),
    ];
    for (name, m) in [("cycle-3", 3), ("cycle-4", 4), ("cycle-5", 5), ("cycle-6", 6), ("cycle-8", 8)] {
        zoo.push((name, cycle(m)));
    }
    zoo.push(("s3-six-cycle", s3_six_cycle().complex));
    zoo
}

/// Connected graphs on at most 20 vertices for Cheeger-constant checks.
pub fn cheeger_graphs() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("path-6", path(6)),
        ("cycle-5", cycle(5)),
        ("cycle-20", cycle(20)),
        ("k5", complete_graph(5)),
        ("k33", complete_bipartite(3, 3)),
        ("k24", complete_bipartite(2, 4)),
        ("star-7", star(7)),
        ("wheel-7", wheel(7)),
        ("petersen", petersen()),
        ("cube", cube()),
        ("grid-3x4", grid(3, 4)),
        ("barbell-4", barbell(4)),
        ("s3-six-cycle", s3_six_cycle().complex),
    ]
}

/// A group given by permutations, with a lookup from permutations to
/// element indices of its table.
pub struct PermGroup {
    pub degree: usize,
    pub group: TableGroup,
    domain: PermDomain,
    source: crate::matgroup::FiniteGroup<PermDomain>,
}

impl PermGroup {
    /// The group generated by permutations given in 1-based cycle notation.
    pub fn generated(degree: usize, gens: &[&[&[usize]]]) -> Result<Self> {
        let domain = PermDomain::new(degree)?;
        let elems: Vec<Vec<u8>> = gens.iter().map(|c| domain.from_cycles(c)).collect::<Result<_>>()?;
        let source = bfs_closure(domain, &elems, 1 << 16)?;
        let group = TableGroup::from_indexed(&source)?;
        Ok(PermGroup { degree, group, domain, source })
    }

    /// Table index of a permutation in cycle notation.
    pub fn elem(&self, cycles: &[&[usize]]) -> u32 {
        let perm = self.domain.from_cycles(cycles).expect("valid cycles");
        let i = self.source.index_of_key(&self.domain.encode(&perm)).expect("element of the group");
        self.group.from_label(i)
    }

    pub fn sub(&self, gens: &[&[&[usize]]]) -> Subgroup {
        let g: Vec<u32> = gens.iter().map(|c| self.elem(c)).collect();
        subgroup_generated(&self.group, &g)
    }
}

/// The coset complex of `S_3` with respect to `<(1 2)>` and `<(2 3)>`,
/// a 6-cycle.
pub fn s3_six_cycle() -> CosetComplex {
    let g = PermGroup::generated(3, &[&[&[1, 2]], &[&[1, 2, 3]]]).expect("S_3");
    let subs = [g.sub(&[&[&[1, 2]]]), g.sub(&[&[&[2, 3]]])];
    coset_complex(&g.group, &subs).expect("coset complex of S_3")
}

/// A group with subgroups `K_0, ..., K_n` and some normal subgroups, each
/// tagged with a prime `p` when it is generated by its elements of order `p`.
pub struct CosetInstance {
    pub name: String,
    pub group: TableGroup,
    pub subgroups: Vec<Subgroup>,
    pub normals: Vec<NormalSub>,
}

pub struct NormalSub {
    pub name: String,
    pub subgroup: Subgroup,
    pub prime: Option<u64>,
}

/// The smallest prime `p` such that `n` is generated by its elements of
/// order `p`.
pub fn generating_prime<G: IndexedGroup>(g: &G, n: &Subgroup) -> Option<u64> {
    let primes = [2u64, 3, 5, 7, 11, 13];
    primes.into_iter().find(|&p| {
        let gens: Vec<u32> = n.members().iter().copied().filter(|&x| element_order(g, x) == p).collect();
        !gens.is_empty() && subgroup_generated(g, &gens).order() == n.order()
    })
}

fn normals(g: &TableGroup, list: Vec<(&str, Subgroup)>) -> Vec<NormalSub> {
    list.into_iter()
        .map(|(name, s)| {
            let prime = generating_prime(g, &s);
            NormalSub { name: name.to_owned(), subgroup: s, prime }
        })
        .collect()
}

fn sl2_f3() -> Result<(crate::matgroup::FiniteGroup<MatrixDomain>, MatrixDomain)> {
    let one = TruncPoly::one(3, 1)?;
    let dom = MatrixDomain::new(2, 3, 1)?;
    let gens = [elementary(1, 1, 2, &one)?, elementary(1, 2, 1, &one)?];
    Ok((bfs_closure(dom, &gens, 1 << 10)?, dom))
}

fn mat2(p: u32, e: [u32; 4]) -> Result<MatElement> {
    let entries: Vec<TruncPoly> = e.iter().map(|&c| TruncPoly::constant(p, 1, c as u64)).collect::<Result<_>>()?;
    MatElement::from_entries(2, &entries)
}

/// Small coset-complex instances over `S_3`, `S_4`, `A_4`, `D_4`, the Klein
/// four group and `SL_2(F_3)`.
pub fn coset_zoo() -> Result<Vec<CosetInstance>> {
    let mut zoo = Vec::new();

    let s3 = PermGroup::generated(3, &[&[&[1, 2]], &[&[1, 2, 3]]])?;
    let a3 = s3.sub(&[&[&[1, 2, 3]]]);
    let t12 = s3.sub(&[&[&[1, 2]]]);
    let t23 = s3.sub(&[&[&[2, 3]]]);
    let t13 = s3.sub(&[&[&[1, 3]]]);
    zoo.push(CosetInstance {
        name: "s3-two-involutions".into(),
        subgroups: vec![t12.clone(), t23.clone()],
        normals: normals(&s3.group, vec![("a3", a3.clone())]),
        group: s3.group.clone(),
    });
    zoo.push(CosetInstance {
        name: "s3-three-involutions".into(),
        subgroups: vec![t12, t23, t13],
        normals: normals(&s3.group, vec![("a3", a3)]),
        group: s3.group,
    });

    let s4 = PermGroup::generated(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])?;
    let v4 = s4.sub(&[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    let a4 = s4.sub(&[&[&[1, 2, 3]], &[&[2, 3, 4]]]);
    let (s1, s2, s3c): (&[&[usize]], &[&[usize]], &[&[usize]]) = (&[&[1, 2]], &[&[2, 3]], &[&[3, 4]]);
    zoo.push(CosetInstance {
        name: "s4-coxeter".into(),
        subgroups: vec![s4.sub(&[s2, s3c]), s4.sub(&[s1, s3c]), s4.sub(&[s1, s2])],
        normals: normals(&s4.group, vec![("v4", v4.clone()), ("a4", a4.clone())]),
        group: s4.group.clone(),
    });
    zoo.push(CosetInstance {
        name: "s4-transpositions".into(),
        subgroups: vec![s4.sub(&[s1]), s4.sub(&[s2]), s4.sub(&[s3c])],
        normals: normals(&s4.group, vec![("v4", v4.clone()), ("a4", a4)]),
        group: s4.group.clone(),
    });
    zoo.push(CosetInstance {
        name: "s4-coxeter-edge".into(),
        subgroups: vec![s4.sub(&[s1, s2]), s4.sub(&[s2, s3c])],
        normals: normals(&s4.group, vec![("v4", v4)]),
        group: s4.group,
    });

    let s5 = PermGroup::generated(5, &[&[&[1, 2]], &[&[2, 3]], &[&[3, 4]], &[&[4, 5]]])?;
    let a5 = s5.sub(&[&[&[1, 2, 3]], &[&[2, 3, 4]], &[&[3, 4, 5]]]);
    let t: [&[&[usize]]; 4] = [&[&[1, 2]], &[&[2, 3]], &[&[3, 4]], &[&[4, 5]]];
    let coxeter = |skip: usize| -> Vec<&[&[usize]]> { (0..4).filter(|&j| j != skip).map(|j| t[j]).collect() };
    zoo.push(CosetInstance {
        name: "s5-coxeter".into(),
        subgroups: (0..4).map(|i| s5.sub(&coxeter(i))).collect(),
        normals: normals(&s5.group, vec![("a5", a5)]),
        group: s5.group,
    });

    // signed permutations of three letters, acting on {1..6} with i+3 = -i
    let b3 = PermGroup::generated(6, &[&[&[1, 2], &[4, 5]], &[&[2, 3], &[5, 6]], &[&[3, 6]]])?;
    let b: [&[&[usize]]; 3] = [&[&[1, 2], &[4, 5]], &[&[2, 3], &[5, 6]], &[&[3, 6]]];
    let center = b3.sub(&[&[&[1, 4], &[2, 5], &[3, 6]]]);
    let signs = b3.sub(&[&[&[1, 4]], &[&[2, 5]], &[&[3, 6]]]);
    zoo.push(CosetInstance {
        name: "b3-coxeter".into(),
        subgroups: vec![b3.sub(&[b[1], b[2]]), b3.sub(&[b[0], b[2]]), b3.sub(&[b[0], b[1]])],
        normals: normals(&b3.group, vec![("center", center), ("sign-changes", signs)]),
        group: b3.group,
    });

    let a1a2 = PermGroup::generated(5, &[&[&[4, 5]], &[&[1, 2]], &[&[2, 3]]])?;
    let c: [&[&[usize]]; 3] = [&[&[4, 5]], &[&[1, 2]], &[&[2, 3]]];
    let swap = a1a2.sub(&[c[0]]);
    let rot3 = a1a2.sub(&[&[&[1, 2, 3]]]);
    let sym3 = a1a2.sub(&[c[1], c[2]]);
    zoo.push(CosetInstance {
        name: "a1xa2-coxeter".into(),
        subgroups: vec![a1a2.sub(&[c[1], c[2]]), a1a2.sub(&[c[0], c[2]]), a1a2.sub(&[c[0], c[1]])],
        normals: normals(&a1a2.group, vec![("z2", swap), ("a3", rot3), ("s3", sym3)]),
        group: a1a2.group,
    });

    let a4 = PermGroup::generated(4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]])?;
    let a4_v4 = a4.sub(&[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    zoo.push(CosetInstance {
        name: "a4-three-cycles".into(),
        subgroups: vec![a4.sub(&[&[&[1, 2, 3]]]), a4.sub(&[&[&[2, 3, 4]]]), a4.sub(&[&[&[1, 3, 4]]])],
        normals: normals(&a4.group, vec![("v4", a4_v4)]),
        group: a4.group,
    });

    let d4 = PermGroup::generated(4, &[&[&[1, 2, 3, 4]], &[&[2, 4]]])?;
    let rot2 = d4.sub(&[&[&[1, 3], &[2, 4]]]);
    let rot = d4.sub(&[&[&[1, 2, 3, 4]]]);
    let klein = d4.sub(&[&[&[1, 3], &[2, 4]], &[&[2, 4]]]);
    zoo.push(CosetInstance {
        name: "d4-reflections".into(),
        subgroups: vec![d4.sub(&[&[&[2, 4]]]), d4.sub(&[&[&[1, 2], &[3, 4]]])],
        normals: normals(&d4.group, vec![("center", rot2), ("rotations", rot), ("klein", klein)]),
        group: d4.group,
    });

    let v = PermGroup::generated(4, &[&[&[1, 2]], &[&[3, 4]]])?;
    let (a, b): (&[&[usize]], &[&[usize]]) = (&[&[1, 2]], &[&[3, 4]]);
    let diag = v.sub(&[&[&[1, 2], &[3, 4]]]);
    zoo.push(CosetInstance {
        name: "klein-four".into(),
        subgroups: vec![v.sub(&[a]), v.sub(&[b])],
        normals: normals(&v.group, vec![("diagonal", diag), ("first", v.sub(&[a]))]),
        group: v.group,
    });

    let (sl, _) = sl2_f3()?;
    let t = TableGroup::from_indexed(&sl)?;
    let look = |m: MatElement| -> u32 { t.from_label(sl.index_of(&m).expect("element of SL_2(F_3)")) };
    let up = look(mat2(3, [1, 1, 0, 1])?);
    let low = look(mat2(3, [1, 0, 1, 1])?);
    let other = look(mat2(3, [0, 1, 2, 2])?);
    let diag = look(mat2(3, [2, 0, 0, 2])?);
    let i4 = look(mat2(3, [0, 1, 2, 0])?);
    let j4 = look(mat2(3, [1, 1, 1, 2])?);
    let center = subgroup_generated(&t, &[diag]);
    let q8 = subgroup_generated(&t, &[i4, j4]);
    let u_up = subgroup_generated(&t, &[up]);
    let u_low = subgroup_generated(&t, &[low]);
    zoo.push(CosetInstance {
        name: "sl2f3-unipotent".into(),
        subgroups: vec![u_up.clone(), u_low.clone()],
        normals: normals(&t, vec![("center", center.clone()), ("q8", q8.clone())]),
        group: t.clone(),
    });
    zoo.push(CosetInstance {
        name: "sl2f3-three-sylow".into(),
        subgroups: vec![u_up.clone(), u_low.clone(), subgroup_generated(&t, &[other])],
        normals: normals(&t, vec![("center", center.clone()), ("q8", q8)]),
        group: t.clone(),
    });
    zoo.push(CosetInstance {
        name: "sl2f3-borel".into(),
        subgroups: vec![subgroup_generated(&t, &[up, diag]), subgroup_generated(&t, &[low, diag])],
        normals: normals(&t, vec![("center", center)]),
        group: t,
    });
    Ok(zoo)
}

impl CosetInstance {
    pub fn complex(&self) -> Result<CosetComplex> {
        coset_complex(&self.group, &self.subgroups)
    }

    pub fn label(&self, normal: &NormalSub) -> String {
        format!("{}/{}", self.name, normal.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::is_normal;

    #[test]
    fn fixture_shapes() {
        assert_eq!(torus7().face_counts(), vec![7, 21, 14]);
        assert_eq!(petersen().face_counts(), vec![10, 15]);
        assert_eq!(s3_six_cycle().complex.face_counts(), vec![6, 6]);
        assert!(small_zoo().iter().all(|(_, x)| x.is_connected() && x.edges().unwrap().len() <= 8));
        let g = cheeger_graphs();
        assert!(g.len() >= 10 && g.iter().all(|(_, x)| x.is_connected() && x.vertex_count() <= 20));
    }

    #[test]
    fn zoo_normals_are_normal() {
        let zoo = coset_zoo().unwrap();
        let total: usize = zoo.iter().map(|i| i.normals.len()).sum();
        assert!(total >= 10);
        for inst in &zoo {
            for n in &inst.normals {
                assert!(is_normal(&inst.group, &n.subgroup), "{}", inst.label(n));
            }
            assert!(inst.complex().unwrap().complex.weights().normalized());
        }
        let sl = zoo.iter().find(|i| i.name == "sl2f3-unipotent").unwrap();
        assert_eq!(sl.group.order(), 24);
        assert_eq!(sl.normals[0].subgroup.order(), 2);
        assert_eq!(sl.normals[0].prime, Some(2));
        assert_eq!(sl.normals[1].subgroup.order(), 8);
        assert_eq!(sl.normals[1].prime, None);
        let cox = zoo.iter().find(|i| i.name == "s4-coxeter").unwrap();
        assert_eq!(cox.normals.iter().map(|n| n.prime).collect::<Vec<_>>(), vec![Some(2), Some(3)]);
    }
}
