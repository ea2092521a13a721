use hdx_core::cohomology::*;
use hdx_core::complex::SimplicialComplex;
use hdx_core::fixtures;
use hdx_core::matgroup::{IndexedGroup, TableGroup};
use hdx_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1 << 24;

fn lam(m: usize) -> TableGroup {
    TableGroup::cyclic(m).unwrap()
}

// ---- independent linear algebra over Z ----

/// Diagonalizes an integer matrix by unimodular row and column operations
/// and returns the non-zero diagonal entries.
fn diagonal_form(mut a: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = a.len();
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // smallest non-zero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(r0, bi);
        for row in a.iter_mut() {
            row.swap(c0, bj);
        }
        loop {
            let piv = a[r0][c0];
            let mut clean = true;
            for i in r0 + 1..rows {
                let q = a[i][c0] / piv;
                if q != 0 {
                    for j in c0..cols {
                        a[i][j] -= q * a[r0][j];
                    }
                }
                if a[i][c0] != 0 {
                    clean = false;
                }
            }
            for j in c0 + 1..cols {
                let q = a[r0][j] / piv;
                if q != 0 {
                    for row in a.iter_mut().skip(r0) {
                        row[j] -= q * row[c0];
                    }
                }
                if a[r0][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move a smaller remainder into the pivot position
            let mut best = (r0, c0);
            for i in r0..rows {
                if a[i][c0] != 0 && a[i][c0].abs() < a[best.0][best.1].abs() {
                    best = (i, c0);
                }
            }
            for j in c0..cols {
                if a[r0][j] != 0 && a[r0][j].abs() < a[best.0][best.1].abs() {
                    best = (r0, j);
                }
            }
            a.swap(r0, best.0);
            for row in a.iter_mut() {
                row.swap(c0, best.1);
            }
        }
        diag.push(a[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    diag
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Number of solutions of `A x = 0` over `Z/m`.
fn kernel_size_mod(a: Vec<Vec<i64>>, cols: usize, m: i64) -> u128 {
    let d = diagonal_form(a, cols);
    let mut size = (m as u128).pow((cols - d.len()) as u32);
    for x in d {
        size *= gcd(x, m) as u128;
    }
    size
}

/// `|H^1(X, Z/m)|` from the simplicial coboundary matrices.
fn abelian_h1_order(x: &SimplicialComplex, m: i64) -> u128 {
    let nv = x.vertex_count();
    let edges: Vec<Vec<u32>> = x.faces(1).iter().map(|f| f.to_vec()).collect();
    let ne = edges.len();
    let d0: Vec<Vec<i64>> = edges
        .iter()
        .map(|e| {
            let mut row = vec![0; nv];
            row[e[0] as usize] = 1;
            row[e[1] as usize] = -1;
            row
        })
        .collect();
    let mut d1 = Vec::new();
    if x.dim() >= 2 {
        let idx = |a: u32, b: u32| edges.iter().position(|e| e[0] == a && e[1] == b).unwrap();
        for t in x.faces(2).iter() {
            let mut row = vec![0; ne];
            row[idx(t[0], t[1])] += 1;
            row[idx(t[1], t[2])] += 1;
            row[idx(t[0], t[2])] -= 1;
            d1.push(row);
        }
    }
    let z1 = kernel_size_mod(d1, ne, m);
    let k0 = kernel_size_mod(d0, nv, m);
    z1 * k0 / (m as u128).pow(nv as u32)
}

fn snf_instances() -> Vec<(String, SimplicialComplex)> {
    let mut v: Vec<(String, SimplicialComplex)> =
        fixtures::small_zoo().into_iter().map(|(n, x)| (n.to_string(), x)).collect();
    v.push(("torus7".into(), fixtures::torus7()));
    v.push(("annulus".into(), fixtures::annulus()));
    v.push(("petersen".into(), fixtures::petersen()));
    for inst in fixtures::coset_zoo().unwrap() {
        v.push((inst.name.clone(), inst.complex().unwrap().complex));
    }
    v
}

#[test]
fn abelian_orbit_count_matches_linear_algebra() {
    for (name, x) in snf_instances() {
        if !x.is_connected() {
            continue;
        }
        for m in [2usize, 3, 4, 5] {
            let expected = abelian_h1_order(&x, m as i64);
            if expected <= 4096 {
                let classes = h1_class_count_gauge(&x, &lam(m), CAP).unwrap();
                assert_eq!(classes as u128, expected, "{name} with Z/{m}");
            }
            let g = h1_trivial(&x, &lam(m), H1Mode::Gauge, CAP).unwrap();
            assert_eq!(g.trivial, expected == 1, "{name} with Z/{m}");
            let ne = x.faces(1).len() as u32;
            if (m as u64).checked_pow(ne).is_some_and(|t| t <= 1 << 22) {
                let b = h1_trivial(&x, &lam(m), H1Mode::Brute, CAP).unwrap();
                assert_eq!(b.classes.map(u128::from), Some(expected), "{name} with Z/{m} (brute)");
            }
        }
    }
}

#[test]
fn gauge_and_brute_agree_on_small_zoo() {
    let lams = [lam(1), lam(2), lam(3)];
    for (name, x) in fixtures::small_zoo() {
        for l in &lams {
            let g = h1_trivial(&x, l, H1Mode::Gauge, CAP).unwrap();
            let b = h1_trivial(&x, l, H1Mode::Brute, CAP).unwrap();
            assert_eq!(g.trivial, b.trivial, "{name} with |Λ| = {}", l.order());
            assert_eq!(g.witness.is_some(), !g.trivial);
            if let Some(w) = &g.witness {
                assert!(is_cocycle(&x, l, w));
            }
            if let Some(w) = &b.witness {
                assert!(is_cocycle(&x, l, w));
            }
        }
    }
}

#[test]
fn non_abelian_class_counts_agree() {
    let s3 = TableGroup::symmetric(3).unwrap();
    for (name, x) in fixtures::small_zoo() {
        let ne = x.faces(1).len() as u32;
        if 6u64.pow(ne) > 1 << 22 {
            continue;
        }
        let b = h1_trivial(&x, &s3, H1Mode::Brute, CAP).unwrap();
        let g = h1_class_count_gauge(&x, &s3, CAP).unwrap();
        assert_eq!(b.classes, Some(g), "{name}");
    }
    // a 3-cycle: classes are Hom(Z, S_3) up to conjugacy, i.e. the 3
    // conjugacy classes of S_3
    assert_eq!(h1_class_count_gauge(&fixtures::cycle(3), &s3, CAP).unwrap(), 3);
}

#[test]
fn sphere_and_torus() {
    let sphere = fixtures::tetrahedron_boundary();
    for l in [lam(2), lam(3), TableGroup::symmetric(3).unwrap()] {
        for mode in [H1Mode::Gauge, H1Mode::Brute] {
            assert!(h1_trivial(&sphere, &l, mode, CAP).unwrap().trivial);
        }
    }
    let torus = fixtures::torus7();
    let b = h1_trivial(&torus, &lam(2), H1Mode::Brute, CAP).unwrap();
    assert!(!b.trivial);
    assert_eq!(b.classes, Some(4));
    assert!(!h1_trivial(&torus, &lam(2), H1Mode::Gauge, CAP).unwrap().trivial);
}

#[test]
fn d1_after_d0_is_trivial_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s4 = TableGroup::symmetric(4).unwrap();
    let complexes = [fixtures::torus7(), fixtures::tetrahedron_boundary(), fixtures::annulus(), fixtures::fan(5)];
    for x in &complexes {
        for l in [&s4, &lam(6)] {
            for _ in 0..50 {
                let phi = Cochain0 { values: (0..x.vertex_count()).map(|_| rng.random_range(0..l.order() as u32)).collect() };
                let d = d0(x, l, &phi);
                assert!(is_cocycle(x, l, &d));
                assert!(d1(x, l, &d).values.iter().all(|&v| v == l.identity()));
                // gauge action keeps cocycles cocycles and is a group action
                let psi = Cochain0 { values: (0..x.vertex_count()).map(|_| rng.random_range(0..l.order() as u32)).collect() };
                let moved = gauge_act(x, l, &psi, &d).unwrap();
                assert!(is_cocycle(x, l, &moved));
            }
        }
    }
}

// ---- weighted Cheeger constant by subset enumeration ----

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Face weights straight from the facet list.
fn facet_count_weights(x: &SimplicialComplex, k: usize) -> Vec<Rational> {
    let n = x.dim();
    let facets: Vec<Vec<u32>> = x.facets().iter().map(|f| f.to_vec()).collect();
    let denom = binom(n as u64 + 1, k as u64 + 1) as i128 * facets.len() as i128;
    x.faces(k)
        .iter()
        .map(|f| {
            let c = facets.iter().filter(|g| f.iter().all(|v| g.contains(v))).count();
            Rational::new(c as i128, denom)
        })
        .collect()
}

fn cheeger(x: &SimplicialComplex) -> Rational {
    let nv = x.vertex_count();
    let wv = facet_count_weights(x, 0);
    let we = facet_count_weights(x, 1);
    let edges: Vec<Vec<u32>> = x.faces(1).iter().map(|f| f.to_vec()).collect();
    let total: Rational = wv.iter().sum();
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1 << nv) - 1 {
        let inside = |v: u32| mask >> v & 1 == 1;
        let ws: Rational = (0..nv as u32).filter(|&v| inside(v)).map(|v| wv[v as usize]).sum();
        let cut: Rational = edges.iter().zip(&we).filter(|(e, _)| inside(e[0]) != inside(e[1])).map(|(_, w)| *w).sum();
        let r = cut / ws.min(total - ws);
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best.unwrap()
}

#[test]
fn h0_is_the_weighted_cheeger_constant() {
    let graphs = fixtures::cheeger_graphs();
    assert!(graphs.len() >= 10);
    for (name, x) in graphs {
        let h0 = expansion_h0(&x, &lam(2), CAP).unwrap().unwrap();
        assert_eq!(h0, cheeger(&x), "{name}");
    }
}

#[test]
fn small_constants() {
    let tri = fixtures::triangle();
    assert_eq!(expansion_h0(&tri, &lam(2), CAP).unwrap(), Some(Rational::from_integer(2)));
    assert_eq!(cheeger(&tri), Rational::from_integer(2));
    let two = fixtures::graph(4, &[(0, 1), (2, 3)]);
    assert_eq!(expansion_h0(&two, &lam(2), CAP).unwrap(), Some(Rational::from_integer(0)));

    let torus = expansion_h1_exact(&fixtures::torus7(), &lam(2), CAP).unwrap();
    assert_eq!(torus.cobound, Some(Rational::from_integer(0)));
    assert!(torus.systole.is_some());

    let sphere = expansion_h1_exact(&fixtures::tetrahedron_boundary(), &lam(2), CAP).unwrap();
    assert_eq!(sphere.cobound, sphere.cosys);
    assert!(sphere.systole.is_none());

    // single triangle: every non-coboundary is one edge flip away from B^1
    // and has non-trivial triangle value, so the ratio is 1 / (1/3) = 3
    let t = expansion_h1_exact(&tri, &lam(2), CAP).unwrap();
    assert_eq!(t.cobound, Some(Rational::from_integer(3)));
}

#[test]
fn search_bound_is_above_exact_value() {
    for x in [fixtures::triangle(), fixtures::tetrahedron_boundary(), fixtures::fan(4)] {
        let exact = expansion_h1_exact(&x, &lam(2), CAP).unwrap().cobound.unwrap();
        let s = expansion_h1_search(&x, &lam(2), 200, 11, CAP).unwrap();
        assert!(s.cobound_upper.unwrap() >= exact);
        let again = expansion_h1_search(&x, &lam(2), 200, 11, CAP).unwrap();
        assert_eq!(s, again);
    }
}

#[test]
fn caps_are_enforced() {
    let x = fixtures::torus7();
    assert!(matches!(
        h1_trivial(&x, &lam(3), H1Mode::Brute, 1 << 10),
        Err(hdx_core::Error::Resource { .. })
    ));
    assert!(matches!(expansion_h1_exact(&x, &lam(3), 1 << 10), Err(hdx_core::Error::Resource { .. })));
}
