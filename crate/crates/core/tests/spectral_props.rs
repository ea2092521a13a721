use hdx_core::fixtures;
use hdx_core::spectral::*;

#[test]
fn complete_graph_spectrum() {
    for m in 3..=9u32 {
        let w = walk_matrix(&fixtures::complete_graph(m)).unwrap();
        let d = w.to_dense();
        for u in 0..m as usize {
            for v in 0..m as usize {
                let want = if u == v { 0.0 } else { 1.0 / (m - 1) as f64 };
                assert!((d[(u, v)] - want).abs() < 1e-12);
            }
        }
        let ev = eigenvalues_dense(&w);
        assert!((ev[0] - 1.0).abs() < 1e-9);
        for e in &ev[1..] {
            assert!((e + 1.0 / (m - 1) as f64).abs() < 1e-9, "K_{m}: {e}");
        }
    }
}

#[test]
fn cycle_spectrum() {
    let w = walk_matrix(&fixtures::cycle(6)).unwrap();
    assert!((second_eigenvalue(&w).unwrap() - 0.5).abs() < 1e-9);
    for m in [5u32, 8, 11] {
        let w = walk_matrix(&fixtures::cycle(m)).unwrap();
        let want = (2.0 * std::f64::consts::PI / m as f64).cos();
        assert!((second_eigenvalue(&w).unwrap() - want).abs() < 1e-9);
    }
}

#[test]
fn eigenvalues_in_unit_interval_and_solvers_agree() {
    let mut xs: Vec<_> = fixtures::cheeger_graphs().into_iter().map(|(_, x)| x).collect();
    xs.push(fixtures::torus7());
    xs.push(fixtures::annulus());
    for inst in fixtures::coset_zoo().unwrap() {
        xs.push(inst.complex().unwrap().complex);
    }
    for x in &xs {
        let w = walk_matrix(x).unwrap();
        let ev = eigenvalues_dense(&w);
        assert!(ev.iter().all(|e| (-1.0 - 1e-9..=1.0 + 1e-9).contains(e)));
        let dense = ev[1];
        let it = second_eigenvalue_iterative(&w, 1e-9, 3).unwrap();
        assert!((dense - it).abs() < 1e-6, "dense {dense} iterative {it}");
    }
}

#[test]
fn rows_are_stochastic_and_stationary_matches_weights() {
    for x in [fixtures::torus7(), fixtures::fan(5), fixtures::s3_six_cycle().complex, fixtures::bowtie()] {
        let w = walk_matrix(&x).unwrap();
        let pi = w.stationary();
        let vw = x.weights();
        for u in 0..w.size() {
            let row: f64 = w.row(u).map(|(_, p)| p).sum();
            assert!((row - 1.0).abs() < 1e-12);
            let r = vw.weight(0, u);
            let exact = *r.numer() as f64 / *r.denom() as f64;
            assert!((pi[u] - exact).abs() < 1e-12);
            // detailed balance
            for (v, p) in w.row(u) {
                let back = w.row(v as usize).find(|&(t, _)| t as usize == u).unwrap().1;
                assert!((pi[u] * p - pi[v as usize] * back).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn report_on_small_complexes() {
    let r = local_spectral_report(&fixtures::triangle(), 0.0).unwrap();
    assert_eq!(r.entries[0].face, Vec::<u32>::new());
    assert!((r.entries[0].lambda2.unwrap() + 0.5).abs() < 1e-9);
    assert!(r.pass);
    let bow = local_spectral_report(&fixtures::bowtie(), 1.0).unwrap();
    let hub = bow.entries.iter().find(|e| e.face == vec![0]).unwrap();
    assert!(!hub.connected);
    assert!(!bow.pass);
}
