use qspec::enumerate::{random_graph, sample_connected};
use qspec::graph::tutte_deficiency;
use qspec::spectral::{eigenvalues, signless_laplacian};
use qspec::verify::{check_graph, run_graphs, RunOptions, VerdictRecord};
use qspec::{q1, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adding an edge to a connected graph strictly increases q1.
#[test]
fn q1_strictly_monotone_under_edge_addition() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut pairs = 0;
    while pairs < 500 {
        let n = rng.random_range(4..=16);
        let g = random_graph(&mut rng, n, 0.35);
        if !g.is_connected().unwrap() || g.edge_count() == n * (n - 1) / 2 {
            continue;
        }
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let (u, v) = missing[rng.random_range(0..missing.len())];
        let mut edges: Vec<_> = g.edges().collect();
        edges.push((u, v));
        let bigger = Graph::new(n, &edges).unwrap();
        let (a, b) = (q1(&g).unwrap(), q1(&bigger).unwrap());
        assert!(b > a + 1e-12, "adding ({u},{v}) moved q1 from {a} to {b}");
        pairs += 1;
    }
}

#[test]
fn perron_bounds() {
    for (i, g) in sample_connected(12, 0.3, 300, 5)
        .unwrap()
        .iter()
        .enumerate()
    {
        let delta = g.max_degree() as f64;
        let q = q1(g).unwrap();
        assert!(
            q >= delta + 1.0 - 1e-9 && q <= 2.0 * delta + 1e-9,
            "graph {i}: q1 {q}, max degree {delta}"
        );
    }
}

#[test]
fn power_iteration_matches_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.random_range(2..=24);
        let g = random_graph(&mut rng, n, 0.4);
        let all = eigenvalues(&signless_laplacian(&g)).unwrap();
        let top = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let q = q1(&g).unwrap();
        assert!(
            (q - top).abs() <= 1e-8 * top.max(1.0),
            "n={n}: {q} vs {top}"
        );
    }
}

fn assert_clean(n: usize, p: f64, seed: u64) {
    let graphs = sample_connected(n, p, 10_000, seed).unwrap();
    let mut without_pm = Vec::new();
    let mut keep = |r: &VerdictRecord| {
        if !r.has_pm {
            without_pm.push(r.clone());
        }
        Ok(())
    };
    let s = run_graphs(
        graphs.iter().cloned(),
        RunOptions { jobs: Some(4) },
        Some(&mut keep),
    )
    .unwrap();
    assert_eq!(s.checked, 10_000);
    assert_eq!(s.counterexamples, 0, "{:?}", s.counterexample_records);
    assert_eq!(s.edge_violations, 0, "{:?}", s.edge_violation_records);
    for r in &without_pm {
        let g = qspec::graph6::decode_graph6(&r.graph6).unwrap();
        let w = r.witness.as_ref().expect("witness recorded");
        assert!(tutte_deficiency(&g, w).unwrap() >= 1, "{}", r.graph6);
    }
}

#[test]
fn random_connected_order_8() {
    assert_clean(8, 0.5, 0x08);
}

#[test]
fn random_connected_order_10() {
    assert_clean(10, 0.6, 0x10);
}

#[test]
fn random_connected_order_12() {
    assert_clean(12, 0.7, 0x12);
}

#[test]
fn check_graph_is_deterministic() {
    for g in sample_connected(14, 0.5, 50, 3).unwrap() {
        let (a, b) = (check_graph(&g).unwrap(), check_graph(&g).unwrap());
        assert_eq!(a.q1.to_bits(), b.q1.to_bits());
        assert_eq!(a, b);
    }
}
