mod common;

use common::*;
use polycolor::coloring::{
    build_conflict_graph, build_conflict_graph_with, chromatic_number_exact, greedy_color, ChromaticOutcome,
    ConflictGraph, GreedyOrder,
};
use polycolor::exec::Exec;
use polycolor::generators::{gen_builtin, FixtureName};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn exact_number_matches_enumeration() {
    let mut rng = StdRng::seed_from_u64(3);
    for round in 0..120 {
        let n = rng.gen_range(0..=if round % 10 == 0 { 12 } else { 9 });
        let p = rng.gen_range(0.1..0.9);
        let edges = random_graph(&mut rng, n, p);
        let g = ConflictGraph::from_edges(n, &edges);
        let (k, lexmin) = brute_force_chromatic(n, &edges);
        match chromatic_number_exact(&g, 12).unwrap() {
            ChromaticOutcome::Colorable(cert) => {
                assert_eq!(cert.k, k, "n={n} edges={edges:?}");
                assert!(g.is_proper(&cert.assignment));
                assert!(cert.assignment.iter().all(|&c| c >= 1 && c as usize <= k));
                assert_eq!(cert.assignment, lexmin);
                if k > 1 {
                    let ev = cert.evidence.expect("lower bound evidence");
                    assert_eq!(ev.colors, k - 1);
                }
            }
            other => panic!("{other:?}"),
        }
        // too few colors allowed
        if k > 1 {
            assert!(matches!(
                chromatic_number_exact(&g, k - 1).unwrap(),
                ChromaticOutcome::InfeasibleUpTo { kmax, .. } if kmax == k - 1
            ));
        }
        for order in [GreedyOrder::DegreeDesc, GreedyOrder::Input] {
            let c = greedy_color(&g, order).unwrap();
            assert!(g.is_proper(&c));
            assert!(c.iter().copied().max().unwrap_or(0) as usize >= k);
        }
    }
}

#[test]
fn results_are_deterministic() {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..20 {
        let edges = random_graph(&mut rng, 11, 0.5);
        let g = ConflictGraph::from_edges(11, &edges);
        assert_eq!(chromatic_number_exact(&g, 12), chromatic_number_exact(&g.clone(), 12));
    }
}

#[test]
fn fixture_graphs_agree_across_strategies() {
    for f in [FixtureName::Hex7, FixtureName::Tri8] {
        let t = gen_builtin(f);
        let seq = build_conflict_graph_with(&t, Exec::Sequential, 0);
        let par = build_conflict_graph_with(&t, Exec::Parallel, 0);
        assert_eq!(seq, par);
        assert_eq!(seq, build_conflict_graph(&t));
        let n = seq.node_count();
        let edges = seq.edges();
        let (k, _) = brute_force_chromatic(n, &edges);
        match chromatic_number_exact(&seq, 12).unwrap() {
            ChromaticOutcome::Colorable(c) => assert_eq!(c.k, k),
            other => panic!("{other:?}"),
        }
    }
}
