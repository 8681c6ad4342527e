//! Corpus-level invariants: exhaustive small graphs plus randomized inputs.

use proptest::prelude::*;

use biproj::generator::enumerate_all;
use biproj::projection::{project_matrix, project_sparse, project_weighted, Side};
use biproj::verify::{
    check_clique_induction, check_total_weight_identity, check_weight_bounds,
    check_weight_sum_upper_bound, verify_all, weight_sum_bound, Counterexample, Status,
};
use biproj::{BipartiteGraph, UnipartiteGraph, WeightedUnipartiteGraph};

fn arb_graph(max: usize, max_edges: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max, 1..=max)
        .prop_flat_map(move |(n1, n2)| {
            (Just(n1), Just(n2), prop::collection::vec((0..n1, 0..n2), 0..max_edges))
        })
        .prop_map(|(n1, n2, pairs)| BipartiteGraph::from_edge_list(n1, n2, pairs).unwrap())
}

// Σ C(d_s, 2) by explicit pair enumeration rather than the closed form.
fn wedge_count(g: &BipartiteGraph) -> u64 {
    (0..g.n2())
        .map(|s| {
            let d = g.degree_s(s);
            (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).count() as u64
        })
        .sum()
}

#[test]
fn exhaustive_small_graphs() {
    let mut seen = 0;
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            for g in enumerate_all(n1, n2) {
                let w = project_weighted(&g, Side::ProjectU);
                assert_eq!(project_matrix(&g.to_biadjacency()), w.strip_weights());
                assert_eq!(project_sparse(&g, Side::ProjectU), w.strip_weights());
                assert_eq!(w.total_weight(), wedge_count(&g));
                for r in verify_all(&g) {
                    assert_ne!(r.status, Status::Fail, "{:?} on {:?}", r, g.edges());
                }
                let s = g.degree_sums();
                assert!(s.sum_u == s.m && s.sum_s == s.m);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 2 + 4 + 8 + 4 + 16 + 64 + 8 + 64 + 512);
}

#[test]
fn disconnected_projection_without_pendant_pair_is_not_a_failure() {
    // Two disjoint K(2,2) blocks: projection is two disjoint edges, and no
    // edge has two pendant endpoints.
    let g = BipartiteGraph::from_edge_list(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
        .unwrap();
    assert!(!project_sparse(&g, Side::ProjectU).is_connected());
    assert!(verify_all(&g).iter().all(|r| r.passed()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn theorems_hold_on_honest_projections(g in arb_graph(25, 200)) {
        for r in verify_all(&g) {
            prop_assert!(r.passed(), "{}", r.to_line());
            prop_assert_eq!(r.status == Status::Fail, r.counterexample.is_some());
        }
        let w = project_weighted(&g, Side::ProjectU);
        prop_assert_eq!(w.total_weight(), wedge_count(&g));
        prop_assert!(w.total_weight() <= weight_sum_bound(g.n1(), g.n2()));
    }

    #[test]
    fn missing_edge_counterexample_reproduces(g in arb_graph(12, 60), pick in any::<prop::sample::Index>()) {
        let p = project_sparse(&g, Side::ProjectU);
        prop_assume!(p.edge_count() > 0);
        let (i, j) = p.edges()[pick.index(p.edge_count())];
        let broken = p.without_edge(i, j);
        let r = check_clique_induction(&g, &broken).unwrap();
        prop_assert_eq!(r.status, Status::Fail);
        match r.counterexample {
            Some(Counterexample::MissingCliqueEdge { s, u_i, u_j }) => {
                // Reproduce in isolation: both endpoints see s, the edge is gone.
                prop_assert!(g.has_edge(u_i, s) && g.has_edge(u_j, s));
                prop_assert!(!broken.has_edge(u_i, u_j));
                let single = UnipartiteGraph::from_edges(g.n1(), []).unwrap();
                let only = BipartiteGraph::from_edge_list(g.n1(), g.n2(), [(u_i, s), (u_j, s)]).unwrap();
                prop_assert_eq!(check_clique_induction(&only, &single).unwrap().status, Status::Fail);
            }
            other => prop_assert!(false, "unexpected counterexample {:?}", other),
        }
    }

    #[test]
    fn tampered_weight_is_caught(g in arb_graph(12, 60), pick in any::<prop::sample::Index>(), bump in 1u64..5) {
        let w = project_weighted(&g, Side::ProjectU);
        prop_assume!(w.edge_count() > 0);
        let k = pick.index(w.edge_count());
        let tampered = WeightedUnipartiteGraph::from_weighted_edges(
            w.n(),
            w.edges().iter().enumerate().map(|(x, &(i, j, wt))| (i, j, if x == k { wt + bump } else { wt })),
        ).unwrap();
        let r = check_total_weight_identity(&g, &tampered).unwrap();
        prop_assert_eq!(
            r.counterexample,
            Some(Counterexample::TotalWeightMismatch { lhs: w.total_weight() + bump, rhs: w.total_weight() })
        );
        // The bound check may or may not trip, but never on the honest graph.
        prop_assert!(check_weight_sum_upper_bound(&g, &w).unwrap().passed());

        let (i, j, _) = w.edges()[k];
        let zeroed = WeightedUnipartiteGraph::from_weighted_edges(w.n(), [(i, j, 0)]).unwrap();
        let r = check_weight_bounds(&g, &zeroed).unwrap();
        prop_assert_eq!(
            r.counterexample,
            Some(Counterexample::WeightOutOfBounds { i, j, weight: 0, upper: g.n2() as u64 })
        );
    }
}
