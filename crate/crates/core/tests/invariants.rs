//! Randomized and exhaustive cross-checks of the structural invariants
//! each module promises.  Slow exhaustive sweeps at the enumeration
//! frontier are present but ignored by default.

use std::sync::OnceLock;

use proptest::prelude::*;

use chibound::canon::canonical_key;
use chibound::codec::{all_labeled_graphs, from_graph6, to_graph6};
use chibound::coloring;
use chibound::divisibility;
use chibound::harness::{self, GraphClass};
use chibound::patterns::{self, PatternId};
use chibound::perfection;
use chibound::simplicial;
use chibound::Graph;

/// Uniform random graph on 1..=max_n vertices, each edge a coin flip.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1usize..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(n, &edges).expect("in-range edges")
        })
    })
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.n()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

static CLASS7: OnceLock<Vec<Graph>> = OnceLock::new();

/// All fork-free, odd-parachute-free representatives up to 7 vertices.
fn class7() -> &'static [Graph] {
    CLASS7.get_or_init(|| {
        harness::enumerate_class_up_to(GraphClass::ForkOddParachuteFree, 7)
            .expect("order within the guard")
            .into_iter()
            .flat_map(|t| t.graphs)
            .collect()
    })
}

proptest! {
    #[test]
    fn neighbors_and_non_neighbors_partition((g, _) in arb_graph_with_perm(10)) {
        let co = g.complement();
        for v in g.vertices() {
            prop_assert_eq!(g.degree(v) + co.degree(v) + 1, g.n());
        }
    }

    #[test]
    fn graph6_roundtrips(g in arb_graph(10)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).expect("own output"), g);
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in arb_graph_with_perm(10)) {
        let relabeled = g.relabel(&perm);
        prop_assert_eq!(
            canonical_key(&g).expect("within the guard"),
            canonical_key(&relabeled).expect("within the guard")
        );
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(10)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn pattern_witnesses_revalidate(g in arb_graph(9)) {
        let ids = [
            PatternId::Claw,
            PatternId::Fork,
            PatternId::Paw,
            PatternId::CoDart,
            PatternId::Bull,
            PatternId::Gem,
            PatternId::Dart,
            PatternId::ThreeP1,
            PatternId::OddHole,
            PatternId::OddAntihole,
            PatternId::OddBalloon,
            PatternId::OddParachute,
        ];
        for id in ids {
            if let Some(w) = patterns::find_induced(&g, id).expect("searchable pattern") {
                prop_assert!(patterns::witness_is_valid(&g, &w), "{} witness", id);
            }
        }
    }

    #[test]
    fn k_simplicial_is_monotone_in_k(g in arb_graph(10)) {
        for v in g.vertices() {
            for k in 1..=2usize {
                let narrow = simplicial::is_k_simplicial(&g, v, k).expect("small k");
                let wide = simplicial::is_k_simplicial(&g, v, k + 1).expect("small k");
                prop_assert!(!narrow || wide, "v={v} k={k}");
            }
        }
    }

    #[test]
    fn clique_covers_revalidate(g in arb_graph(10)) {
        for v in g.vertices() {
            for k in 1..=3usize {
                let nb = g.neighbors(v);
                if let Some(cover) = simplicial::union_of_k_cliques(&g, nb, k).expect("small k") {
                    prop_assert!(simplicial::cover_is_valid(&g, nb, &cover, k));
                }
            }
        }
    }
}

proptest! {
    // The solvers below are exponential in the worst case, so fewer cases.
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn omega_chi_sandwich_and_proper_colorings(g in arb_graph(10)) {
        let (omega, clique) = perfection::clique_number(&g);
        let (chi, coloring) = perfection::chromatic_number(&g);
        prop_assert!(omega <= chi && chi <= g.n());
        prop_assert_eq!(clique.len(), omega);
        prop_assert_eq!(coloring.palette, chi);
        prop_assert!(coloring.is_valid_for(&g));
    }

    #[test]
    fn perfect_graphs_color_with_omega(g in arb_graph(9)) {
        if perfection::is_perfect_structural(&g) {
            let (omega, _) = perfection::clique_number(&g);
            let (chi, _) = perfection::chromatic_number(&g);
            prop_assert_eq!(chi, omega);
        }
    }

    #[test]
    fn trisimplicial_degree_is_bounded(g in arb_graph(10)) {
        let (omega, _) = perfection::clique_number(&g);
        for v in g.vertices() {
            if simplicial::is_k_simplicial(&g, v, 3).expect("small k") {
                prop_assert!(g.degree(v) <= 3 * (omega - 1), "v={v} omega={omega}");
            }
        }
    }

    #[test]
    fn division_certificates_revalidate(g in arb_graph(10)) {
        if let Some(cert) = divisibility::find_division(&g).expect("within the guard") {
            prop_assert!(divisibility::division_is_valid(&g, &cert));
        }
    }

    #[test]
    fn class_members_color_within_bound_and_replay(idx in any::<prop::sample::Index>()) {
        let g = idx.get(class7());
        let trace = coloring::color_structurally(g).expect("class member");
        let (omega, _) = perfection::clique_number(g);
        let (chi, _) = perfection::chromatic_number(g);
        prop_assert!(trace.coloring.palette <= coloring::binom_bound(omega));
        prop_assert!(trace.coloring.palette >= chi);
        prop_assert!(coloring::verify_coloring(g, &trace.coloring).expect("matching size"));
        let replayed = coloring::replay(g, &trace.steps).expect("own log");
        prop_assert_eq!(replayed, trace.coloring);
    }
}

#[test]
fn family_patterns_have_the_promised_sizes() {
    for i in 4..=8 {
        let (wheel, _) = PatternId::Wheel(i).build().expect("buildable");
        assert_eq!(wheel.n(), i + 1);
        let (balloon, _) = PatternId::Balloon(i).build().expect("buildable");
        assert_eq!(balloon.n(), i + 2);
        let (parachute, _) = PatternId::Parachute(i).build().expect("buildable");
        assert_eq!(parachute.n(), i + 2);
    }
}

#[test]
fn graph6_roundtrips_exhaustively_on_small_orders() {
    for n in 1..=6 {
        for g in all_labeled_graphs(n) {
            assert_eq!(from_graph6(&to_graph6(&g)).expect("own output"), g);
        }
    }
    let tiers = harness::enumerate_up_to(7).expect("order within the guard");
    for tier in &tiers {
        for g in &tier.graphs {
            assert_eq!(from_graph6(&to_graph6(g)).expect("own output"), *g);
        }
    }
}

#[test]
fn complement_involution_exhaustive_to_6() {
    for n in 1..=6 {
        for g in all_labeled_graphs(n) {
            assert_eq!(g.complement().complement(), g);
        }
    }
}

#[test]
#[ignore = "slow: full isomorphism-class enumeration at n = 9"]
fn enumeration_counts_match_published_sequence_to_9() {
    let tiers = harness::enumerate_up_to(9).expect("order within the guard");
    let counts: Vec<usize> = tiers.iter().map(|t| t.graphs.len()).collect();
    assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044, 12346, 274668]);
}

#[test]
#[ignore = "slow: structural coloring of every class member at n = 9"]
fn palette_bound_exhaustive_to_9() {
    let tiers = harness::enumerate_class_up_to(GraphClass::ForkOddParachuteFree, 9)
        .expect("order within the guard");
    for tier in &tiers {
        for g in &tier.graphs {
            let trace = coloring::color_structurally(g).expect("class member");
            let (omega, _) = perfection::clique_number(g);
            assert!(
                trace.coloring.palette <= coloring::binom_bound(omega),
                "palette {} over bound at {}",
                trace.coloring.palette,
                to_graph6(g)
            );
            assert!(coloring::verify_coloring(g, &trace.coloring).expect("matching size"));
        }
    }
}
