//! Property suites over randomly generated graphs.

use proptest::prelude::*;

use antiforce::{
    bounds, enumerate_nice, enumerate_perfect_matchings, find_alternating_cycle, graph::EdgeSet,
    is_antiforcing_set, is_nice, min_antiforcing, minimalize_antiforcing_set,
    omega_antiforcing_set, Edge, Graph, PerfectMatching, VertexSet,
};
use num_rational::Rational64;

/// Random graph on an even vertex count with a built-in perfect matching
/// (2i, 2i+1), plus a subset of the remaining pairs.
fn arb_graph_with_pm(max_half: usize) -> impl Strategy<Value = (Graph, PerfectMatching)> {
    (1..=max_half).prop_flat_map(|half| {
        let v = 2 * half;
        let extra_pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| ((a + 1)..v).map(move |b| (a, b)))
            .filter(|&(a, b)| !(a % 2 == 0 && b == a + 1))
            .collect();
        proptest::collection::vec(any::<bool>(), extra_pairs.len()).prop_map(move |bits| {
            let mut pairs: Vec<(usize, usize)> = (0..half).map(|i| (2 * i, 2 * i + 1)).collect();
            for (take, &p) in bits.iter().zip(&extra_pairs) {
                if *take {
                    pairs.push(p);
                }
            }
            let g = Graph::from_edge_list(v, &pairs).unwrap();
            let base: EdgeSet = (0..half).map(|i| Edge::new(2 * i, 2 * i + 1)).collect();
            let m = PerfectMatching::from_edges(&g, &base).unwrap();
            (g, m)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trip((g, _) in arb_graph_with_pm(5)) {
        let parsed = Graph::parse_text(&g.to_text()).unwrap();
        prop_assert_eq!(parsed, g);
    }

    #[test]
    fn distances_symmetric_zero_diagonal_triangle((g, _) in arb_graph_with_pm(5)) {
        let d = g.all_pairs_distances();
        for u in g.vertices() {
            prop_assert_eq!(d.get(u, u), 0);
            for v in g.vertices() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                for w in g.vertices() {
                    let (a, b, c) = (d.get(u, w), d.get(u, v), d.get(v, w));
                    if b != u32::MAX && c != u32::MAX {
                        prop_assert!(a <= b + c);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_on_full_vertex_set_is_identity((g, _) in arb_graph_with_pm(5)) {
        let (h, ids) = g.induced_subgraph(&VertexSet::full(g.vertex_count()));
        prop_assert_eq!(h, g.clone());
        prop_assert_eq!(ids, g.vertices().collect::<Vec<_>>());
    }

    #[test]
    fn bipartition_has_no_intra_part_edges((g, _) in arb_graph_with_pm(5)) {
        if let Some((x, y)) = g.bipartition() {
            prop_assert!(x.is_disjoint(&y));
            for e in g.edges() {
                prop_assert_ne!(x.contains(e.u()), x.contains(e.v()));
            }
        }
    }

    #[test]
    fn alternating_cycle_found_iff_second_pm_exists((g, m) in arb_graph_with_pm(4)) {
        let found = find_alternating_cycle(&g, &m, &EdgeSet::new()).unwrap();
        let pm_count = antiforce::matchings::count_perfect_matchings_up_to(&g, 2);
        prop_assert_eq!(found.is_some(), pm_count > 1);
        if let Some(c) = found {
            prop_assert!(c.verify(&g, &m, &EdgeSet::new()));
        }
    }

    #[test]
    fn sandwich_bounds_on_random_graphs((g, m) in arb_graph_with_pm(4)) {
        let b = bounds(&g);
        let r = min_antiforcing(&g, &m).unwrap();
        prop_assert!(r.lower_bound_c4 <= r.value);
        prop_assert!(Rational64::from_integer(r.value as i64) <= b.quarter);
        if g.is_connected() {
            prop_assert!(r.value <= b.cyclomatic);
        }
        prop_assert_eq!(r.witness.len(), r.value);
        prop_assert!(is_antiforcing_set(&g, &m, &r.witness).unwrap());
    }

    #[test]
    fn omega_set_always_antiforces((g, m) in arb_graph_with_pm(4), flip in any::<u64>()) {
        // arbitrary transversal: pick the lower or upper endpoint per edge
        let mut a = VertexSet::new(g.vertex_count());
        for (i, e) in m.edges().iter().enumerate() {
            if flip >> (i % 64) & 1 == 0 {
                a.insert(e.u());
            } else {
                a.insert(e.v());
            }
        }
        // arbitrary-ish bijection: reverse ranks
        let omega: Vec<usize> = (1..=m.size()).rev().collect();
        let s = omega_antiforcing_set(&g, &m, &a, &omega).unwrap();
        prop_assert!(is_antiforcing_set(&g, &m, &s).unwrap());
    }

    #[test]
    fn minimalized_sets_are_minimal((g, m) in arb_graph_with_pm(3)) {
        let all: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| !m.contains_edge(**e))
            .copied()
            .collect();
        let minimal = minimalize_antiforcing_set(&g, &m, &all).unwrap();
        prop_assert!(is_antiforcing_set(&g, &m, &minimal).unwrap());
        for e in &minimal {
            let mut smaller = minimal.clone();
            smaller.remove(e);
            prop_assert!(!is_antiforcing_set(&g, &m, &smaller).unwrap());
        }
    }

    #[test]
    fn nice_enumeration_matches_filter((g, _) in arb_graph_with_pm(4)) {
        let by_involutions: Vec<PerfectMatching> = enumerate_nice(&g).iter().cloned().collect();
        let by_filter: Vec<PerfectMatching> = enumerate_perfect_matchings(&g)
            .into_iter()
            .filter(|m| is_nice(&g, m).unwrap())
            .collect();
        prop_assert_eq!(by_involutions, by_filter);
    }

    #[test]
    fn nice_matchings_attain_the_quarter_bound((g, _) in arb_graph_with_pm(4)) {
        let b = bounds(&g);
        for m in enumerate_nice(&g).iter() {
            let r = min_antiforcing(&g, m).unwrap();
            prop_assert_eq!(Rational64::from_integer(r.value as i64), b.quarter);
        }
    }
}
