//! Property suites over random small graphs.

use proptest::prelude::*;

use ucir::bounds::{classify_a, spectral_lambda};
use ucir::experiments::corpus::trial_rng;
use ucir::experiments::random::random_regular_graph;
use ucir::graph::io::{emit_graph6, parse_graph6};
use ucir::graph::{disjoint_union, generate, neighborhood, tensor_power, tensor_product};
use ucir::independence::{expansion_max, independence_ratio, max_independent_set};
use ucir::powers::power_ratio_scan;
use ucir::ratio;
use ucir::{Family, Graph, Limits, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
        })
    })
}

fn subset_strategy(n: usize) -> impl Strategy<Value = VertexSet> {
    proptest::collection::vec(any::<bool>(), n)
        .prop_map(move |bits| VertexSet::from_indices(n, (0..n).filter(|&v| bits[v])))
}

fn lim() -> Limits {
    Limits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_commutes_up_to_transposition(g in graph_strategy(5), h in graph_strategy(5)) {
        let gh = tensor_product(&g, &h, 1000).unwrap();
        let hg = tensor_product(&h, &g, 1000).unwrap();
        let (n, m) = (g.n(), h.n());
        for (a, b) in gh.edges() {
            let swap = |x: usize| (x % m) * n + x / m;
            prop_assert!(hg.has_edge(swap(a), swap(b)));
        }
        prop_assert_eq!(gh.edge_count(), hg.edge_count());
    }

    #[test]
    fn product_associates(g in graph_strategy(3), h in graph_strategy(3), k in graph_strategy(3)) {
        let left = tensor_product(&tensor_product(&g, &h, 1000).unwrap(), &k, 1000).unwrap();
        let right = tensor_product(&g, &tensor_product(&h, &k, 1000).unwrap(), 1000).unwrap();
        prop_assert_eq!(left.edges(), right.edges());
        prop_assert_eq!(left.labels(), right.labels());
    }

    #[test]
    fn product_degrees_multiply(g in graph_strategy(6), h in graph_strategy(6)) {
        let p = tensor_product(&g, &h, 1000).unwrap();
        for u in 0..g.n() {
            for v in 0..h.n() {
                prop_assert_eq!(p.degree(u * h.n() + v), g.degree(u) * h.degree(v));
            }
        }
        p.check_invariants().unwrap();
    }

    #[test]
    fn union_adds_edges_and_components(g in graph_strategy(6), h in graph_strategy(6)) {
        let u = disjoint_union(&g, &h);
        prop_assert_eq!(u.edge_count(), g.edge_count() + h.edge_count());
        prop_assert_eq!(u.components().len(), g.components().len() + h.components().len());
    }

    #[test]
    fn neighborhood_is_monotone(g in graph_strategy(7), seed in any::<u64>()) {
        let n = g.n();
        let s = VertexSet::from_indices(n, (0..n).filter(|v| seed >> v & 1 == 1));
        let t = s.union(&VertexSet::from_indices(n, (0..n).filter(|v| seed >> (v + 8) & 1 == 1)));
        prop_assert!(neighborhood(&g, &s).unwrap().is_subset(&neighborhood(&g, &t).unwrap()));
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(9)) {
        let s = emit_graph6(&g);
        let back = parse_graph6(&s).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(emit_graph6(&back), s);
    }

    #[test]
    fn product_ratio_dominates_factors(g in graph_strategy(5), h in graph_strategy(5)) {
        let p = tensor_product(&g, &h, 1000).unwrap();
        let ip = independence_ratio(&p, &lim()).unwrap();
        let floor = independence_ratio(&g, &lim()).unwrap().max(independence_ratio(&h, &lim()).unwrap());
        prop_assert!(ip >= floor);
    }

    #[test]
    fn squaring_never_lowers_expansion(g in graph_strategy(5)) {
        let a = expansion_max(&g, &lim()).unwrap();
        let sq = tensor_power(&g, 2, 1000).unwrap();
        let a2 = expansion_max(&sq, &lim()).unwrap();
        a2.verify(&sq).unwrap();
        prop_assert!(a2.ratio >= a.ratio);
    }

    #[test]
    fn classify_interval_holds_power_ratios(g in graph_strategy(5)) {
        let c = classify_a(&g, &lim()).unwrap();
        c.verify(&g).unwrap();
        prop_assert!(c.lower <= c.upper);
        let scan = power_ratio_scan(&g, 2, &lim()).unwrap();
        for e in scan.entries {
            prop_assert!(e.ratio <= c.upper, "i(G^{}) = {} above upper {}", e.power, e.ratio, c.upper);
        }
        prop_assert!(independence_ratio(&g, &lim()).unwrap() <= c.upper);
    }

    #[test]
    fn expansion_witness_recomputes(g in graph_strategy(7), pick in subset_strategy(7)) {
        let w = expansion_max(&g, &lim()).unwrap();
        prop_assert!(g.is_independent(&w.independent_set));
        prop_assert_eq!(&w.boundary, &neighborhood(&g, &w.independent_set).unwrap());
        prop_assert!(!w.boundary.intersects(&w.independent_set));
        prop_assert_eq!(
            w.ratio.clone(),
            ratio::ratio(w.independent_set.len(), w.independent_set.len() + w.boundary.len())
        );
        // No independent subset of the first n vertices does better.
        let s = VertexSet::from_indices(g.n(), pick.iter().filter(|&v| v < g.n()));
        if !s.is_empty() && g.is_independent(&s) {
            let nb = neighborhood(&g, &s).unwrap().len();
            prop_assert!(ratio::ratio(s.len(), s.len() + nb) <= w.ratio);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regular_graphs_expand(n in 4usize..=12, d in 1usize..=4, stream in any::<u64>()) {
        prop_assume!(d < n && n * d % 2 == 0);
        let g = random_regular_graph(n, d, &mut trial_rng(99, stream), 100_000).unwrap();
        let a = expansion_max(&g, &lim()).unwrap().ratio;
        prop_assert!(a <= ratio::half());
        for comp in g.components() {
            let part = g.induced(&comp);
            let a_part = expansion_max(&part, &lim()).unwrap().ratio;
            if part.bipartition().is_some() {
                prop_assert_eq!(a_part, ratio::half());
            } else {
                prop_assert!(a_part < ratio::half());
            }
        }
        let i = independence_ratio(&g, &lim()).unwrap();
        let lambda = spectral_lambda(&g, &lim()).unwrap();
        prop_assert!(lambda.value >= ratio::to_f64(&i) - 1e-9);
        prop_assert!((lambda.lambda_max - d as f64).abs() <= lambda.tolerance);
    }
}

#[test]
fn kneser_ratios_match_k_over_n() {
    for n in 2..=8 {
        for k in 1..=n / 2 {
            let g = generate(&Family::Kneser(n, k)).unwrap();
            if g.n() > lim().bnb_vertices {
                continue;
            }
            let i = ratio::ratio(max_independent_set(&g, &lim()).unwrap().size, g.n());
            assert_eq!(i, ratio::ratio(k, n), "KN({n},{k})");
        }
    }
}

#[test]
fn routes_agree_on_single_transitive_part() {
    for f in [Family::Cycle(5), Family::Petersen, Family::Complete(4), Family::Cycle(6)] {
        let g = generate(&f).unwrap();
        let tagged = classify_a(&g, &lim()).unwrap();
        let union = disjoint_union(&g, &g);
        let doubled = classify_a(&union, &lim()).unwrap();
        assert_eq!(tagged.lower, doubled.lower, "{f}");
        assert!(tagged.exact && doubled.exact);
    }
}
