use std::collections::BTreeSet;

use pqcluster::cluster::{is_cluster, verify_partition};
use pqcluster::families::{perfect_colorings, SplitterFamily};
use pqcluster::io::{parse_graph, serialize_graph};
use pqcluster::separators::{enumerate_important_separators, enumerate_important_sets};
use pqcluster::solver_p::{enumerate_vminimal_small, is_v_minimal};
use pqcluster::solver_q::{brute_cluster, cluster_fpt_q, ClusterOutcome, QConfig, QMode};
use pqcluster::uncross::uncross_traced;
use pqcluster::{Bounds, Measure, MultiGraph, VertexSet};
use proptest::prelude::*;

fn multigraph(max_n: usize, max_mult: u32) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(0..=max_mult, pairs).prop_map(move |mults| {
            let mut triples = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mults[i] > 0 {
                        triples.push((u, v, mults[i]));
                    }
                    i += 1;
                }
            }
            MultiGraph::from_multiplicities(n, &triples).unwrap()
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    multigraph(max_n, 1)
}

/// A graph with two subsets of its vertices.
fn graph_and_sets(
    max_n: usize,
    max_mult: u32,
) -> impl Strategy<Value = (MultiGraph, VertexSet, VertexSet)> {
    multigraph(max_n, max_mult).prop_flat_map(|g| {
        let n = g.n();
        let sub = proptest::collection::vec(any::<bool>(), n).prop_map(|bits| {
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i)
                .collect::<VertexSet>()
        });
        (Just(g), sub.clone(), sub)
    })
}

fn measure() -> impl Strategy<Value = Measure> {
    prop_oneof![
        Just(Measure::Size),
        Just(Measure::NonEdge),
        Just(Measure::NonDeg)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cut_function_is_symmetric_submodular_posimodular((g, x, y) in graph_and_sets(12, 3)) {
        let d = |s: &VertexSet| g.cut_size(s);
        let n = g.n();
        prop_assert_eq!(d(&x), d(&x.complement(n)));
        prop_assert!(d(&x) + d(&y) >= d(&x.intersection(&y)) + d(&x.union(&y)));
        prop_assert!(d(&x) + d(&y) >= d(&x.difference(&y)) + d(&y.difference(&x)));
        prop_assert_eq!(g.boundary(&x).unwrap().size, d(&x));
    }

    #[test]
    fn measures_are_monotone((g, x, y) in graph_and_sets(12, 1), mu in measure()) {
        let sub = x.intersection(&y);
        prop_assert!(mu.eval(&g, &sub).unwrap() <= mu.eval(&g, &x).unwrap());
        prop_assert!(Measure::NonDeg.eval(&g, &x).unwrap() <= Measure::NonEdge.eval(&g, &x).unwrap());
    }

    #[test]
    fn density_measures_reject_multigraphs(mu in measure()) {
        let g = MultiGraph::from_multiplicities(2, &[(0, 1, 2)]).unwrap();
        prop_assert_eq!(mu.eval(&g, &g.vertices()).is_ok(), mu == Measure::Size);
    }

    #[test]
    fn vertex_set_matches_btreeset(a in proptest::collection::btree_set(0usize..200, 0..40),
                                   b in proptest::collection::btree_set(0usize..200, 0..40)) {
        let x: VertexSet = a.iter().copied().collect();
        let y: VertexSet = b.iter().copied().collect();
        let to = |s: &VertexSet| s.iter().collect::<BTreeSet<_>>();
        prop_assert_eq!(to(&x.union(&y)), a.union(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(to(&x.intersection(&y)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(to(&x.difference(&y)), a.difference(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.intersection_len(&y), a.intersection(&b).count());
    }

    #[test]
    fn graph_text_round_trips(g in multigraph(10, 3)) {
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_graph(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn important_separators_are_bounded_and_sound(g in multigraph(8, 2), k in 0usize..=4, s in 0usize..8, t in 0usize..8) {
        let n = g.n();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let seps = enumerate_important_separators(&g, s, t, k).unwrap();
        prop_assert!(seps.len() <= 4usize.pow(k as u32));
        let weight: f64 = seps.iter().map(|x| 0.25f64.powi(x.cut.size as i32)).sum();
        prop_assert!(weight <= 1.0 + 1e-12);
        for sep in &seps {
            prop_assert!(sep.cut.size <= k);
            prop_assert!(sep.source_side.contains(s) && !sep.source_side.contains(t));
            prop_assert_eq!(&g.boundary(&sep.source_side).unwrap(), &sep.cut);
        }
    }

    #[test]
    fn uncrossing_yields_partition_inside_cover(g in simple_graph(9), mu in measure(), p in 1usize..=4, picks in proptest::collection::vec(any::<u64>(), 1..8)) {
        let n = g.n();
        let maxdeg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
        // Singletons are clusters, so any family of clusters completes to a cover.
        let b = Bounds::new(mu, p, maxdeg);
        let mut cover: Vec<VertexSet> = picks
            .iter()
            .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).collect::<VertexSet>())
            .filter(|c| !c.is_empty() && is_cluster(&g, b, c).unwrap())
            .collect();
        cover.extend((0..n).map(VertexSet::singleton));
        let (sol, trace) = uncross_traced(&g, b, &cover).unwrap();
        prop_assert!(verify_partition(&g, b, &sol.clusters).is_valid());
        prop_assert!(sol.clusters.iter().all(|c| cover.iter().any(|d| c.is_subset(d))));
        let mut prev = trace.initial_crossing_pairs;
        for &after in &trace.crossing_pairs_after_step {
            prop_assert!(after < prev);
            prev = after;
        }
        prop_assert!(trace.steps() <= cover.len() * (cover.len() - 1) / 2);
    }

    #[test]
    fn important_sets_are_connected_and_avoid_v(g in multigraph(8, 2), v in 0usize..8, q in 0usize..=4) {
        let v = v % g.n();
        for x in enumerate_important_sets(&g, v, q).unwrap() {
            prop_assert!(!x.contains(v));
            prop_assert!(g.is_connected_set(&x));
            prop_assert!(g.cut_size(&x) <= q);
        }
    }

    #[test]
    fn catalog_members_are_v_minimal(g in simple_graph(9), v in 0usize..9, max in 0usize..=4) {
        let v = v % g.n();
        let catalog = enumerate_vminimal_small(&g, v, max).unwrap();
        for c in catalog.sets() {
            prop_assert!(c.len() <= max && !c.contains(v));
            prop_assert!(is_v_minimal(&g, v, c).unwrap());
        }
    }

    #[test]
    fn derandomized_q_solver_agrees_with_brute_force(g in multigraph(8, 2), v in 0usize..8, q in 0usize..=3, p in 1usize..=8) {
        let v = v % g.n();
        let b = Bounds::new(Measure::Size, p, q);
        let want = brute_cluster(&g, b, v, 1 << 40).unwrap();
        let cfg = QConfig { mode: QMode::DerandGrouped, ..QConfig::default() };
        match cluster_fpt_q(&g, b, v, &cfg).unwrap().outcome {
            ClusterOutcome::Found(c) => {
                prop_assert!(want.is_some());
                prop_assert!(c.contains(v) && is_cluster(&g, b, &c).unwrap());
            }
            ClusterOutcome::NotFound => prop_assert!(want.is_none()),
            ClusterOutcome::Exhausted => prop_assert!(false, "deterministic mode exhausted"),
        }
    }

    #[test]
    fn splitters_separate_every_small_set(universe in 1usize..60, k in 1usize..=4, seed in any::<u64>()) {
        let family = SplitterFamily::new(universe, k);
        let k = k.min(universe);
        let mut pool: Vec<usize> = (0..universe).collect();
        let mut s = seed;
        for i in (1..pool.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pool.swap(i, (s >> 33) as usize % (i + 1));
        }
        let subset = &pool[..k];
        let injective = family.functions().iter().any(|f| {
            subset.iter().map(|&x| f.apply(x)).collect::<BTreeSet<_>>().len() == k
        });
        prop_assert!(injective);
        let in_range = family.functions().iter().all(|f| subset.iter().all(|&x| f.apply(x) < family.range()));
        prop_assert!(in_range);
    }

    #[test]
    fn perfect_colorings_make_small_sets_rainbow(n in 1usize..14, k in 1usize..=4, pick in any::<u64>()) {
        let k = k.min(n);
        let colorings = perfect_colorings(n, k);
        let subset: Vec<usize> = (0..n).filter(|i| pick >> i & 1 == 1).take(k).collect();
        let rainbow = colorings
            .iter()
            .any(|c| subset.iter().map(|&x| c[x]).collect::<BTreeSet<_>>().len() == subset.len());
        prop_assert!(rainbow);
    }
}
