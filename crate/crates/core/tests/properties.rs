mod common;

use proptest::prelude::*;

use graphsearch::generators::{generate, Family, GeneratorSpec};
use graphsearch::oracle::{CorrectPolicy, OracleState, SimOracle};
use graphsearch::solver::{OptTable, QueryModel};
use graphsearch::{
    almost_undirected_search, dijkstra_all_pairs, distance_informed_search, median, reach, reach_dist,
    weighted_median, CandidateSet, Graph, WeightVector,
};

use common::{floyd_warshall, in_reach};

/// A connected undirected graph: random spanning tree plus extra edges.
fn undirected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extra = prop::collection::vec((0..n, 0..n, 1..=9u64), 0..2 * n);
        let weights = prop::collection::vec(1..=9u64, n - 1);
        (Just(n), parents, extra, weights).prop_map(|(n, parents, extra, weights)| {
            let mut edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1, weights[i])).collect();
            for (u, v, w) in extra {
                if u != v && !edges.iter().any(|&(a, b, _)| (a, b) == (u, v) || (a, b) == (v, u)) {
                    edges.push((u, v, w));
                }
            }
            Graph::undirected(n, edges).unwrap()
        })
    })
}

fn directed_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, any::<u64>(), 1..=6u64).prop_map(|(n, seed, wmax)| {
        let m = (3 * n).min(n * (n - 1));
        generate(&GeneratorSpec::new(Family::RandomStronglyConnected { n, m }).seed(seed).wmax(wmax)).unwrap()
    })
}

fn subset(n: usize, bits: &[bool]) -> CandidateSet {
    let mut s = CandidateSet::from_vertices(n, (0..n).filter(|&v| bits[v % bits.len()]));
    if s.is_empty() {
        s.insert(0);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distances_match_floyd_warshall(g in undirected_graph(14)) {
        let d = dijkstra_all_pairs(&g);
        let fw = floyd_warshall(&g);
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), fw[u][v]);
                for w in 0..n {
                    prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                }
            }
        }
    }

    #[test]
    fn reach_sets_cover_and_match_definition(g in undirected_graph(14)) {
        let d = dijkstra_all_pairs(&g);
        let fw = floyd_warshall(&g);
        let n = g.vertex_count();
        for u in 0..n {
            let mut covered = CandidateSet::singleton(n, u);
            for &id in g.out_arcs(u) {
                let r = reach(&g, &d, u, id).unwrap();
                for w in 0..n {
                    prop_assert_eq!(r.contains(w), in_reach(&fw, &g, id, w));
                    for ell in [fw[u][w], fw[u][w] + 1] {
                        let rd = reach_dist(&g, &d, u, id, ell).unwrap();
                        prop_assert!(rd.is_subset(&r));
                        prop_assert_eq!(rd.contains(w), r.contains(w) && fw[u][w] == ell);
                    }
                }
                covered.union_with(&r);
            }
            prop_assert_eq!(covered.len(), n);
        }
    }

    #[test]
    fn median_halves_any_candidate_set(g in undirected_graph(16), bits in prop::collection::vec(any::<bool>(), 1..16)) {
        let d = dijkstra_all_pairs(&g);
        let fw = floyd_warshall(&g);
        let n = g.vertex_count();
        let s = subset(n, &bits);
        let m = median(&d, &s).unwrap();
        let phi = |x: usize| s.iter().map(|w| fw[x][w]).sum::<u64>();
        let best = (0..n).map(phi).min().unwrap();
        prop_assert_eq!(m, (0..n).find(|&x| phi(x) == best).unwrap());
        for &id in g.out_arcs(m) {
            let kept = s.iter().filter(|&w| in_reach(&fw, &g, id, w)).count();
            prop_assert!(2 * kept <= s.len());
        }
    }

    #[test]
    fn weighted_median_scale_invariant(
        g in undirected_graph(12),
        raw in prop::collection::vec(0.0f64..10.0, 12),
        exp in -20i32..20,
    ) {
        let n = g.vertex_count();
        let d = dijkstra_all_pairs(&g);
        let mut w: Vec<f64> = raw[..n].to_vec();
        w[0] += 0.5;
        let scaled: Vec<f64> = w.iter().map(|x| x * 2f64.powi(exp)).collect();
        let a = weighted_median(&d, &WeightVector::from_raw(w).unwrap()).unwrap();
        let b = weighted_median(&d, &WeightVector::from_raw(scaled).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn directed_queries_shrink_by_cycle_constant(g in directed_graph(12), target in 0usize..12) {
        let n = g.vertex_count();
        let t = target % n;
        let fw = floyd_warshall(&g);
        // c = max over arcs of (w(e) + d(v, u)) / w(e), kept as a fraction a/b
        let (a, b) = g.arcs().iter().map(|e| (e.weight + fw[e.to][e.from], e.weight)).fold((1, 1), |(a, b), (x, y)| {
            if x * b > a * y { (x, y) } else { (a, b) }
        });
        let d = dijkstra_all_pairs(&g);
        let mut o = SimOracle::truthful(&g, &d, OracleState::truthful(t, CorrectPolicy::AdversarialMaxSurvivor, 0));
        let out = almost_undirected_search(&g, &d, &mut o).unwrap();
        prop_assert_eq!(out.returned, Some(t));
        for e in &out.transcript {
            prop_assert!((e.candidates_after as u64) * a <= (a - b) * e.candidates_before as u64);
        }
    }

    #[test]
    fn distance_answers_halve_on_digraphs(g in directed_graph(16), target in 0usize..16) {
        let n = g.vertex_count();
        let t = target % n;
        let d = dijkstra_all_pairs(&g);
        let mut o = SimOracle::distance_informed(&g, &d, OracleState::truthful(t, CorrectPolicy::AdversarialMaxSurvivor, 0));
        let out = distance_informed_search(&g, &d, &mut o).unwrap();
        prop_assert_eq!(out.returned, Some(t));
        for e in &out.transcript {
            prop_assert!(2 * e.candidates_after <= e.candidates_before);
        }
    }

    #[test]
    fn text_format_round_trips(g in undirected_graph(20)) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn opt_is_monotone_in_the_candidate_set(g in undirected_graph(9), bits in prop::collection::vec(any::<bool>(), 1..9), drop in 0usize..9) {
        let n = g.vertex_count();
        let d = dijkstra_all_pairs(&g);
        let mut table = OptTable::new(&g, &d, QueryModel::VertexQuery).unwrap();
        let s = subset(n, &bits);
        let mut smaller = s.clone();
        if s.len() > 1 {
            smaller.remove(s.to_vec()[drop % s.len()]);
        }
        let full = table.root();
        let a = table.opt(&s);
        let b = table.opt(&smaller);
        prop_assert!(b <= a && a <= full);
    }
}
