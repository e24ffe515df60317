use std::collections::BTreeMap;

use lossy_cvc::approx::{is_minimal_cvc, minimalize, reconnect, savage_2approx};
use lossy_cvc::brute;
use lossy_cvc::classes::chordal::{build_clique_tree, recognize_chordal};
use lossy_cvc::classes::treedec::TreeDecomposition;
use lossy_cvc::classes::{exact_treewidth, min_fill_decomposition};
use lossy_cvc::exact::tw_dp::cvc_treewidth_dp_limited;
use lossy_cvc::exact::{cvc_oracle, cvc_treewidth_dp, ApexProblem};
use lossy_cvc::io::{read_edge_list, write_edge_list};
use lossy_cvc::{Graph, VertexId, VertexSet};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for a in 1..=n as u64 {
        for b in a + 1..=n as u64 {
            if bits[i] {
                edges.push((VertexId(a), VertexId(b)));
            }
            i += 1;
        }
    }
    Graph::from_parts((1..=n as u64).map(VertexId), edges).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Connected graphs: a random spanning tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec(prop::bool::weighted(0.25), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let g = graph_from_bits(n, &bits);
                let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
                for (i, p) in parents.iter().enumerate() {
                    let v = i as u64 + 2;
                    let u = p.index(v as usize - 1) as u64 + 1;
                    if !g.has_edge(VertexId(u), VertexId(v)) {
                        edges.push((VertexId(u), VertexId(v)));
                    }
                }
                Graph::from_parts((1..=n as u64).map(VertexId), edges).unwrap()
            })
    })
}

fn subset(g: &Graph, mask: u32) -> VertexSet {
    g.vertices().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect()
}

fn opt(g: &Graph) -> usize {
    cvc_oracle(g, &VertexSet::new(), &VertexSet::new()).unwrap().size
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn identification_neighbourhood(g in any_graph(9), mask in 1u32..512) {
        let x = subset(&g, mask);
        prop_assume!(!x.is_empty());
        let (h, xhat) = g.identify(&x).unwrap();
        prop_assert!(!g.contains(xhat));
        let want: VertexSet = g.open_neighborhood(&x);
        prop_assert_eq!(h.neighbors(xhat), &want);
        prop_assert_eq!(h.n(), g.n() - x.len() + 1);
        for (u, v) in g.edges().filter(|(u, v)| !x.contains(u) && !x.contains(v)) {
            prop_assert!(h.has_edge(u, v));
        }
    }

    #[test]
    fn components_partition(g in any_graph(10)) {
        let comps = g.connected_components();
        let mut seen = VertexSet::new();
        for c in &comps {
            prop_assert!(g.induces_connected(c));
            prop_assert!(seen.is_disjoint(c));
            seen.extend(c.iter().copied());
        }
        prop_assert_eq!(seen, g.vertex_set());
        let owner: BTreeMap<VertexId, usize> =
            comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
        for (u, v) in g.edges() {
            prop_assert_eq!(owner[&u], owner[&v]);
        }
        let firsts: Vec<VertexId> = comps.iter().map(|c| *c.iter().next().unwrap()).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        prop_assert_eq!(firsts, sorted);
    }

    #[test]
    fn decomposition_program_matches_oracle(g in connected_graph(11)) {
        let none = VertexSet::new();
        let want = cvc_oracle(&g, &none, &none).unwrap();
        for td in [min_fill_decomposition(&g), exact_treewidth(&g).unwrap().1, TreeDecomposition::trivial(&g)] {
            let got = cvc_treewidth_dp(&g, &td.to_nice(), &none, &none).unwrap();
            prop_assert_eq!(got.size, want.size);
            prop_assert!(g.is_connected_vertex_cover(&got.cover));
        }
    }

    #[test]
    fn constrained_program_matches_oracle(g in connected_graph(10), req in 0u32..1024, forb in 0u32..1024) {
        let (r, f) = (subset(&g, req & !forb), subset(&g, forb & !req));
        let want = cvc_oracle(&g, &r, &f).unwrap();
        let got = cvc_treewidth_dp(&g, &min_fill_decomposition(&g).to_nice(), &r, &f).unwrap();
        prop_assert_eq!(got.value(), want.value());
    }

    #[test]
    fn restricted_clique_tree_program_is_exact(g in connected_graph(10), mask in 0u32..1024, apex_in in any::<bool>()) {
        prop_assume!(recognize_chordal(&g).is_some());
        let p = ApexProblem::new(g.clone(), subset(&g, mask), apex_in).unwrap();
        let (h, apex) = p.with_apex();
        let ct = build_clique_tree(&g, &recognize_chordal(&g).unwrap()).unwrap();
        let ntd = ct.decomposition.with_vertex_everywhere(apex).to_nice();
        let a = VertexSet::from([apex]);
        let none = VertexSet::new();
        let (r, f) = if apex_in { (&a, &none) } else { (&none, &a) };
        let limited = cvc_treewidth_dp_limited(&h, &ntd, r, f, Some(2)).unwrap();
        let full = cvc_treewidth_dp(&h, &ntd, r, f).unwrap();
        prop_assert_eq!(limited.value(), full.value());
    }

    #[test]
    fn identification_never_raises_opt(g in connected_graph(10), mask in 1u32..1024) {
        let x = subset(&g, mask);
        prop_assume!(!x.is_empty());
        let (h, _) = g.identify(&x).unwrap();
        prop_assert!(opt(&h) <= opt(&g));
    }

    #[test]
    fn savage_and_minimalize(g in connected_graph(11)) {
        let l = savage_2approx(&g).unwrap().cover;
        prop_assert!(g.is_connected_vertex_cover(&l));
        prop_assert!(l.len() <= 2 * opt(&g));
        let m = minimalize(&g, &l).unwrap();
        prop_assert!(is_minimal_cvc(&g, &m));
        prop_assert!(m.is_subset(&l));
    }

    #[test]
    fn reconnect_yields_cvc(g in connected_graph(10), mask in 0u32..1024) {
        let x = subset(&g, mask);
        prop_assume!(g.is_vertex_cover(&x) && !x.is_empty());
        let (y, added) = reconnect(&g, &x).unwrap();
        prop_assert!(g.is_connected_vertex_cover(&y));
        prop_assert!(x.is_subset(&y));
        prop_assert_eq!(y.len(), x.len() + added);
        prop_assert!(added < x.len());
    }

    #[test]
    fn edge_list_round_trip(g in any_graph(10)) {
        let text = write_edge_list(&g, &Default::default());
        let back = read_edge_list(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(write_edge_list(&back.graph, &back.meta), text);
    }

    #[test]
    fn minimal_covers_are_minimal(g in connected_graph(9)) {
        for m in brute::minimal_connected_vertex_covers(&g) {
            prop_assert!(is_minimal_cvc(&g, &m));
        }
    }
}
