//! Elimination-order decompositions: the min-fill heuristic and an exact
//! search for small graphs.

use std::collections::HashMap;

use crate::classes::treedec::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Hard size guard for [`treewidth_small`] and [`exact_treewidth`].
pub const TREEWIDTH_GUARD: usize = 25;

/// Builds the decomposition induced by eliminating vertices in `order`:
/// bag `i` is `v_i` plus its later neighbours in the filled graph, hung
/// below the bag of the earliest such neighbour.
pub fn decomposition_from_order(g: &Graph, order: &[VertexId]) -> TreeDecomposition {
    assert_eq!(order.len(), g.n(), "elimination order must list every vertex once");
    if order.is_empty() {
        return TreeDecomposition { bags: vec![VertexSet::new()], edges: vec![] };
    }
    let pos: HashMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<VertexSet> = order.iter().map(|&v| g.neighbors(v).clone()).collect();
    let mut bags = Vec::with_capacity(order.len());
    let mut parent = vec![None; order.len()];
    for (i, &v) in order.iter().enumerate() {
        let later: VertexSet = adj[i].iter().copied().filter(|u| pos[u] > i).collect();
        for &a in &later {
            for &b in &later {
                if a != b {
                    adj[pos[&a]].insert(b);
                }
            }
        }
        parent[i] = later.iter().map(|u| pos[u]).min();
        let mut bag = later;
        bag.insert(v);
        bags.push(bag);
    }
    let mut edges = Vec::new();
    let mut last_root: Option<usize> = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) => edges.push((i, *p)),
            None => {
                if let Some(r) = last_root {
                    edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, edges }
}

/// Greedy min-fill elimination order; ties go to the smaller degree, then
/// the smaller label.
pub fn min_fill_order(g: &Graph) -> Vec<VertexId> {
    let mut adj: HashMap<VertexId, VertexSet> =
        g.vertices().map(|v| (v, g.neighbors(v).clone())).collect();
    let mut order = Vec::with_capacity(g.n());
    while !adj.is_empty() {
        let fill = |v: &VertexId| {
            let ns: Vec<_> = adj[v].iter().collect();
            let mut missing = 0;
            for (i, a) in ns.iter().enumerate() {
                for b in &ns[i + 1..] {
                    if !adj[a].contains(b) {
                        missing += 1;
                    }
                }
            }
            missing
        };
        let v = *adj
            .keys()
            .min_by_key(|v| (fill(v), adj[v].len(), **v))
            .unwrap();
        let ns = adj.remove(&v).unwrap();
        for &a in &ns {
            let entry = adj.get_mut(&a).unwrap();
            entry.remove(&v);
            entry.extend(ns.iter().copied().filter(|&b| b != a));
        }
        order.push(v);
    }
    order
}

pub fn min_fill_decomposition(g: &Graph) -> TreeDecomposition {
    decomposition_from_order(g, &min_fill_order(g))
}

struct Search {
    n: usize,
    adj: Vec<u32>,
}

impl Search {
    /// Vertices outside `eliminated ∪ {v}` reachable from `v` through
    /// eliminated vertices: the neighbourhood `v` has when it is eliminated
    /// after exactly `eliminated`.
    fn q(&self, eliminated: u32, v: usize) -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = self.adj[x] & !seen;
            seen |= nb;
            out |= nb & !eliminated;
            frontier |= nb & eliminated;
        }
        out
    }

    /// An elimination order of width at most `cap`, if one exists.
    fn order_within(&self, cap: usize) -> Option<Vec<usize>> {
        let full: u32 = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        // eliminated set -> (previous set, vertex eliminated to reach it)
        let mut parent: HashMap<u32, (u32, usize)> = HashMap::new();
        let mut stack = vec![0u32];
        parent.insert(0, (0, usize::MAX));
        while let Some(s) = stack.pop() {
            let left = full & !s;
            if left.count_ones() as usize <= cap + 1 {
                let mut order = Vec::with_capacity(self.n);
                let mut cur = s;
                while cur != 0 {
                    let (prev, v) = parent[&cur];
                    order.push(v);
                    cur = prev;
                }
                order.reverse();
                order.extend((0..self.n).filter(|&v| left & (1 << v) != 0));
                return Some(order);
            }
            for v in (0..self.n).rev().filter(|&v| left & (1 << v) != 0) {
                let next = s | 1 << v;
                if parent.contains_key(&next) {
                    continue;
                }
                if self.q(s, v).count_ones() as usize <= cap {
                    parent.insert(next, (s, v));
                    stack.push(next);
                }
            }
        }
        None
    }
}

fn search_for(g: &Graph) -> Result<(Search, Vec<VertexId>)> {
    if g.n() > TREEWIDTH_GUARD {
        return Err(Error::GuardExceeded { what: "exact treewidth", n: g.n(), limit: TREEWIDTH_GUARD });
    }
    let idx = g.indexed();
    let adj = idx.adj.iter().map(|ns| ns.iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    Ok((Search { n: idx.n(), adj }, idx.labels))
}

/// A minimum-width decomposition if the treewidth is at most `cap`.
pub fn treewidth_small(g: &Graph, cap: usize) -> Result<Option<TreeDecomposition>> {
    let (search, labels) = search_for(g)?;
    let mut best = None;
    // Lower the cap until it fails; the last success is optimal.
    let mut c = cap;
    while let Some(order) = search.order_within(c) {
        best = Some(order);
        if c == 0 {
            break;
        }
        c -= 1;
    }
    Ok(best.map(|order| {
        let order: Vec<VertexId> = order.into_iter().map(|i| labels[i]).collect();
        decomposition_from_order(g, &order)
    }))
}

/// Treewidth and a decomposition of that width.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let upper = min_fill_decomposition(g).width();
    let td = treewidth_small(g, upper)?.expect("min-fill width is achievable");
    Ok((td.width(), td))
}

/// Whether `tw(g) <= eta`, with a witness: min-fill first, exact search when
/// the heuristic is inconclusive and the graph is within the guard.
pub fn decomposition_within(g: &Graph, eta: usize) -> Result<Option<TreeDecomposition>> {
    let td = min_fill_decomposition(g);
    if td.width() <= eta {
        return Ok(Some(td));
    }
    treewidth_small(g, eta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u64) -> Graph {
        Graph::from_edges((1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    fn clique(n: u64) -> Graph {
        Graph::from_edges((1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn closed_forms() {
        let tree = Graph::from_edges([(1, 2), (1, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert_eq!(exact_treewidth(&tree).unwrap().0, 1);
        for n in 3..9 {
            assert_eq!(exact_treewidth(&cycle(n)).unwrap().0, 2);
        }
        for n in 1..7 {
            assert_eq!(exact_treewidth(&clique(n)).unwrap().0, n as usize - 1);
        }
    }

    #[test]
    fn c5_has_width_two() {
        let c5 = cycle(5);
        assert_eq!(crate::brute::treewidth_by_orders(&c5), 2);
        let td = treewidth_small(&c5, 4).unwrap().unwrap();
        assert_eq!(td.width(), 2);
        assert!(td.is_valid(&c5));
    }

    #[test]
    fn k5_exceeds_cap_three() {
        assert!(treewidth_small(&clique(5), 3).unwrap().is_none());
    }

    #[test]
    fn guard_is_enforced() {
        let big = Graph::from_edges((1..30).map(|i| (i, i + 1))).unwrap();
        assert!(matches!(treewidth_small(&big, 1), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn disconnected_graph_gets_one_tree() {
        let g = Graph::from_edges([(1, 2), (3, 4), (5, 6), (6, 7), (7, 5)]).unwrap();
        let td = min_fill_decomposition(&g);
        assert!(td.is_valid(&g));
        assert_eq!(td.width(), 2);
    }
}
