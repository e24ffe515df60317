//! Undirected simple graphs with stable vertex labels.
//!
//! A [`Graph`] is treated as a value: every operation that changes the
//! structure returns a new graph. Fresh labels (identified vertices,
//! pendants, super-vertices) come from a monotone counter that always sits
//! above every label the graph, or any graph it was derived from, has used.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_fresh: u64,
}

impl PartialEq for Graph {
    /// Labelled equality; the fresh-label counter is bookkeeping and does not
    /// take part.
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from a vertex list and an edge list, rejecting
    /// self-loops, duplicate edges and edges with undeclared endpoints.
    pub fn from_parts<I, E>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            if !g.insert_vertex(v) {
                return Err(Error::Invalid(format!("duplicate vertex {v}")));
            }
        }
        for (u, v) in edges {
            if u == v {
                return Err(Error::Invalid(format!("self-loop on vertex {u}")));
            }
            for w in [u, v] {
                if !g.contains(w) {
                    return Err(Error::UnknownVertex(w));
                }
            }
            if !g.insert_edge(u, v) {
                return Err(Error::Invalid(format!("duplicate edge {u} {v}")));
            }
        }
        Ok(g)
    }

    /// Convenience constructor: the vertex set is the set of edge endpoints.
    /// Duplicate edges are collapsed; self-loops are still rejected.
    pub fn from_edges<E>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = (u64, u64)>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            let (u, v) = (VertexId(u), VertexId(v));
            if u == v {
                return Err(Error::Invalid(format!("self-loop on vertex {u}")));
            }
            g.insert_vertex(u);
            g.insert_vertex(v);
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_vertex(&mut self, v: VertexId) -> bool {
        self.next_fresh = self.next_fresh.max(v.0 + 1);
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    pub(crate) fn insert_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(u != v && self.contains(u) && self.contains(v));
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        fresh
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
    }

    /// Reserves and returns a label that no vertex of this graph (or of the
    /// graphs it was derived from) has carried.
    pub(crate) fn fresh_label(&mut self) -> VertexId {
        let v = VertexId(self.next_fresh);
        self.next_fresh += 1;
        v
    }

    /// First label the next fresh-vertex synthesis will use.
    pub fn next_fresh(&self) -> VertexId {
        VertexId(self.next_fresh)
    }

    /// Raises the fresh-label floor, e.g. to keep kernel labels disjoint from
    /// an original graph.
    pub fn reserve_labels_below(&mut self, floor: VertexId) {
        self.next_fresh = self.next_fresh.max(floor.0);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[&v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[&v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.range(u..).map(move |&v| (u, v)))
    }

    fn check_subset<'a>(&self, set: impl IntoIterator<Item = &'a VertexId>) -> Result<()> {
        for &v in set {
            if !self.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(())
    }

    /// Merges `set` into one fresh vertex adjacent to every outside neighbour
    /// of the set. Edges inside `set` are discarded and parallel edges
    /// collapse.
    pub fn identify(&self, set: &VertexSet) -> Result<(Graph, VertexId)> {
        let mut g = self.clone();
        let label = g.fresh_label();
        g = g.identify_as(set, label)?;
        Ok((g, label))
    }

    /// [`Graph::identify`] with a caller-chosen label for the merged vertex.
    /// The label must not be a vertex outside `set`.
    pub fn identify_as(&self, set: &VertexSet, label: VertexId) -> Result<Graph> {
        if set.is_empty() {
            return Err(Error::Invalid("cannot identify an empty vertex set".into()));
        }
        self.check_subset(set)?;
        if self.contains(label) && !set.contains(&label) {
            return Err(Error::Invalid(format!(
                "identification label {label} already names a vertex"
            )));
        }
        let outside = self.open_neighborhood(set);
        let mut g = self.clone();
        for &v in set {
            g.remove_vertex(v);
        }
        g.insert_vertex(label);
        for u in outside {
            g.insert_edge(label, u);
        }
        Ok(g)
    }

    /// `N(set) \ set`.
    pub fn open_neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|&v| self.adj[&v].iter().copied())
            .filter(|u| !set.contains(u))
            .collect()
    }

    /// Attaches a fresh degree-one vertex to `u`.
    pub fn add_pendant(&self, u: VertexId) -> Result<(Graph, VertexId)> {
        if !self.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        let mut g = self.clone();
        let leaf = g.fresh_label();
        g.insert_vertex(leaf);
        g.insert_edge(u, leaf);
        Ok((g, leaf))
    }

    /// [`Graph::add_pendant`] with a caller-chosen label for the leaf.
    pub fn add_pendant_as(&self, u: VertexId, leaf: VertexId) -> Result<Graph> {
        if !self.contains(u) {
            return Err(Error::UnknownVertex(u));
        }
        if self.contains(leaf) {
            return Err(Error::Invalid(format!("pendant label {leaf} already names a vertex")));
        }
        let mut g = self.clone();
        g.insert_vertex(leaf);
        g.insert_edge(u, leaf);
        Ok(g)
    }

    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        self.check_subset(set)?;
        let mut g = Graph {
            adj: BTreeMap::new(),
            next_fresh: self.next_fresh,
        };
        for &v in set {
            let nbrs = self.adj[&v].iter().copied().filter(|u| set.contains(u)).collect();
            g.adj.insert(v, nbrs);
        }
        Ok(g)
    }

    pub fn without(&self, set: &VertexSet) -> Graph {
        let mut g = self.clone();
        for &v in set {
            g.remove_vertex(v);
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest label.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(None)
    }

    /// Components of `self[set]` without materialising the subgraph.
    pub fn components_of(&self, set: &VertexSet) -> Vec<VertexSet> {
        self.components_within(Some(set))
    }

    fn components_within(&self, within: Option<&VertexSet>) -> Vec<VertexSet> {
        let inside = |v: &VertexId| within.is_none_or(|s| s.contains(v));
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let roots: Vec<VertexId> = match within {
            Some(s) => s.iter().copied().collect(),
            None => self.vertices().collect(),
        };
        for root in roots {
            if seen.contains(&root) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([root]);
            seen.insert(root);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &u in &self.adj[&v] {
                    if inside(&u) && seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        set.len() <= 1 || self.components_of(set).len() == 1
    }

    /// First edge with neither endpoint in `set`, if any.
    pub fn uncovered_edge(&self, set: &VertexSet) -> Option<(VertexId, VertexId)> {
        self.edges()
            .find(|(u, v)| !set.contains(u) && !set.contains(v))
    }

    pub fn is_vertex_cover(&self, set: &VertexSet) -> bool {
        self.uncovered_edge(set).is_none()
    }

    /// True iff `set` covers every edge and induces a connected subgraph.
    /// The empty set qualifies exactly when the graph has no edges.
    pub fn is_connected_vertex_cover(&self, set: &VertexSet) -> bool {
        if set.iter().any(|&v| !self.contains(v)) {
            return false;
        }
        if set.is_empty() {
            return self.m() == 0;
        }
        self.is_vertex_cover(set) && self.induces_connected(set)
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let vs: Vec<_> = set.iter().copied().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|&u| self.adj[&u].iter().all(|v| !set.contains(v)))
    }

    /// Dense index view for the exhaustive and dynamic-programming routines.
    pub fn indexed(&self) -> Indexed {
        let labels: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = labels
            .iter()
            .map(|v| self.adj[v].iter().map(|u| index[u]).collect())
            .collect();
        Indexed { labels, index, adj }
    }
}

/// Vertices renumbered `0..n` in label order, so index order is label order.
#[derive(Clone, Debug)]
pub struct Indexed {
    pub labels: Vec<VertexId>,
    pub index: BTreeMap<VertexId, usize>,
    pub adj: Vec<Vec<usize>>,
}

impl Indexed {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn set_of(&self, idx: impl IntoIterator<Item = usize>) -> VertexSet {
        idx.into_iter().map(|i| self.labels[i]).collect()
    }
}

/// Shorthand used throughout the tests: `vset(&[1, 2])`.
pub fn vset(labels: &[u64]) -> VertexSet {
    labels.iter().map(|&v| VertexId(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u64) -> Graph {
        Graph::from_edges((1..n).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn identify_triangle_pair_leaves_single_edge() {
        let g = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let (h, x) = g.identify(&vset(&[1, 2])).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(x, VertexId(3)));
        assert!(!g.contains(x));
    }

    #[test]
    fn identify_path_ends_makes_triangle() {
        let g = path(4);
        let (h, x) = g.identify(&vset(&[1, 4])).unwrap();
        assert_eq!(h.vertex_set(), [x, VertexId(2), VertexId(3)].into_iter().collect());
        assert!(h.is_clique(&h.vertex_set()));
    }

    #[test]
    fn identify_singleton_relabels() {
        let g = path(3);
        let (h, x) = g.identify(&vset(&[1])).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(x, VertexId(2)));
        assert!(g.identify(&VertexSet::new()).is_err());
    }

    #[test]
    fn identify_preserves_neighborhood_equation() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (2, 5)]).unwrap();
        let x = vset(&[2, 5]);
        let (h, hat) = g.identify(&x).unwrap();
        assert_eq!(h.neighbors(hat), &g.open_neighborhood(&x));
    }

    #[test]
    fn components_are_sorted_by_smallest_label() {
        let g = Graph::from_parts(
            (1..=3).map(VertexId),
            std::iter::empty(),
        )
        .unwrap();
        assert_eq!(g.connected_components(), vec![vset(&[1]), vset(&[2]), vset(&[3])]);
        assert_eq!(path(4).connected_components().len(), 1);
        let g = Graph::from_edges([(4, 5), (1, 2), (2, 3), (1, 3)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![vset(&[1, 2, 3]), vset(&[4, 5])]);
    }

    #[test]
    fn pendants_are_fresh_leaves() {
        let g = Graph::from_edges([(1, 2)]).unwrap();
        let (g1, p1) = g.add_pendant(VertexId(1)).unwrap();
        let (g2, p2) = g1.add_pendant(VertexId(1)).unwrap();
        assert_ne!(p1, p2);
        assert_eq!(g2.degree(p1), 1);
        assert_eq!(g2.degree(p2), 1);
        assert_eq!(g2.degree(VertexId(1)), 3);
        assert!(g.add_pendant(VertexId(9)).is_err());

        let single = Graph::from_parts([VertexId(1)], []).unwrap();
        let (s, leaf) = single.add_pendant(VertexId(1)).unwrap();
        assert!(s.has_edge(VertexId(1), leaf));
    }

    #[test]
    fn connected_vertex_cover_examples() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(!c4.is_connected_vertex_cover(&vset(&[1, 3])));
        assert!(c4.is_connected_vertex_cover(&vset(&[1, 2, 3])));
        let star = Graph::from_edges((2..=5).map(|i| (1, i))).unwrap();
        assert!(star.is_connected_vertex_cover(&vset(&[1])));
        let lone = Graph::from_parts([VertexId(7)], []).unwrap();
        assert!(lone.is_connected_vertex_cover(&VertexSet::new()));
        assert!(!star.is_connected_vertex_cover(&VertexSet::new()));
    }

    #[test]
    fn induced_subgraph_cases() {
        let k3 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let k2 = k3.induced_subgraph(&vset(&[1, 2])).unwrap();
        assert_eq!(k2, Graph::from_edges([(1, 2)]).unwrap());
        assert_eq!(k3.induced_subgraph(&k3.vertex_set()).unwrap(), k3);
        assert!(k3.induced_subgraph(&VertexSet::new()).unwrap().is_empty());
    }

    #[test]
    fn construction_rejects_loops_and_duplicates() {
        let vs = [VertexId(1), VertexId(2)];
        assert!(Graph::from_parts(vs, [(VertexId(1), VertexId(1))]).is_err());
        assert!(Graph::from_parts(
            vs,
            [(VertexId(1), VertexId(2)), (VertexId(2), VertexId(1))]
        )
        .is_err());
        assert!(Graph::from_parts(vs, [(VertexId(1), VertexId(3))]).is_err());
    }
}
