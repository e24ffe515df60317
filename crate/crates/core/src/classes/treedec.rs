//! Tree decompositions, their validation, and conversion to nice form.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NoBags,
    NotATree,
    UnknownVertex(VertexId),
    MissingVertex(VertexId),
    UncoveredEdge(VertexId, VertexId),
    DisconnectedOccurrence(VertexId),
    /// Nice-form structural violation at the given node.
    NotNice(usize, &'static str),
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::NoBags => write!(f, "decomposition has no bags"),
            TdViolation::NotATree => write!(f, "bag graph is not a tree"),
            TdViolation::UnknownVertex(v) => write!(f, "bag mentions vertex {v} not in the graph"),
            TdViolation::MissingVertex(v) => write!(f, "vertex {v} appears in no bag"),
            TdViolation::UncoveredEdge(u, v) => write!(f, "edge {u} {v} is contained in no bag"),
            TdViolation::DisconnectedOccurrence(v) => {
                write!(f, "bags containing vertex {v} do not form a connected subtree")
            }
            TdViolation::NotNice(t, why) => write!(f, "node {t} is not nice: {why}"),
        }
    }
}

impl TreeDecomposition {
    /// A decomposition with a single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            bags: vec![g.vertex_set()],
            edges: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn is_tree(&self) -> bool {
        let n = self.bags.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        if self.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(t) = queue.pop_front() {
            for &s in &adj[t] {
                if !seen[s] {
                    seen[s] = true;
                    count += 1;
                    queue.push_back(s);
                }
            }
        }
        count == n
    }

    /// Checks the three tree-decomposition conditions and reports the first
    /// one violated.
    pub fn verify(&self, g: &Graph) -> Result<(), TdViolation> {
        if self.bags.is_empty() {
            return Err(TdViolation::NoBags);
        }
        if !self.is_tree() {
            return Err(TdViolation::NotATree);
        }
        let mut occurrences: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if !g.contains(v) {
                    return Err(TdViolation::UnknownVertex(v));
                }
                occurrences.entry(v).or_default().push(t);
            }
        }
        for v in g.vertices() {
            if !occurrences.contains_key(&v) {
                return Err(TdViolation::MissingVertex(v));
            }
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(TdViolation::UncoveredEdge(u, v));
            }
        }
        let adj = self.adjacency();
        for (&v, ts) in &occurrences {
            let holds: BTreeSet<usize> = ts.iter().copied().collect();
            let mut seen = BTreeSet::from([ts[0]]);
            let mut queue = VecDeque::from([ts[0]]);
            while let Some(t) = queue.pop_front() {
                for &s in &adj[t] {
                    if holds.contains(&s) && seen.insert(s) {
                        queue.push_back(s);
                    }
                }
            }
            if seen.len() != holds.len() {
                return Err(TdViolation::DisconnectedOccurrence(v));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.verify(g).is_ok()
    }

    /// Adds `v` to every bag (used to put an apex on top of a component
    /// decomposition).
    pub fn with_vertex_everywhere(&self, v: VertexId) -> Self {
        let mut td = self.clone();
        for bag in &mut td.bags {
            bag.insert(v);
        }
        td
    }

    /// Restricts every bag to `keep`; still a decomposition of the induced
    /// subgraph.
    pub fn restricted(&self, keep: &VertexSet) -> Self {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| b.intersection(keep).copied().collect())
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Disjoint union of decompositions, joined into one tree by chaining
    /// their first bags.
    pub fn disjoint_union(parts: Vec<TreeDecomposition>) -> Self {
        let mut out = TreeDecomposition { bags: Vec::new(), edges: Vec::new() };
        let mut prev_root: Option<usize> = None;
        for part in parts {
            let offset = out.bags.len();
            out.bags.extend(part.bags);
            out.edges
                .extend(part.edges.into_iter().map(|(a, b)| (a + offset, b + offset)));
            if let Some(r) = prev_root {
                out.edges.push((r, offset));
            }
            prev_root = Some(offset);
        }
        if out.bags.is_empty() {
            out.bags.push(VertexSet::new());
        }
        out
    }

    /// Converts to a nice tree decomposition rooted at bag 0. Width is
    /// preserved; root and leaves get empty bags.
    pub fn to_nice(&self) -> NiceTreeDecomposition {
        let n = self.bags.len();
        let adj = self.adjacency();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0]);
        parent[0] = 0;
        while let Some(t) = queue.pop_front() {
            order.push(t);
            for &s in &adj[t] {
                if parent[s] == usize::MAX {
                    parent[s] = t;
                    queue.push_back(s);
                }
            }
        }
        let mut builder = NiceBuilder::default();
        let mut top = vec![usize::MAX; n];
        for &t in order.iter().rev() {
            let bag = &self.bags[t];
            let mut branches: Vec<usize> = adj[t]
                .iter()
                .filter(|&&c| c != 0 && parent[c] == t)
                .map(|&c| builder.morph(top[c], bag))
                .collect();
            if branches.is_empty() {
                let leaf = builder.push(NiceKind::Leaf, VertexSet::new(), vec![]);
                branches.push(builder.morph(leaf, bag));
            }
            let mut node = branches[0];
            for &other in &branches[1..] {
                node = builder.push(NiceKind::Join, bag.clone(), vec![node, other]);
            }
            top[t] = node;
        }
        let root = builder.morph(top[0], &VertexSet::new());
        NiceTreeDecomposition { nodes: builder.nodes, root }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(VertexId),
    Forget(VertexId),
    Join,
}

#[derive(Clone, Debug)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: VertexSet,
    pub children: Vec<usize>,
}

/// Rooted nice decomposition. Children always have smaller indices than
/// their parent, so index order is a valid bottom-up order.
#[derive(Clone, Debug)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

#[derive(Default)]
struct NiceBuilder {
    nodes: Vec<NiceNode>,
}

impl NiceBuilder {
    fn push(&mut self, kind: NiceKind, bag: VertexSet, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    /// Forget then introduce until the bag of `from` equals `target`.
    fn morph(&mut self, mut from: usize, target: &VertexSet) -> usize {
        let current = self.nodes[from].bag.clone();
        let mut bag = current.clone();
        for &v in current.difference(target) {
            bag.remove(&v);
            from = self.push(NiceKind::Forget(v), bag.clone(), vec![from]);
        }
        for &v in target.difference(&current) {
            bag.insert(v);
            from = self.push(NiceKind::Introduce(v), bag.clone(), vec![from]);
        }
        from
    }
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn as_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (t, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((t, c));
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|n| n.bag.clone()).collect(),
            edges,
        }
    }

    /// Validity as a decomposition of `g` plus the nice-node shape rules.
    pub fn verify(&self, g: &Graph) -> Result<(), TdViolation> {
        self.as_tree_decomposition().verify(g)?;
        if !self.nodes[self.root].bag.is_empty() {
            return Err(TdViolation::NotNice(self.root, "root bag is not empty"));
        }
        for (t, node) in self.nodes.iter().enumerate() {
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1 && {
                        let mut b = child_bag(0).clone();
                        !b.contains(&v) && b.insert(v) && b == node.bag
                    }
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1 && {
                        let mut b = child_bag(0).clone();
                        b.remove(&v) && b == node.bag
                    }
                }
                NiceKind::Join => {
                    node.children.len() == 2
                        && *child_bag(0) == node.bag
                        && *child_bag(1) == node.bag
                }
            };
            if !ok {
                return Err(TdViolation::NotNice(t, "node kind does not match its bags"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    fn p4() -> Graph {
        Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn p4_path_td() -> TreeDecomposition {
        TreeDecomposition {
            bags: vec![vset(&[1, 2]), vset(&[2, 3]), vset(&[3, 4])],
            edges: vec![(0, 1), (1, 2)],
        }
    }

    #[test]
    fn path_decomposition_of_p4_is_valid_and_nice() {
        let td = p4_path_td();
        assert_eq!(td.verify(&p4()), Ok(()));
        assert_eq!(td.width(), 1);
        let nice = td.to_nice();
        assert_eq!(nice.verify(&p4()), Ok(()));
        assert_eq!(nice.width(), 1);
        assert!(nice.nodes[nice.root].bag.is_empty());
    }

    #[test]
    fn reports_uncovered_edge() {
        let mut td = p4_path_td();
        td.bags[1] = vset(&[2]);
        assert_eq!(td.verify(&p4()), Err(TdViolation::UncoveredEdge(VertexId(2), VertexId(3))));
    }

    #[test]
    fn reports_disconnected_occurrence() {
        let g = p4();
        let td = TreeDecomposition {
            bags: vec![vset(&[1, 2, 4]), vset(&[2, 3]), vset(&[3, 4])],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(td.verify(&g), Err(TdViolation::DisconnectedOccurrence(VertexId(4))));
    }

    #[test]
    fn reports_non_tree() {
        let mut td = p4_path_td();
        td.edges.push((0, 2));
        assert_eq!(td.verify(&p4()), Err(TdViolation::NotATree));
    }

    #[test]
    fn nice_form_with_branching_tree() {
        // Star K_{1,3}, center 1: three bags hanging off a middle bag.
        let g = Graph::from_edges([(1, 2), (1, 3), (1, 4)]).unwrap();
        let td = TreeDecomposition {
            bags: vec![vset(&[1]), vset(&[1, 2]), vset(&[1, 3]), vset(&[1, 4])],
            edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        assert!(td.is_valid(&g));
        let nice = td.to_nice();
        assert_eq!(nice.verify(&g), Ok(()));
        assert_eq!(nice.nodes.iter().filter(|n| n.kind == NiceKind::Join).count(), 2);
        for (t, node) in nice.nodes.iter().enumerate() {
            assert!(node.children.iter().all(|&c| c < t));
        }
    }

    #[test]
    fn single_vertex_and_empty_graph() {
        let g = Graph::from_parts([VertexId(5)], []).unwrap();
        let nice = TreeDecomposition::trivial(&g).to_nice();
        assert_eq!(nice.verify(&g), Ok(()));
        let empty = Graph::new();
        let nice = TreeDecomposition::trivial(&empty).to_nice();
        assert_eq!(nice.verify(&empty), Ok(()));
    }
}
