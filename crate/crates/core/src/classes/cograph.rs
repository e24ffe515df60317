//! Cotrees by recursive decomposition into components and co-components.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoKind {
    Leaf(VertexId),
    /// Disjoint union of the children.
    Union,
    /// Complete join of the children.
    Join,
}

#[derive(Clone, Debug)]
pub struct CotreeNode {
    pub kind: CoKind,
    pub children: Vec<usize>,
}

/// Children precede parents in `nodes`.
#[derive(Clone, Debug)]
pub struct Cotree {
    pub nodes: Vec<CotreeNode>,
    pub root: usize,
}

impl Cotree {
    /// Leaf labels below `node`.
    pub fn leaves(&self, node: usize) -> VertexSet {
        let mut out = VertexSet::new();
        let mut stack = vec![node];
        while let Some(t) = stack.pop() {
            match self.nodes[t].kind {
                CoKind::Leaf(v) => {
                    out.insert(v);
                }
                _ => stack.extend(&self.nodes[t].children),
            }
        }
        out
    }

    /// Evaluates unions and joins back into a graph.
    pub fn to_graph(&self) -> Graph {
        let mut sets: Vec<VertexSet> = Vec::with_capacity(self.nodes.len());
        let mut edges = Vec::new();
        for node in &self.nodes {
            let set = match node.kind {
                CoKind::Leaf(v) => VertexSet::from([v]),
                CoKind::Union => node.children.iter().flat_map(|&c| sets[c].clone()).collect(),
                CoKind::Join => {
                    for (i, &a) in node.children.iter().enumerate() {
                        for &b in &node.children[i + 1..] {
                            for &u in &sets[a] {
                                for &v in &sets[b] {
                                    edges.push((u, v));
                                }
                            }
                        }
                    }
                    node.children.iter().flat_map(|&c| sets[c].clone()).collect()
                }
            };
            sets.push(set);
        }
        Graph::from_parts(sets[self.root].iter().copied(), edges)
            .expect("cotree leaves are distinct")
    }

    /// Internal nodes have at least two children and never share their label
    /// with their parent.
    pub fn is_canonical(&self) -> bool {
        self.nodes.iter().all(|node| match node.kind {
            CoKind::Leaf(_) => node.children.is_empty(),
            kind => {
                node.children.len() >= 2
                    && node.children.iter().all(|&c| self.nodes[c].kind != kind)
            }
        })
    }
}

fn complement_components(g: &Graph, set: &VertexSet) -> Vec<VertexSet> {
    let mut remaining: BTreeSet<VertexId> = set.clone();
    let mut out = Vec::new();
    while let Some(&root) = remaining.iter().next() {
        remaining.remove(&root);
        let mut comp = VertexSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let nbrs = g.neighbors(v);
            let next: Vec<VertexId> =
                remaining.iter().copied().filter(|u| !nbrs.contains(u)).collect();
            for u in next {
                remaining.remove(&u);
                comp.insert(u);
                queue.push_back(u);
            }
        }
        out.push(comp);
    }
    out
}

/// Returns the canonical cotree, or `None` iff the graph has an induced P4.
/// The empty graph has no cotree.
pub fn recognize_cograph(g: &Graph) -> Option<Cotree> {
    if g.is_empty() {
        return None;
    }
    let mut nodes = Vec::new();
    let root = build(g, &g.vertex_set(), &mut nodes)?;
    Some(Cotree { nodes, root })
}

fn build(g: &Graph, set: &VertexSet, nodes: &mut Vec<CotreeNode>) -> Option<usize> {
    if set.len() == 1 {
        let v = *set.iter().next().unwrap();
        nodes.push(CotreeNode { kind: CoKind::Leaf(v), children: vec![] });
        return Some(nodes.len() - 1);
    }
    let comps = g.components_of(set);
    let (kind, parts) = if comps.len() > 1 {
        (CoKind::Union, comps)
    } else {
        let co = complement_components(g, set);
        if co.len() == 1 {
            return None;
        }
        (CoKind::Join, co)
    };
    let mut children = Vec::with_capacity(parts.len());
    for part in &parts {
        children.push(build(g, part, nodes)?);
    }
    nodes.push(CotreeNode { kind, children });
    Some(nodes.len() - 1)
}

pub fn is_cograph(g: &Graph) -> bool {
    g.is_empty() || recognize_cograph(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_has_no_cotree() {
        let p4 = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(recognize_cograph(&p4).is_none());
    }

    #[test]
    fn triangle_is_a_join_of_leaves() {
        let k3 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let t = recognize_cograph(&k3).unwrap();
        assert_eq!(t.nodes[t.root].kind, CoKind::Join);
        assert_eq!(t.nodes[t.root].children.len(), 3);
        assert_eq!(t.to_graph(), k3);
    }

    #[test]
    fn c4_is_join_of_two_unions() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(!crate::brute::has_induced_p4(&c4));
        let t = recognize_cograph(&c4).unwrap();
        let root = &t.nodes[t.root];
        assert_eq!(root.kind, CoKind::Join);
        assert_eq!(root.children.len(), 2);
        for &c in &root.children {
            assert_eq!(t.nodes[c].kind, CoKind::Union);
        }
        assert!(t.is_canonical());
        assert_eq!(t.to_graph(), c4);
    }

    #[test]
    fn disconnected_cograph_is_union() {
        let g = Graph::from_edges([(1, 2), (3, 4)]).unwrap();
        let t = recognize_cograph(&g).unwrap();
        assert_eq!(t.nodes[t.root].kind, CoKind::Union);
        assert_eq!(t.leaves(t.root).len(), 4);
    }
}
