//! Chordal recognition by maximum-cardinality search, maximal cliques and
//! clique trees.

use std::collections::BTreeMap;

use crate::classes::treedec::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Elimination order: for every vertex, its neighbours that come later in
/// the order form a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectEliminationOrder(pub Vec<VertexId>);

impl PerfectEliminationOrder {
    fn positions(&self) -> BTreeMap<VertexId, usize> {
        self.0.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    /// `{v} ∪ later neighbours of v` for each v, in order.
    fn forward_cliques(&self, g: &Graph) -> Vec<VertexSet> {
        let pos = self.positions();
        self.0
            .iter()
            .map(|&v| {
                let mut c: VertexSet =
                    g.neighbors(v).iter().copied().filter(|u| pos[u] > pos[&v]).collect();
                c.insert(v);
                c
            })
            .collect()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.0.len() != g.n() || self.0.iter().any(|&v| !g.contains(v)) {
            return false;
        }
        let pos = self.positions();
        if pos.len() != self.0.len() {
            return false;
        }
        for &v in &self.0 {
            let later: Vec<VertexId> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|u| pos[u] > pos[&v])
                .collect();
            let Some(&parent) = later.iter().min_by_key(|u| pos[u]) else {
                continue;
            };
            if later
                .iter()
                .any(|&u| u != parent && !g.has_edge(parent, u))
            {
                return false;
            }
        }
        true
    }
}

/// Maximum-cardinality search; ties go to the smallest label. The reverse of
/// the visit order is a perfect elimination order iff the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<VertexId> {
    let mut weight: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
    let mut visit = Vec::with_capacity(g.n());
    while !weight.is_empty() {
        let (&v, _) = weight
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .unwrap();
        weight.remove(&v);
        for u in g.neighbors(v) {
            if let Some(w) = weight.get_mut(u) {
                *w += 1;
            }
        }
        visit.push(v);
    }
    visit.reverse();
    visit
}

pub fn recognize_chordal(g: &Graph) -> Option<PerfectEliminationOrder> {
    let peo = PerfectEliminationOrder(mcs_order(g));
    peo.is_valid_for(g).then_some(peo)
}

pub fn is_chordal(g: &Graph) -> bool {
    recognize_chordal(g).is_some()
}

/// Maximal cliques of a chordal graph, sorted lexicographically.
pub fn maximal_cliques(g: &Graph, peo: &PerfectEliminationOrder) -> Vec<VertexSet> {
    let mut cands = peo.forward_cliques(g);
    cands.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut kept: Vec<VertexSet> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| c.is_subset(k)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept
}

/// Tree decomposition whose bags are exactly the maximal cliques.
#[derive(Clone, Debug)]
pub struct CliqueTree {
    pub decomposition: TreeDecomposition,
}

impl CliqueTree {
    pub fn cliques(&self) -> &[VertexSet] {
        &self.decomposition.bags
    }

    pub fn width(&self) -> usize {
        self.decomposition.width()
    }
}

/// Maximum-weight spanning tree of the clique-intersection graph (Kruskal,
/// weight `|Ci ∩ Cj|`, ties by index). Zero-weight edges join the trees of
/// different connected components.
pub fn build_clique_tree(g: &Graph, peo: &PerfectEliminationOrder) -> Result<CliqueTree> {
    if !peo.is_valid_for(g) {
        return Err(Error::Invalid("not a perfect elimination order of the graph".into()));
    }
    let cliques = maximal_cliques(g, peo);
    if cliques.is_empty() {
        return Ok(CliqueTree {
            decomposition: TreeDecomposition { bags: vec![VertexSet::new()], edges: vec![] },
        });
    }
    let mut pairs = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let w = cliques[i].intersection(&cliques[j]).count();
            pairs.push((w, i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut uf: Vec<usize> = (0..cliques.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut edges = Vec::new();
    for (_, i, j) in pairs {
        let (a, b) = (find(&mut uf, i), find(&mut uf, j));
        if a != b {
            uf[a] = b;
            edges.push((i, j));
        }
    }
    let decomposition = TreeDecomposition { bags: cliques, edges };
    debug_assert!(decomposition.is_valid(g));
    Ok(CliqueTree { decomposition })
}
