//! Split graph recognition from the degree sequence.

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub independent: VertexSet,
}

/// Returns a split partition with the largest possible clique side, or
/// `None` if the graph is not split.
///
/// With degrees sorted non-increasingly (ties by label) and `m` the largest
/// index with `d_m >= m - 1`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the first `m`
/// vertices form a clique. A clique side that is not maximum can always
/// absorb one independent vertex adjacent to all of it.
pub fn recognize_split(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<(usize, VertexId)> = g.vertices().map(|v| (g.degree(v), v)).collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let m = order
        .iter()
        .enumerate()
        .filter(|(i, (d, _))| *d >= *i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    let head: usize = order[..m].iter().map(|p| p.0).sum();
    let tail: usize = order[m..].iter().map(|p| p.0).sum();
    if head != m * m.saturating_sub(1) + tail {
        return None;
    }
    let mut clique: VertexSet = order[..m].iter().map(|p| p.1).collect();
    let mut independent: VertexSet = order[m..].iter().map(|p| p.1).collect();
    if let Some(&v) = independent
        .iter()
        .find(|&&v| clique.iter().all(|&c| g.has_edge(v, c)))
    {
        independent.remove(&v);
        clique.insert(v);
    }
    debug_assert!(g.is_clique(&clique) && g.is_independent(&independent));
    Some(SplitPartition { clique, independent })
}

pub fn is_split(g: &Graph) -> bool {
    recognize_split(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    #[test]
    fn triangle_is_all_clique() {
        let k3 = Graph::from_edges([(1, 2), (2, 3), (1, 3)]).unwrap();
        let p = recognize_split(&k3).unwrap();
        assert_eq!(p.clique, vset(&[1, 2, 3]));
        assert!(p.independent.is_empty());
    }

    #[test]
    fn c4_is_not_split() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(crate::brute::max_split_clique(&c4), None);
        assert!(recognize_split(&c4).is_none());
    }

    #[test]
    fn star_takes_center_and_one_leaf() {
        let star = Graph::from_edges([(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(crate::brute::max_split_clique(&star), Some(2));
        let p = recognize_split(&star).unwrap();
        assert_eq!(p.clique, vset(&[1, 2]));
        assert_eq!(p.independent, vset(&[3, 4]));
    }

    #[test]
    fn empty_and_single() {
        assert!(recognize_split(&Graph::new()).is_some());
        let one = Graph::from_parts([VertexId(3)], []).unwrap();
        assert_eq!(recognize_split(&one).unwrap().clique, vset(&[3]));
    }
}
