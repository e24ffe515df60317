//! Per-component class labels for `G - S`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::{chordal, cograph, split, treewidth};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    Split,
    Cograph,
    Chordal,
    Tw(usize),
    None,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Split => write!(f, "split"),
            ClassLabel::Cograph => write!(f, "cograph"),
            ClassLabel::Chordal => write!(f, "chordal"),
            ClassLabel::Tw(eta) => write!(f, "tw({eta})"),
            ClassLabel::None => write!(f, "none"),
        }
    }
}

/// First matching label in the order split, cograph, chordal, tw(eta).
pub fn classify_graph(g: &Graph, eta: usize) -> Result<ClassLabel> {
    if split::is_split(g) {
        return Ok(ClassLabel::Split);
    }
    if cograph::is_cograph(g) {
        return Ok(ClassLabel::Cograph);
    }
    if chordal::is_chordal(g) {
        return Ok(ClassLabel::Chordal);
    }
    if treewidth::decomposition_within(g, eta)?.is_some() {
        return Ok(ClassLabel::Tw(eta));
    }
    Ok(ClassLabel::None)
}

/// Labels every component of `g - s`, components ordered by smallest label.
pub fn classify_components(
    g: &Graph,
    s: &VertexSet,
    eta: usize,
) -> Result<Vec<(VertexSet, ClassLabel)>> {
    let rest = g.without(s);
    rest.connected_components()
        .into_iter()
        .map(|comp| {
            let sub = rest.induced_subgraph(&comp)?;
            Ok((comp, classify_graph(&sub, eta)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    #[test]
    fn c5_and_k4() {
        let mut edges: Vec<(u64, u64)> = (1..=5).map(|i| (i, i % 5 + 1)).collect();
        for i in 6..=9 {
            for j in i + 1..=9 {
                edges.push((i, j));
            }
        }
        let g = Graph::from_edges(edges).unwrap();
        let labels = classify_components(&g, &VertexSet::new(), 2).unwrap();
        assert_eq!(labels[0], (vset(&[1, 2, 3, 4, 5]), ClassLabel::Tw(2)));
        assert_eq!(labels[1], (vset(&[6, 7, 8, 9]), ClassLabel::Split));
    }

    #[test]
    fn p4_is_split_and_c6_is_tw2() {
        let mut edges = vec![(1, 2), (2, 3), (3, 4)];
        edges.extend((0..6).map(|i| (10 + i, 10 + (i + 1) % 6)));
        let g = Graph::from_edges(edges).unwrap();
        let labels = classify_components(&g, &VertexSet::new(), 2).unwrap();
        assert_eq!(labels[0].1, ClassLabel::Split);
        assert_eq!(labels[1].1, ClassLabel::Tw(2));
    }

    #[test]
    fn path_of_five_is_chordal_only() {
        let p5 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(classify_graph(&p5, 2).unwrap(), ClassLabel::Chordal);
    }

    #[test]
    fn edgeless_rest_is_split() {
        let star = Graph::from_edges([(1, 2), (1, 3), (1, 4)]).unwrap();
        let labels = classify_components(&star, &vset(&[1]), 1).unwrap();
        assert_eq!(labels.len(), 3);
        assert!(labels.iter().all(|(_, l)| *l == ClassLabel::Split));
    }

    #[test]
    fn k5_with_eta_two_is_split() {
        let k5 = Graph::from_edges((1..=5).flat_map(|i| (i + 1..=5).map(move |j| (i, j)))).unwrap();
        assert_eq!(classify_graph(&k5, 2).unwrap(), ClassLabel::Split);
        let c5 = Graph::from_edges((1..=5).map(|i| (i, i % 5 + 1))).unwrap();
        assert_eq!(classify_graph(&c5, 1).unwrap(), ClassLabel::None);
    }
}
