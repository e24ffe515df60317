//! Clique contraction for chordal `G - S`.

use crate::classes::chordal::{maximal_cliques, recognize_chordal};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::instance::Epsilon;
use crate::kernel::transcript::Event;

/// `η = 2 + ⌈1/ε⌉`.
pub fn eta_for(eps: Epsilon) -> usize {
    2 + eps.ceil_inv() as usize
}

/// While some maximal clique `C` of `G - S` has at least `η` vertices,
/// identify `C` into a fresh vertex `u_C` and hang a fresh pendant `v_C` on
/// it. The lexicographically smallest qualifying clique goes first and
/// cliques are recomputed after every contraction.
pub fn rr1_contract_cliques(g: &Graph, s: &VertexSet, eps: Epsilon) -> Result<(Graph, Vec<Event>)> {
    let eta = eta_for(eps);
    let mut cur = g.clone();
    let mut events = Vec::new();
    loop {
        let rest = cur.without(s);
        let peo = recognize_chordal(&rest)
            .ok_or_else(|| Error::Invalid("mode validity: G - S is not chordal".into()))?;
        let Some(clique) = maximal_cliques(&rest, &peo).into_iter().find(|c| c.len() >= eta) else {
            break;
        };
        let label = cur.next_fresh();
        cur = cur.identify_as(&clique, label)?;
        let pendant = cur.next_fresh();
        cur = cur.add_pendant_as(label, pendant)?;
        events.push(Event::ContractClique { clique, label, pendant });
    }
    Ok((cur, events))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{vset, VertexId};

    fn clique_edges(vs: &[u64]) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                out.push((a, b));
            }
        }
        out
    }

    #[test]
    fn k4_with_eta_four_contracts_once() {
        let eps = Epsilon::new(1, 2).unwrap();
        assert_eq!(eta_for(eps), 4);
        let mut edges = clique_edges(&[1, 2, 3, 4]);
        edges.push((9, 1));
        let g = Graph::from_edges(edges).unwrap();
        let (out, events) = rr1_contract_cliques(&g, &vset(&[9]), eps).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(out.n(), 3);
        assert!(out.is_connected());
    }

    #[test]
    fn triangle_is_left_alone() {
        let eps = Epsilon::new(1, 2).unwrap();
        let mut edges = clique_edges(&[1, 2, 3]);
        edges.push((9, 1));
        let g = Graph::from_edges(edges).unwrap();
        let (out, events) = rr1_contract_cliques(&g, &vset(&[9]), eps).unwrap();
        assert!(events.is_empty());
        assert_eq!(out, g);
    }

    #[test]
    fn two_k5_sharing_a_vertex() {
        let eps = Epsilon::new(1, 1).unwrap();
        assert_eq!(eta_for(eps), 3);
        let mut edges = clique_edges(&[1, 2, 3, 4, 5]);
        edges.extend(clique_edges(&[5, 6, 7, 8, 9]));
        edges.push((20, 1));
        let g = Graph::from_edges(edges).unwrap();
        assert_eq!(crate::brute::maximal_cliques(&g.without(&vset(&[20]))).len(), 2);
        let (out, events) = rr1_contract_cliques(&g, &vset(&[20]), eps).unwrap();
        assert_eq!(events.len(), 2);
        let rest = out.without(&vset(&[20]));
        let peo = recognize_chordal(&rest).unwrap();
        assert!(maximal_cliques(&rest, &peo).iter().all(|c| c.len() < 3));
        assert!(out.contains(VertexId(20)));
    }

    #[test]
    fn rejects_non_chordal_rest() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(rr1_contract_cliques(&c4, &VertexSet::new(), Epsilon::new(1, 1).unwrap()).is_err());
    }
}
