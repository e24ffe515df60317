//! Savage's DFS-tree approximation, reconnection and minimalization.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Savage,
    SmallCase,
    Lifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxCover {
    pub cover: VertexSet,
    /// Claimed approximation factor.
    pub bound: Ratio<u64>,
    pub provenance: Provenance,
}

/// Internal vertices of a depth-first search tree rooted at the smallest
/// label, neighbours explored in label order.
///
/// The root counts as internal unless it has a single child and every one of
/// its neighbours is internal, in which case dropping it keeps the set a
/// connected cover.
pub fn savage_2approx(g: &Graph) -> Result<ApproxCover> {
    if !g.is_connected() {
        return Err(Error::Invalid("savage approximation needs a connected graph".into()));
    }
    let mut cover = VertexSet::new();
    let Some(root) = g.vertices().next() else {
        return Ok(ApproxCover { cover, bound: Ratio::from_integer(2), provenance: Provenance::Savage });
    };
    let mut children: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut visited = VertexSet::from([root]);
    let mut stack: Vec<(VertexId, std::collections::btree_set::Iter<'_, VertexId>)> =
        vec![(root, g.neighbors(root).iter())];
    while let Some((v, iter)) = stack.last_mut() {
        let v = *v;
        match iter.find(|u| !visited.contains(u)) {
            Some(&u) => {
                visited.insert(u);
                *children.entry(v).or_default() += 1;
                stack.push((u, g.neighbors(u).iter()));
            }
            None => {
                stack.pop();
            }
        }
    }
    cover.extend(children.keys().copied());
    if children.get(&root) == Some(&1)
        && g.neighbors(root).iter().all(|u| cover.contains(u))
    {
        cover.remove(&root);
    }
    debug_assert!(g.is_connected_vertex_cover(&cover));
    Ok(ApproxCover { cover, bound: Ratio::from_integer(2), provenance: Provenance::Savage })
}

/// Adds vertices outside `x` until `g[x]` is connected, each time taking the
/// vertex adjacent to the most components of `g[x]` (smallest label on
/// ties). Returns the new set and the number of vertices added.
pub fn reconnect(g: &Graph, x: &VertexSet) -> Result<(VertexSet, usize)> {
    if let Some((u, v)) = g.uncovered_edge(x) {
        return Err(Error::Invalid(format!("not a vertex cover: edge {u} {v} is uncovered")));
    }
    let mut x = x.clone();
    let mut added = 0;
    loop {
        let comps = g.components_of(&x);
        if comps.len() <= 1 {
            return Ok((x, added));
        }
        let comp_of: BTreeMap<VertexId, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
            .collect();
        let best = g
            .vertices()
            .filter(|v| !x.contains(v))
            .map(|v| {
                let touched: BTreeSet<usize> =
                    g.neighbors(v).iter().filter_map(|u| comp_of.get(u).copied()).collect();
                (touched.len(), v)
            })
            .filter(|&(t, _)| t >= 2)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, v)) = best else {
            return Err(Error::Invalid("graph is disconnected; cover cannot be reconnected".into()));
        };
        x.insert(v);
        added += 1;
    }
}

/// Drops vertices, largest label first, while the set stays a connected
/// vertex cover; repeats until no single vertex can be dropped.
pub fn minimalize(g: &Graph, t: &VertexSet) -> Result<VertexSet> {
    if !g.is_connected_vertex_cover(t) {
        return Err(Error::Invalid("minimalize needs a connected vertex cover".into()));
    }
    let mut t = t.clone();
    loop {
        let mut changed = false;
        let order: Vec<VertexId> = t.iter().rev().copied().collect();
        for v in order {
            t.remove(&v);
            if g.is_connected_vertex_cover(&t) {
                changed = true;
            } else {
                t.insert(v);
            }
        }
        if !changed {
            return Ok(t);
        }
    }
}

pub fn is_minimal_cvc(g: &Graph, t: &VertexSet) -> bool {
    g.is_connected_vertex_cover(t)
        && t.iter().all(|v| {
            let mut s = t.clone();
            s.remove(v);
            !g.is_connected_vertex_cover(&s)
        })
}
