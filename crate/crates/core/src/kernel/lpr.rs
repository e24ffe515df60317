//! Marking and contraction kernel for the large-modulator branch.
//!
//! With `k' = ⌈6k/ε⌉`: `H` holds the vertices of degree above `k'`, `R` the
//! remaining vertices with a neighbour outside `H`, and `I` the rest (an
//! independent set whose neighbours all lie in `H`). Every `h ∈ H` marks up
//! to `k' + 1` of its `I`-neighbours. An unmarked `I`-vertex touching at
//! least `⌈1/ε⌉ + 1` components of `G[H]` is merged with its `H`-neighbours
//! into a super-vertex, which joins `H`. Unmarked `I`-vertices touching the
//! same set of components of `G[H]` are twins; one per class survives.
//! Finally every `H`-vertex gets a pendant.

use std::collections::BTreeMap;

use crate::approx::savage_2approx;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::Epsilon;
use crate::kernel::bound::size_bound;
use crate::kernel::transcript::Event;

#[derive(Clone, Debug)]
pub struct LprKernel {
    pub graph: Graph,
    pub modulator: VertexSet,
    pub k_prime: u64,
    pub events: Vec<Event>,
    /// `|H|` before any merge.
    pub h_size: usize,
    /// Number of super-vertex merges performed.
    pub iterations: usize,
    pub bound: u64,
}

/// Components of `g[h]`, each named by its smallest vertex.
fn component_names(g: &Graph, h: &VertexSet) -> BTreeMap<VertexId, VertexId> {
    g.components_of(h)
        .into_iter()
        .flat_map(|c| {
            let name = *c.iter().next().unwrap();
            c.into_iter().map(move |v| (v, name))
        })
        .collect()
}

fn signature(g: &Graph, v: VertexId, names: &BTreeMap<VertexId, VertexId>) -> Vec<VertexId> {
    let set: VertexSet = g.neighbors(v).iter().filter_map(|u| names.get(u).copied()).collect();
    set.into_iter().collect()
}

pub fn lpr_kernel(g: &Graph, s: &VertexSet, eps: Epsilon) -> Result<LprKernel> {
    let k = s.len();
    let l = savage_2approx(g)?;
    if eps.small_modulator(k, l.cover.len()) {
        return Err(Error::Invalid(format!(
            "large-modulator kernel needs |S| > (ε/6)|L|, got |S| = {k}, |L| = {}",
            l.cover.len()
        )));
    }
    let kp = eps.k_prime(k);
    let h: VertexSet = g.vertices().filter(|&v| g.degree(v) as u64 > kp).collect();
    let r: VertexSet = g
        .vertices()
        .filter(|v| !h.contains(v) && g.neighbors(*v).iter().any(|u| !h.contains(u)))
        .collect();
    let i: VertexSet = g.vertices().filter(|v| !h.contains(v) && !r.contains(v)).collect();
    debug_assert!(g.is_independent(&i));

    let mut marked = VertexSet::new();
    for &x in &h {
        marked.extend(
            g.neighbors(x)
                .iter()
                .filter(|u| i.contains(u))
                .take(kp as usize + 1),
        );
    }
    let mut events = vec![Event::MarkRecord { h: h.clone(), r: r.clone(), i: i.clone(), marked: marked.clone() }];

    let threshold = eps.ceil_inv() as usize + 1;
    let mut cur = g.clone();
    let mut h_cur = h.clone();
    let mut iterations = 0;
    loop {
        let names = component_names(&cur, &h_cur);
        let pick = i
            .iter()
            .copied()
            .filter(|v| cur.contains(*v) && !marked.contains(v))
            .find(|&v| signature(&cur, v, &names).len() >= threshold);
        let Some(v) = pick else { break };
        let members: VertexSet = cur.neighbors(v).iter().copied().filter(|u| h_cur.contains(u)).collect();
        let mut merged = members.clone();
        merged.insert(v);
        let label = cur.next_fresh();
        cur = cur.identify_as(&merged, label)?;
        for m in &members {
            h_cur.remove(m);
        }
        h_cur.insert(label);
        marked.insert(v);
        iterations += 1;
        events.push(Event::SuperVertexMerge { vertex: v, members, label });
    }
    if !eps.at_most_eps_times(iterations, h.len()) {
        return Err(Error::Assertion(format!(
            "contraction loop ran {iterations} times with |H| = {} and ε = {eps}",
            h.len()
        )));
    }

    let names = component_names(&cur, &h_cur);
    let mut classes: BTreeMap<Vec<VertexId>, VertexId> = BTreeMap::new();
    let mut dropped = VertexSet::new();
    for &v in &i {
        if !cur.contains(v) || marked.contains(&v) || s.contains(&v) {
            continue;
        }
        let sig = signature(&cur, v, &names);
        match classes.get(&sig) {
            Some(&kept) => {
                dropped.insert(v);
                events.push(Event::TwinDropped { kept, dropped: v, signature: sig });
            }
            None => {
                classes.insert(sig, v);
            }
        }
    }
    cur = cur.without(&dropped);

    for &x in &h_cur {
        let label = cur.next_fresh();
        cur = cur.add_pendant_as(x, label)?;
        events.push(Event::PendantAdded { on: x, label });
    }

    let mut modulator: VertexSet = s.iter().copied().filter(|v| cur.contains(*v)).collect();
    modulator.extend(h_cur.iter().copied());

    let bound = size_bound(k, eps);
    if cur.n() as u64 > bound {
        return Err(Error::Assertion(format!("kernel has {} vertices, above the bound {bound}", cur.n())));
    }
    Ok(LprKernel { graph: cur, modulator, k_prime: kp, events, h_size: h.len(), iterations, bound })
}
