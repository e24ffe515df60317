//! Connectivity dynamic program over a nice tree decomposition.
//!
//! A state at node `t` records which bag vertices are in the cover, how the
//! selected bag vertices are grouped into connected blocks by the cover built
//! so far in the subtree, and whether a block has already been closed off
//! (all of its vertices forgotten). A closed block must be the whole cover,
//! so a closed state selects nothing further.

use std::collections::HashMap;

use crate::classes::treedec::{NiceKind, NiceTreeDecomposition};
use crate::error::{Error, Result};
use crate::exact::CvcSolution;
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    /// Selected bag vertices, as sorted graph indices.
    sel: Vec<u32>,
    /// Block id of each selected vertex, numbered by first appearance.
    blocks: Vec<u8>,
    done: bool,
}

#[derive(Clone, Debug)]
struct Entry {
    size: usize,
    cover: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }
    /// For equal-size sets: the sorted list of `self` is smaller iff the
    /// lowest element of the symmetric difference is in `self`.
    fn lex_less(&self, other: &Bits) -> bool {
        for (a, b) in self.0.iter().zip(&other.0) {
            let x = a ^ b;
            if x != 0 {
                return a & x & x.wrapping_neg() != 0;
            }
        }
        false
    }
    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

fn canonical(blocks: &mut [u8]) {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for b in blocks.iter_mut() {
        if map[*b as usize] == u8::MAX {
            map[*b as usize] = next;
            next += 1;
        }
        *b = map[*b as usize];
    }
}

type Table = HashMap<State, Entry>;

fn offer(table: &mut Table, state: State, entry: Entry) {
    match table.get(&state) {
        Some(cur) if cur.size < entry.size || (cur.size == entry.size && !entry.cover.lex_less(&cur.cover)) => {}
        _ => {
            table.insert(state, entry);
        }
    }
}

/// Exact minimum connected vertex cover with `required` vertices forced in
/// and `forbidden` vertices kept out.
pub fn cvc_treewidth_dp(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    required: &VertexSet,
    forbidden: &VertexSet,
) -> Result<CvcSolution> {
    cvc_treewidth_dp_limited(g, ntd, required, forbidden, None)
}

/// As [`cvc_treewidth_dp`], but only states leaving at most `max_omitted`
/// bag vertices unselected are kept. Exact whenever some optimum satisfies
/// the restriction at every node, as happens when bags are a clique plus an
/// apex and `max_omitted = 2`.
pub fn cvc_treewidth_dp_limited(
    g: &Graph,
    ntd: &NiceTreeDecomposition,
    required: &VertexSet,
    forbidden: &VertexSet,
    max_omitted: Option<usize>,
) -> Result<CvcSolution> {
    ntd.verify(g)
        .map_err(|v| Error::Invalid(format!("invalid nice tree decomposition: {v}")))?;
    if let Some(v) = required.intersection(forbidden).next() {
        return Err(Error::Invalid(format!("vertex {v} is both required and forbidden")));
    }
    for &v in required.iter().chain(forbidden) {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if ntd.width() >= 255 {
        return Err(Error::Invalid("decomposition too wide for the block encoding".into()));
    }
    let idx = g.indexed();
    let n = idx.n();
    let ix = |v: VertexId| idx.index[&v] as u32;
    let is_req: Vec<bool> = idx.labels.iter().map(|v| required.contains(v)).collect();
    let is_forb: Vec<bool> = idx.labels.iter().map(|v| forbidden.contains(v)).collect();
    let adjacent = |a: u32, b: u32| g.has_edge(idx.labels[a as usize], idx.labels[b as usize]);

    let mut tables: Vec<Option<Table>> = vec![None; ntd.nodes.len()];
    for (t, node) in ntd.nodes.iter().enumerate() {
        let mut out = Table::new();
        match node.kind {
            NiceKind::Leaf => {
                out.insert(
                    State { sel: vec![], blocks: vec![], done: false },
                    Entry { size: 0, cover: Bits::new(n) },
                );
            }
            NiceKind::Introduce(v) => {
                let vi = ix(v);
                let child = tables[node.children[0]].take().expect("child table");
                let bag: Vec<u32> = node.bag.iter().map(|&u| ix(u)).collect();
                for (st, e) in child {
                    // v stays out: every bag neighbour must be selected
                    if !is_req[vi as usize]
                        && bag.iter().all(|&u| u == vi || !adjacent(u, vi) || st.sel.contains(&u))
                    {
                        offer(&mut out, st.clone(), e.clone());
                    }
                    // v joins the cover, merging the blocks it touches
                    if !is_forb[vi as usize] && !st.done {
                        let fresh = st.blocks.iter().max().map_or(0, |m| m + 1);
                        let touched: Vec<u8> = st
                            .sel
                            .iter()
                            .zip(&st.blocks)
                            .filter(|(&u, _)| adjacent(u, vi))
                            .map(|(_, &b)| b)
                            .collect();
                        let pos = st.sel.partition_point(|&u| u < vi);
                        let mut sel = st.sel.clone();
                        let mut blocks: Vec<u8> = st
                            .blocks
                            .iter()
                            .map(|b| if touched.contains(b) { fresh } else { *b })
                            .collect();
                        sel.insert(pos, vi);
                        blocks.insert(pos, fresh);
                        canonical(&mut blocks);
                        let mut cover = e.cover.clone();
                        cover.set(vi as usize);
                        offer(&mut out, State { sel, blocks, done: false }, Entry { size: e.size + 1, cover });
                    }
                }
            }
            NiceKind::Forget(v) => {
                let vi = ix(v);
                let child = tables[node.children[0]].take().expect("child table");
                for (mut st, e) in child {
                    if let Some(pos) = st.sel.iter().position(|&u| u == vi) {
                        st.sel.remove(pos);
                        let b = st.blocks.remove(pos);
                        if !st.blocks.contains(&b) {
                            if !st.sel.is_empty() {
                                // a finished block next to unfinished ones
                                continue;
                            }
                            st.done = true;
                        }
                        canonical(&mut st.blocks);
                    }
                    offer(&mut out, st, e);
                }
            }
            NiceKind::Join => {
                let left = tables[node.children[0]].take().expect("child table");
                let right = tables[node.children[1]].take().expect("child table");
                let mut by_sel: HashMap<&Vec<u32>, Vec<(&State, &Entry)>> = HashMap::new();
                for (st, e) in &right {
                    by_sel.entry(&st.sel).or_default().push((st, e));
                }
                for (a, ea) in &left {
                    let Some(partners) = by_sel.get(&a.sel) else { continue };
                    for &(b, eb) in partners {
                        if a.done && b.done {
                            continue;
                        }
                        let blocks = merge_partitions(&a.blocks, &b.blocks);
                        let cover = ea.cover.or(&eb.cover);
                        let size = ea.size + eb.size - a.sel.len();
                        offer(
                            &mut out,
                            State { sel: a.sel.clone(), blocks, done: a.done || b.done },
                            Entry { size, cover },
                        );
                    }
                }
            }
        }
        if let Some(limit) = max_omitted {
            let bag_len = node.bag.len();
            out.retain(|st, _| bag_len - st.sel.len() <= limit);
        }
        tables[t] = Some(out);
    }

    let root = tables[ntd.root].take().expect("root table");
    let best = root
        .iter()
        .filter(|(st, _)| st.sel.is_empty())
        .map(|(_, e)| e)
        .min_by(|x, y| {
            x.size.cmp(&y.size).then_with(|| {
                if x.cover.lex_less(&y.cover) {
                    std::cmp::Ordering::Less
                } else if y.cover.lex_less(&x.cover) {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Equal
                }
            })
        });
    Ok(match best {
        Some(e) => {
            let cover = idx.set_of(e.cover.members());
            debug_assert!(g.is_connected_vertex_cover(&cover));
            CvcSolution::found(cover)
        }
        None => CvcSolution::infeasible(),
    })
}

/// Finest common coarsening of two partitions of the same sorted set.
fn merge_partitions(a: &[u8], b: &[u8]) -> Vec<u8> {
    let len = a.len();
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for part in [a, b] {
        let mut first: HashMap<u8, usize> = HashMap::new();
        for (i, &blk) in part.iter().enumerate() {
            match first.get(&blk) {
                Some(&j) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
                None => {
                    first.insert(blk, i);
                }
            }
        }
    }
    let mut blocks: Vec<u8> = (0..len).map(|i| find(&mut parent, i) as u8).collect();
    canonical(&mut blocks);
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{build_clique_tree, recognize_chordal, treewidth};
    use crate::exact::cvc_oracle;
    use crate::graph::vset;

    fn nice_of(g: &Graph) -> NiceTreeDecomposition {
        treewidth::min_fill_decomposition(g).to_nice()
    }

    #[test]
    fn p4_from_clique_tree() {
        let p4 = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        let ct = build_clique_tree(&p4, &recognize_chordal(&p4).unwrap()).unwrap();
        let none = VertexSet::new();
        let sol = cvc_treewidth_dp(&p4, &ct.decomposition.to_nice(), &none, &none).unwrap();
        assert_eq!(sol.cover, vset(&[2, 3]));
    }

    #[test]
    fn c4_needs_three() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let none = VertexSet::new();
        let sol = cvc_treewidth_dp(&c4, &nice_of(&c4), &none, &none).unwrap();
        assert_eq!(sol.value(), Some(3));
        assert_eq!(sol, cvc_oracle(&c4, &none, &none).unwrap());
    }

    #[test]
    fn k4_with_required_vertex() {
        let k4 = Graph::from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let none = VertexSet::new();
        let sol = cvc_treewidth_dp(&k4, &nice_of(&k4), &vset(&[1]), &none).unwrap();
        assert_eq!(sol.value(), Some(3));
        assert!(sol.cover.contains(&VertexId(1)));
    }

    #[test]
    fn edgeless_and_infeasible() {
        let one = Graph::from_parts([VertexId(4)], []).unwrap();
        let none = VertexSet::new();
        assert_eq!(cvc_treewidth_dp(&one, &nice_of(&one), &none, &none).unwrap().value(), Some(0));
        let k2 = Graph::from_edges([(1, 2)]).unwrap();
        let sol = cvc_treewidth_dp(&k2, &nice_of(&k2), &none, &vset(&[1, 2])).unwrap();
        assert_eq!(sol.value(), None);
    }

    #[test]
    fn rejects_invalid_decomposition() {
        let p3 = Graph::from_edges([(1, 2), (2, 3)]).unwrap();
        let k2 = Graph::from_edges([(1, 2)]).unwrap();
        let none = VertexSet::new();
        assert!(cvc_treewidth_dp(&p3, &nice_of(&k2), &none, &none).is_err());
    }

    #[test]
    fn disconnected_graph_is_infeasible() {
        let g = Graph::from_edges([(1, 2), (3, 4)]).unwrap();
        let none = VertexSet::new();
        assert_eq!(cvc_treewidth_dp(&g, &nice_of(&g), &none, &none).unwrap().value(), None);
    }
}
