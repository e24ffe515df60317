//! Solvers for one component of `Ĝ - û` together with the apex `û`.
//!
//! With `apex_in` the apex is in the cover: the answer is a smallest vertex
//! cover `Y` of the component in which every connected piece of `Y` meets
//! `M = N(û)`. Without it, `Y` must be a connected vertex cover containing
//! `M`.

use crate::classes::cograph::{CoKind, Cotree};
use crate::classes::treedec::TreeDecomposition;
use crate::classes::{build_clique_tree, recognize_chordal, recognize_cograph, recognize_split, treewidth, ClassLabel};
use crate::error::{Error, Result};
use crate::exact::tw_dp::cvc_treewidth_dp_limited;
use crate::exact::CvcSolution;
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct ApexProblem {
    pub component: Graph,
    pub apex_neighbors: VertexSet,
    pub apex_in: bool,
}

impl ApexProblem {
    pub fn new(component: Graph, apex_neighbors: VertexSet, apex_in: bool) -> Result<Self> {
        if let Some(&v) = apex_neighbors.iter().find(|&&v| !component.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(ApexProblem { component, apex_neighbors, apex_in })
    }

    /// The component with the apex materialised under a fresh label.
    pub fn with_apex(&self) -> (Graph, VertexId) {
        let apex = self.component.next_fresh();
        let mut vertices: Vec<VertexId> = self.component.vertices().collect();
        vertices.push(apex);
        let edges = self
            .component
            .edges()
            .chain(self.apex_neighbors.iter().map(|&m| (m, apex)));
        (Graph::from_parts(vertices, edges).expect("apex label is fresh"), apex)
    }

    /// Does `y` satisfy the contract?
    pub fn accepts(&self, y: &VertexSet) -> bool {
        let g = &self.component;
        if !y.iter().all(|&v| g.contains(v)) || !g.is_vertex_cover(y) {
            return false;
        }
        if self.apex_in {
            g.components_of(y)
                .iter()
                .all(|c| !c.is_disjoint(&self.apex_neighbors))
        } else {
            self.apex_neighbors.is_subset(y) && g.is_connected_vertex_cover(y)
        }
    }
}

fn solve_on_decomposition(p: &ApexProblem, td: &TreeDecomposition, max_omitted: Option<usize>) -> Result<CvcSolution> {
    let (g, apex) = p.with_apex();
    let ntd = td.with_vertex_everywhere(apex).to_nice();
    let (req, forb) = if p.apex_in {
        (VertexSet::from([apex]), VertexSet::new())
    } else {
        (VertexSet::new(), VertexSet::from([apex]))
    };
    let sol = cvc_treewidth_dp_limited(&g, &ntd, &req, &forb, max_omitted)?;
    Ok(if sol.feasible {
        let mut cover = sol.cover;
        cover.remove(&apex);
        CvcSolution::found(cover)
    } else {
        sol
    })
}

/// Clique tree of the component with the apex added to every bag; the
/// program only keeps states leaving at most two bag vertices out.
pub fn cvc_chordal_apex(p: &ApexProblem) -> Result<CvcSolution> {
    let peo = recognize_chordal(&p.component)
        .ok_or_else(|| Error::Invalid("chordal apex solver given a non-chordal component".into()))?;
    let ct = build_clique_tree(&p.component, &peo)?;
    solve_on_decomposition(p, &ct.decomposition, Some(2))
}

/// Same contract on a component of treewidth at most `eta`.
pub fn cvc_tw_apex(p: &ApexProblem, eta: usize) -> Result<CvcSolution> {
    let td = treewidth::decomposition_within(&p.component, eta)?.ok_or_else(|| {
        Error::Invalid(format!("component has treewidth above {eta}"))
    })?;
    solve_on_decomposition(p, &td, None)
}

/// Any vertex cover of a split graph `(C, I)` contains all of `C` but at most
/// one vertex `q`, and then contains `N(q) ∩ I`. Each of the `|C| + 1`
/// shapes is completed in the cheapest way and the best is returned.
pub fn cvc_split_apex(p: &ApexProblem) -> Result<CvcSolution> {
    let g = &p.component;
    let part = recognize_split(g)
        .ok_or_else(|| Error::Invalid("split apex solver given a non-split component".into()))?;
    let m = &p.apex_neighbors;
    if g.m() == 0 {
        // a single vertex (or nothing): no edges to cover
        let y = if p.apex_in { VertexSet::new() } else { m.clone() };
        return Ok(if p.accepts(&y) { CvcSolution::found(y) } else { CvcSolution::infeasible() });
    }
    let (c, i) = (&part.clique, &part.independent);
    let mut best = CvcSolution::infeasible();
    let mut consider = |y: VertexSet| {
        if p.accepts(&y) {
            let cand = CvcSolution::found(y);
            if cand.better_than(&best) {
                best = cand;
            }
        }
    };
    // q = None: all of C; otherwise C without q
    let shapes = std::iter::once(None).chain(c.iter().copied().map(Some));
    for q in shapes {
        let mut core: VertexSet = c.iter().copied().filter(|&v| Some(v) != q).collect();
        if let Some(q) = q {
            if !p.apex_in && m.contains(&q) {
                continue;
            }
            core.extend(g.neighbors(q).iter().filter(|u| i.contains(u)));
        }
        if p.apex_in {
            consider(core.clone());
            // the clique part may need one extra I-vertex of M to reach the apex
            let clique_part: VertexSet = c.iter().copied().filter(|&v| Some(v) != q).collect();
            if let Some(&x) = i.iter().find(|&&x| {
                m.contains(&x) && !core.contains(&x) && g.neighbors(x).iter().any(|u| clique_part.contains(u))
            }) {
                let mut y = core.clone();
                y.insert(x);
                consider(y);
            }
        } else {
            core.extend(m.iter().copied());
            consider(core);
        }
    }
    Ok(best)
}

/// Dispatches to the solver for `label`.
pub fn solve_component(p: &ApexProblem, label: ClassLabel) -> Result<CvcSolution> {
    match label {
        ClassLabel::Split => cvc_split_apex(p),
        ClassLabel::Cograph => {
            let cotree = recognize_cograph(&p.component)
                .ok_or_else(|| Error::Invalid("component labelled cograph has an induced P4".into()))?;
            cvc_cograph_apex(p, &cotree)
        }
        ClassLabel::Chordal => cvc_chordal_apex(p),
        ClassLabel::Tw(eta) => cvc_tw_apex(p, eta),
        ClassLabel::None => Err(Error::Invalid("component has no supported class label".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum InStatus {
    Empty,
    /// Nonempty, every piece meets M.
    AllGood,
    /// Some piece misses M, some piece meets it.
    Mixed,
    /// Nonempty and disjoint from M.
    NoneGood,
}

impl InStatus {
    fn flags(self) -> (bool, bool) {
        // (some piece misses M, some piece meets M)
        match self {
            InStatus::Empty => (false, false),
            InStatus::AllGood => (false, true),
            InStatus::Mixed => (true, true),
            InStatus::NoneGood => (true, false),
        }
    }
    fn from_flags(bad: bool, good: bool) -> Self {
        match (bad, good) {
            (false, false) => InStatus::Empty,
            (false, true) => InStatus::AllGood,
            (true, true) => InStatus::Mixed,
            (true, false) => InStatus::NoneGood,
        }
    }
    fn union(self, other: Self) -> Self {
        let (a, b) = (self.flags(), other.flags());
        Self::from_flags(a.0 || b.0, a.1 || b.1)
    }
    fn connected(meets_m: bool) -> Self {
        if meets_m {
            InStatus::AllGood
        } else {
            InStatus::NoneGood
        }
    }
    const ALL: [InStatus; 4] = [InStatus::Empty, InStatus::AllGood, InStatus::Mixed, InStatus::NoneGood];
    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OutStatus {
    Empty,
    Connected,
    Disconnected,
}

impl OutStatus {
    const ALL: [OutStatus; 3] = [OutStatus::Empty, OutStatus::Connected, OutStatus::Disconnected];
    fn index(self) -> usize {
        self as usize
    }
    fn union(self, other: Self) -> Self {
        match (self, other) {
            (OutStatus::Empty, x) | (x, OutStatus::Empty) => x,
            _ => OutStatus::Disconnected,
        }
    }
}

/// Per-node summary of the full vertex set.
struct NodeInfo {
    all: VertexSet,
    has_m: bool,
    /// Status of `Y = V_t` in the apex-in table.
    full_in: InStatus,
    /// Whether `G_t` is connected.
    full_connected: bool,
}

type Slot = Option<VertexSet>;

fn keep(slot: &mut Slot, cand: VertexSet) {
    let better = match slot {
        None => true,
        Some(cur) => (cand.len(), &cand) < (cur.len(), &*cur),
    };
    if better {
        *slot = Some(cand);
    }
}

/// Dynamic program over the cotree. A join of children `G_1..G_r` is covered
/// only if all children but at most one are taken whole, so each join entry
/// is "every child but `i` whole, plus a cover of `G_i`".
pub fn cvc_cograph_apex(p: &ApexProblem, cotree: &Cotree) -> Result<CvcSolution> {
    let g = &p.component;
    if cotree.to_graph() != *g {
        return Err(Error::Invalid("cotree does not evaluate to the component".into()));
    }
    let m = &p.apex_neighbors;
    let mut info: Vec<NodeInfo> = Vec::with_capacity(cotree.nodes.len());
    for node in &cotree.nodes {
        let ni = match node.kind {
            CoKind::Leaf(v) => NodeInfo {
                all: VertexSet::from([v]),
                has_m: m.contains(&v),
                full_in: InStatus::connected(m.contains(&v)),
                full_connected: true,
            },
            CoKind::Union => {
                let kids: Vec<&NodeInfo> = node.children.iter().map(|&c| &info[c]).collect();
                NodeInfo {
                    all: kids.iter().flat_map(|k| k.all.iter().copied()).collect(),
                    has_m: kids.iter().any(|k| k.has_m),
                    full_in: kids.iter().fold(InStatus::Empty, |s, k| s.union(k.full_in)),
                    full_connected: false,
                }
            }
            CoKind::Join => {
                let kids: Vec<&NodeInfo> = node.children.iter().map(|&c| &info[c]).collect();
                let has_m = kids.iter().any(|k| k.has_m);
                NodeInfo {
                    all: kids.iter().flat_map(|k| k.all.iter().copied()).collect(),
                    has_m,
                    full_in: InStatus::connected(has_m),
                    full_connected: true,
                }
            }
        };
        info.push(ni);
    }

    let answer = if p.apex_in {
        let mut tables: Vec<[Slot; 4]> = Vec::with_capacity(cotree.nodes.len());
        for node in &cotree.nodes {
            let mut tab: [Slot; 4] = Default::default();
            match node.kind {
                CoKind::Leaf(v) => {
                    tab[InStatus::Empty.index()] = Some(VertexSet::new());
                    tab[InStatus::connected(m.contains(&v)).index()] = Some(VertexSet::from([v]));
                }
                CoKind::Union => {
                    tab[InStatus::Empty.index()] = Some(VertexSet::new());
                    for &c in &node.children {
                        let mut next: [Slot; 4] = Default::default();
                        for a in InStatus::ALL {
                            let Some(ya) = &tab[a.index()] else { continue };
                            for b in InStatus::ALL {
                                let Some(yb) = &tables[c][b.index()] else { continue };
                                let y: VertexSet = ya.union(yb).copied().collect();
                                keep(&mut next[a.union(b).index()], y);
                            }
                        }
                        tab = next;
                    }
                }
                CoKind::Join => {
                    for (pos, &ci) in node.children.iter().enumerate() {
                        let others: Vec<usize> =
                            node.children.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &c)| c).collect();
                        let rest: VertexSet = others.iter().flat_map(|&c| info[c].all.iter().copied()).collect();
                        let rest_m = others.iter().any(|&c| info[c].has_m);
                        for s in InStatus::ALL {
                            let Some(yi) = &tables[ci][s.index()] else { continue };
                            let status = if yi.is_empty() && others.len() == 1 {
                                info[others[0]].full_in
                            } else {
                                InStatus::connected(rest_m || s.flags().1)
                            };
                            let y: VertexSet = rest.union(yi).copied().collect();
                            keep(&mut tab[status.index()], y);
                        }
                    }
                }
            }
            tables.push(tab);
        }
        let root = &tables[cotree.root];
        let mut best: Slot = None;
        for s in [InStatus::AllGood, InStatus::Empty] {
            if let Some(y) = &root[s.index()] {
                if s == InStatus::Empty && g.m() > 0 {
                    continue;
                }
                keep(&mut best, y.clone());
            }
        }
        best
    } else {
        let mut tables: Vec<[Slot; 3]> = Vec::with_capacity(cotree.nodes.len());
        for node in &cotree.nodes {
            let mut tab: [Slot; 3] = Default::default();
            match node.kind {
                CoKind::Leaf(v) => {
                    if !m.contains(&v) {
                        tab[OutStatus::Empty.index()] = Some(VertexSet::new());
                    }
                    tab[OutStatus::Connected.index()] = Some(VertexSet::from([v]));
                }
                CoKind::Union => {
                    tab[OutStatus::Empty.index()] = Some(VertexSet::new());
                    for &c in &node.children {
                        let mut next: [Slot; 3] = Default::default();
                        for a in OutStatus::ALL {
                            let Some(ya) = &tab[a.index()] else { continue };
                            for b in OutStatus::ALL {
                                let Some(yb) = &tables[c][b.index()] else { continue };
                                let y: VertexSet = ya.union(yb).copied().collect();
                                keep(&mut next[a.union(b).index()], y);
                            }
                        }
                        tab = next;
                    }
                }
                CoKind::Join => {
                    for (pos, &ci) in node.children.iter().enumerate() {
                        let others: Vec<usize> =
                            node.children.iter().enumerate().filter(|&(q, _)| q != pos).map(|(_, &c)| c).collect();
                        let rest: VertexSet = others.iter().flat_map(|&c| info[c].all.iter().copied()).collect();
                        for s in OutStatus::ALL {
                            let Some(yi) = &tables[ci][s.index()] else { continue };
                            let status = if yi.is_empty() && others.len() == 1 && !info[others[0]].full_connected {
                                OutStatus::Disconnected
                            } else {
                                OutStatus::Connected
                            };
                            let y: VertexSet = rest.union(yi).copied().collect();
                            keep(&mut tab[status.index()], y);
                        }
                    }
                }
            }
            tables.push(tab);
        }
        let root = &tables[cotree.root];
        let mut best: Slot = None;
        if let Some(y) = &root[OutStatus::Connected.index()] {
            keep(&mut best, y.clone());
        }
        if g.m() == 0 {
            if let Some(y) = &root[OutStatus::Empty.index()] {
                keep(&mut best, y.clone());
            }
        }
        best
    };
    Ok(match answer {
        Some(y) => {
            debug_assert!(p.accepts(&y));
            CvcSolution::found(y)
        }
        None => CvcSolution::infeasible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::recognize_cograph;
    use crate::exact::cvc_oracle;
    use crate::graph::vset;

    fn oracle(p: &ApexProblem) -> Option<usize> {
        let (g, apex) = p.with_apex();
        let (req, forb) = if p.apex_in {
            (VertexSet::from([apex]), VertexSet::new())
        } else {
            (VertexSet::new(), VertexSet::from([apex]))
        };
        cvc_oracle(&g, &req, &forb).unwrap().value().map(|s| s - p.apex_in as usize)
    }

    fn problem(edges: &[(u64, u64)], m: &[u64], apex_in: bool) -> ApexProblem {
        ApexProblem::new(Graph::from_edges(edges.iter().copied()).unwrap(), vset(m), apex_in).unwrap()
    }

    #[test]
    fn chordal_examples() {
        let p = problem(&[(1, 2), (2, 3), (1, 3)], &[1], true);
        let sol = cvc_chordal_apex(&p).unwrap();
        assert_eq!(sol.cover, vset(&[1, 2]));
        assert_eq!(oracle(&p), Some(2));

        let single = ApexProblem::new(Graph::from_parts([VertexId(1)], []).unwrap(), vset(&[1]), true).unwrap();
        assert_eq!(cvc_chordal_apex(&single).unwrap().value(), Some(0));

        let p3 = problem(&[(1, 2), (2, 3)], &[2], true);
        assert_eq!(cvc_chordal_apex(&p3).unwrap().cover, vset(&[2]));
        assert_eq!(oracle(&p3), Some(1));
    }

    #[test]
    fn split_examples() {
        let k2 = problem(&[(1, 2)], &[1], true);
        assert_eq!(cvc_split_apex(&k2).unwrap().cover, vset(&[1]));
        assert_eq!(oracle(&k2), Some(1));
        let star = problem(&[(1, 2), (1, 3), (1, 4)], &[1], true);
        assert_eq!(cvc_split_apex(&star).unwrap().cover, vset(&[1]));
        let k3 = problem(&[(1, 2), (2, 3), (1, 3)], &[], true);
        assert_eq!(cvc_split_apex(&k3).unwrap().value(), None);
    }

    #[test]
    fn split_needs_an_independent_apex_neighbour() {
        // clique 1,2,3; independent 4 ~ 1; only 4 sees the apex
        let p = problem(&[(1, 2), (2, 3), (1, 3), (4, 1)], &[4], true);
        assert_eq!(oracle(&p), Some(3));
        assert_eq!(cvc_split_apex(&p).unwrap().value(), Some(3));
    }

    #[test]
    fn cograph_examples() {
        let c4 = problem(&[(1, 2), (2, 3), (3, 4), (4, 1)], &[1], true);
        let t = recognize_cograph(&c4.component).unwrap();
        assert_eq!(oracle(&c4), Some(3));
        assert_eq!(cvc_cograph_apex(&c4, &t).unwrap().value(), Some(3));

        let k2 = problem(&[(1, 2)], &[], true);
        let t = recognize_cograph(&k2.component).unwrap();
        assert_eq!(cvc_cograph_apex(&k2, &t).unwrap().value(), None);

        let k3 = problem(&[(1, 2), (2, 3), (1, 3)], &[1, 2, 3], true);
        let t = recognize_cograph(&k3.component).unwrap();
        assert_eq!(cvc_cograph_apex(&k3, &t).unwrap().value(), Some(2));
        assert_eq!(oracle(&k3), Some(2));
    }

    #[test]
    fn cograph_join_with_disconnected_side() {
        // K2 joined with an independent pair: taking the independent pair
        // whole and nothing of K2 is not a cover; taking K2 whole is.
        let p = problem(&[(1, 3), (1, 4), (2, 3), (2, 4), (1, 2)], &[3], false);
        let t = recognize_cograph(&p.component).unwrap();
        assert_eq!(cvc_cograph_apex(&p, &t).unwrap().value(), oracle(&p));
    }

    #[test]
    fn cotree_mismatch_is_rejected() {
        let p = problem(&[(1, 2)], &[1], true);
        let other = recognize_cograph(&Graph::from_edges([(1, 3)]).unwrap()).unwrap();
        assert!(cvc_cograph_apex(&p, &other).is_err());
    }
}
