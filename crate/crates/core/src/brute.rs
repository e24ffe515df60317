//! Exhaustive, definition-level checks for small graphs. These are the
//! independent references the recognizers and solvers are tested against;
//! nothing here shares code with the algorithms it checks.

use crate::graph::{Graph, Indexed, VertexSet};

pub const MAX_N: usize = 20;

struct Masks {
    idx: Indexed,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let idx = g.indexed();
        assert!(idx.n() <= MAX_N, "exhaustive check on {} vertices", idx.n());
        let adj = idx
            .adj
            .iter()
            .map(|ns| ns.iter().fold(0u32, |m, &u| m | 1 << u))
            .collect();
        Masks { idx, adj }
    }

    fn n(&self) -> usize {
        self.idx.n()
    }

    fn connected(&self, mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = 1u32 << mask.trailing_zeros();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & mask & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == mask
    }

    fn members(&self, mask: u32) -> impl Iterator<Item = usize> {
        (0..self.n()).filter(move |&v| mask & (1 << v) != 0)
    }

    fn to_set(&self, mask: u32) -> VertexSet {
        self.idx.set_of(self.members(mask))
    }

    fn is_cvc(&self, mask: u32) -> bool {
        let all = (1u32 << self.n()) - 1;
        let covers = self
            .members(all & !mask)
            .all(|v| self.adj[v] & !mask == 0);
        if !covers {
            return false;
        }
        if mask == 0 {
            return self.adj.iter().all(|&a| a == 0);
        }
        self.connected(mask)
    }
}

/// True iff some induced cycle has length at least four.
pub fn has_long_induced_cycle(g: &Graph) -> bool {
    let m = Masks::new(g);
    (0u32..1 << m.n()).any(|mask| {
        mask.count_ones() >= 4
            && m.members(mask).all(|v| (m.adj[v] & mask).count_ones() == 2)
            && m.connected(mask)
    })
}

/// True iff some four vertices induce a path.
pub fn has_induced_p4(g: &Graph) -> bool {
    let m = Masks::new(g);
    let n = m.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = [a, b, c, d];
                    if (0..4).any(|i| (i + 1..4).any(|j| distinct[i] == distinct[j])) {
                        continue;
                    }
                    let e = |x: usize, y: usize| m.adj[x] & (1 << y) != 0;
                    if e(a, b) && e(b, c) && e(c, d) && !e(a, c) && !e(a, d) && !e(b, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Largest clique side over all (clique, independent) partitions, or `None`
/// if the graph is not split.
pub fn max_split_clique(g: &Graph) -> Option<usize> {
    let m = Masks::new(g);
    let n = m.n();
    let all = if n == 0 { 0 } else { (1u32 << n) - 1 };
    (0u32..=all)
        .filter(|&c| {
            let i = all & !c;
            m.members(c).all(|v| (m.adj[v] | 1 << v) & c == c)
                && m.members(i).all(|v| m.adj[v] & i == 0)
        })
        .map(|c| c.count_ones() as usize)
        .max()
}

/// Every maximal clique, by subset enumeration.
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    let m = Masks::new(g);
    let n = m.n();
    let is_clique = |mask: u32| m.members(mask).all(|v| (m.adj[v] | 1 << v) & mask == mask);
    let mut out: Vec<VertexSet> = (1u32..1 << n)
        .filter(|&s| is_clique(s))
        .filter(|&s| (0..n).all(|v| s & (1 << v) != 0 || !is_clique(s | 1 << v)))
        .map(|s| m.to_set(s))
        .collect();
    out.sort();
    out
}

/// Treewidth as the minimum over all elimination orders of the largest
/// neighbourhood at elimination time. Factorial; keep n at most 8.
pub fn treewidth_by_orders(g: &Graph) -> usize {
    let m = Masks::new(g);
    let n = m.n();
    assert!(n <= 8, "order enumeration on {n} vertices");
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    loop {
        let mut adj = m.adj.clone();
        let mut alive = (1u32 << n) - 1;
        let mut width = 0;
        for &v in &order {
            let nb = adj[v] & alive & !(1 << v);
            width = width.max(nb.count_ones() as usize);
            for u in 0..n {
                if nb & (1 << u) != 0 {
                    adj[u] |= nb & !(1 << u);
                }
            }
            alive &= !(1 << v);
        }
        best = best.min(width);
        if !next_permutation(&mut order) {
            return best;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Size of a smallest connected vertex cover, by subset enumeration.
pub fn min_cvc_size(g: &Graph) -> usize {
    let m = Masks::new(g);
    (0u32..1 << m.n())
        .filter(|&s| m.is_cvc(s))
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("a connected graph always has a connected vertex cover")
}

/// All inclusion-minimal connected vertex covers.
pub fn minimal_connected_vertex_covers(g: &Graph) -> Vec<VertexSet> {
    let m = Masks::new(g);
    (0u32..1 << m.n())
        .filter(|&s| m.is_cvc(s))
        .filter(|&s| m.members(s).all(|v| !m.is_cvc(s & !(1 << v))))
        .map(|s| m.to_set(s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let c5 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        assert!(has_long_induced_cycle(&c5));
        assert!(has_induced_p4(&c5));
        assert_eq!(treewidth_by_orders(&c5), 2);
        assert_eq!(min_cvc_size(&c5), 4);
        let p4 = Graph::from_edges([(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(max_split_clique(&p4), Some(2));
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(max_split_clique(&c4), None);
        assert_eq!(minimal_connected_vertex_covers(&p4).len(), 1);
    }
}
