use crate::error::{Error, Result};
use crate::exact::CvcSolution;
use crate::graph::{Graph, VertexSet};

pub const ORACLE_GUARD: usize = 16;

/// Exhaustive minimum connected vertex cover containing `required` and
/// avoiding `forbidden`. Among minimum covers the lexicographically smallest
/// (as a sorted label list) wins.
pub fn cvc_oracle(g: &Graph, required: &VertexSet, forbidden: &VertexSet) -> Result<CvcSolution> {
    cvc_oracle_limited(g, required, forbidden, ORACLE_GUARD)
}

/// Hard ceiling for [`cvc_oracle_limited`]; subsets are 32-bit masks.
pub const ORACLE_MAX: usize = 30;

/// [`cvc_oracle`] with a caller-chosen size guard of at most
/// [`ORACLE_MAX`].
pub fn cvc_oracle_limited(g: &Graph, required: &VertexSet, forbidden: &VertexSet, limit: usize) -> Result<CvcSolution> {
    let limit = limit.min(ORACLE_MAX);
    if g.n() > limit {
        return Err(Error::GuardExceeded { what: "cvc oracle", n: g.n(), limit });
    }
    if let Some(v) = required.intersection(forbidden).next() {
        return Err(Error::Invalid(format!("vertex {v} is both required and forbidden")));
    }
    let idx = g.indexed();
    let n = idx.n();
    let mask_of = |set: &VertexSet| -> Result<u32> {
        set.iter().try_fold(0u32, |m, v| {
            idx.index.get(v).map(|&i| m | 1 << i).ok_or(Error::UnknownVertex(*v))
        })
    };
    let req = mask_of(required)?;
    let forb = mask_of(forbidden)?;
    let adj: Vec<u32> = idx.adj.iter().map(|ns| ns.iter().fold(0, |m, &u| m | 1 << u)).collect();
    let edgeless = adj.iter().all(|&a| a == 0);
    let all: u32 = if n == 0 { 0 } else { ((1u64 << n) - 1) as u32 };

    let is_cvc = |s: u32| -> bool {
        if (0..n).any(|v| s & (1 << v) == 0 && adj[v] & !s != 0) {
            return false;
        }
        if s == 0 {
            return edgeless;
        }
        let mut seen = s & s.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & s & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == s
    };

    let mut best: Option<u32> = None;
    let mut s: u32 = 0;
    loop {
        if s & req == req && s & forb == 0 {
            let better = match best {
                None => true,
                Some(b) => {
                    let (cs, cb) = (s.count_ones(), b.count_ones());
                    // equal sizes: smaller label list iff the lowest
                    // differing vertex belongs to s
                    cs < cb || (cs == cb && s & (s ^ b) & (s ^ b).wrapping_neg() != 0)
                }
            };
            if better && is_cvc(s) {
                best = Some(s);
            }
        }
        if s == all {
            break;
        }
        s += 1;
    }
    Ok(match best {
        Some(b) => CvcSolution::found(idx.set_of((0..n).filter(|&v| b & (1 << v) != 0))),
        None => CvcSolution::infeasible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vset;

    #[test]
    fn c4_needs_three() {
        let c4 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let sol = cvc_oracle(&c4, &VertexSet::new(), &VertexSet::new()).unwrap();
        assert_eq!(sol.value(), Some(3));
        assert_eq!(sol.cover, vset(&[1, 2, 3]));
    }

    #[test]
    fn star_takes_center() {
        let star = Graph::from_edges([(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let sol = cvc_oracle(&star, &VertexSet::new(), &VertexSet::new()).unwrap();
        assert_eq!(sol.cover, vset(&[1]));
    }

    #[test]
    fn p5_with_required_endpoint() {
        let p5 = Graph::from_edges([(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let sol = cvc_oracle(&p5, &vset(&[1]), &VertexSet::new()).unwrap();
        assert_eq!(sol.cover, vset(&[1, 2, 3, 4]));
    }

    #[test]
    fn infeasible_and_edgeless() {
        let k2 = Graph::from_edges([(1, 2)]).unwrap();
        let sol = cvc_oracle(&k2, &VertexSet::new(), &vset(&[1, 2])).unwrap();
        assert_eq!(sol.value(), None);
        let one = Graph::from_parts([crate::graph::VertexId(7)], []).unwrap();
        let sol = cvc_oracle(&one, &VertexSet::new(), &VertexSet::new()).unwrap();
        assert_eq!(sol.value(), Some(0));
        assert!(cvc_oracle(&k2, &vset(&[1]), &vset(&[1])).is_err());
    }

    #[test]
    fn guard() {
        let p = Graph::from_edges((1..17).map(|i| (i, i + 1))).unwrap();
        assert!(matches!(
            cvc_oracle(&p, &VertexSet::new(), &VertexSet::new()),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
