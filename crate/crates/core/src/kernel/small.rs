//! Direct solve when the modulator is small relative to the approximation.

use crate::approx::{reconnect, ApproxCover, Provenance};
use crate::classes::ClassLabel;
use crate::error::{Error, Result};
use crate::exact::{cvc_apex_compose, CvcSolution};
use crate::exact::apex::{solve_component, ApexProblem};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::Epsilon;

/// Intermediate values of [`small_modulator_solve`], kept for checking.
#[derive(Clone, Debug)]
pub struct SmallSolve {
    pub result: ApproxCover,
    /// Identified graph and its apex; `None` when the modulator is empty.
    pub apex: Option<(Graph, VertexId)>,
    /// Exact optimum of the identified graph (of `g` itself when `S = ∅`).
    pub exact: CvcSolution,
    pub reconnected: usize,
}

/// Identifies `S` into an apex, solves the result exactly, swaps the apex
/// back for `S` and reconnects.
pub fn small_modulator_solve(
    g: &Graph,
    s: &VertexSet,
    eps: Epsilon,
    labels: &[(VertexSet, ClassLabel)],
) -> Result<SmallSolve> {
    if !g.is_connected() {
        return Err(Error::Invalid("graph disconnected".into()));
    }
    let (exact, apex, x) = if s.is_empty() {
        let [(comp, label)] = labels else {
            return Err(Error::Invalid("an empty modulator needs exactly one component".into()));
        };
        let p = ApexProblem::new(g.induced_subgraph(comp)?, VertexSet::new(), false)?;
        let sol = solve_component(&p, *label)?;
        let x = sol.cover.clone();
        (sol, None, x)
    } else {
        let (ghat, u) = g.identify(s)?;
        let sol = cvc_apex_compose(&ghat, u, labels)?;
        let mut x: VertexSet = sol.cover.iter().copied().filter(|&v| v != u).collect();
        x.extend(s.iter().copied());
        (sol, Some((ghat, u)), x)
    };
    if !exact.feasible {
        return Err(Error::Assertion("exact solve of the identified graph is infeasible".into()));
    }
    let (cover, reconnected) = reconnect(g, &x)?;
    if !g.is_connected_vertex_cover(&cover) {
        return Err(Error::Assertion("small-modulator cover is not a connected vertex cover".into()));
    }
    Ok(SmallSolve {
        result: ApproxCover { cover, bound: eps.one_plus(), provenance: Provenance::SmallCase },
        apex,
        exact,
        reconnected,
    })
}
