use crate::classes::ClassLabel;
use crate::error::{Error, Result};
use crate::exact::apex::{solve_component, ApexProblem};
use crate::exact::CvcSolution;
use crate::graph::{Graph, VertexId, VertexSet};

/// Exact minimum connected vertex cover of `ghat`, whose components after
/// deleting `apex` are labelled by `labels`.
///
/// With the apex in the cover the components are independent. Without it,
/// every apex edge must be covered from the far side and the cover has to be
/// connected on its own, which is only possible when `ghat - apex` is a
/// single component.
pub fn cvc_apex_compose(ghat: &Graph, apex: VertexId, labels: &[(VertexSet, ClassLabel)]) -> Result<CvcSolution> {
    if !ghat.contains(apex) {
        return Err(Error::UnknownVertex(apex));
    }
    let rest = ghat.without(&VertexSet::from([apex]));
    let comps = rest.connected_components();
    let mut ordered: Vec<(VertexSet, ClassLabel)> = labels.to_vec();
    ordered.sort();
    let mut expected = comps.clone();
    expected.sort();
    if ordered.iter().map(|(c, _)| c).ne(expected.iter()) {
        return Err(Error::Invalid("labels do not match the components of the graph minus the apex".into()));
    }
    if ghat.m() == 0 {
        return Ok(CvcSolution::found(VertexSet::new()));
    }
    let nbrs = ghat.neighbors(apex);

    let mut with_apex = VertexSet::from([apex]);
    let mut feasible = true;
    for (comp, label) in &ordered {
        let p = ApexProblem::new(rest.induced_subgraph(comp)?, nbrs.intersection(comp).copied().collect(), true)?;
        let sol = solve_component(&p, *label)?;
        if !sol.feasible {
            feasible = false;
            break;
        }
        with_apex.extend(sol.cover);
    }
    let mut best = if feasible && ghat.is_connected_vertex_cover(&with_apex) {
        CvcSolution::found(with_apex)
    } else {
        CvcSolution::infeasible()
    };

    if let [(comp, label)] = ordered.as_slice() {
        let p = ApexProblem::new(rest.induced_subgraph(comp)?, nbrs.clone(), false)?;
        let sol = solve_component(&p, *label)?;
        if sol.feasible && ghat.is_connected_vertex_cover(&sol.cover) && sol.better_than(&best) {
            best = sol;
        }
    }
    if ghat.is_connected() && !best.feasible {
        return Err(Error::Assertion("both apex branches infeasible on a connected graph".into()));
    }
    Ok(best)
}
