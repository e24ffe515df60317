//! Exact connected vertex cover solvers: the exhaustive oracle, the
//! tree-decomposition dynamic program, and the per-class apex solvers.

pub mod apex;
pub mod compose;
pub mod oracle;
pub mod tw_dp;

use serde::{Deserialize, Serialize};

use crate::classes::treewidth;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

pub use apex::{cvc_chordal_apex, cvc_cograph_apex, cvc_split_apex, cvc_tw_apex, ApexProblem};
pub use compose::cvc_apex_compose;
pub use oracle::{cvc_oracle, cvc_oracle_limited, ORACLE_GUARD, ORACLE_MAX};
pub use tw_dp::cvc_treewidth_dp;

/// Result of an exact solve. An infeasible result has `feasible = false`
/// and stands for an infinite objective value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CvcSolution {
    pub cover: VertexSet,
    pub size: usize,
    pub feasible: bool,
}

impl CvcSolution {
    pub fn found(cover: VertexSet) -> Self {
        CvcSolution { size: cover.len(), cover, feasible: true }
    }

    pub fn infeasible() -> Self {
        CvcSolution { cover: VertexSet::new(), size: 0, feasible: false }
    }

    /// Objective value; `None` is infinity.
    pub fn value(&self) -> Option<usize> {
        self.feasible.then_some(self.size)
    }

    /// Feasible before infeasible, then smaller size, then the
    /// lexicographically smaller cover.
    pub fn better_than(&self, other: &CvcSolution) -> bool {
        match (self.feasible, other.feasible) {
            (true, false) => true,
            (false, _) => false,
            (true, true) => (self.size, &self.cover) < (other.size, &other.cover),
        }
    }
}

/// Minimum connected vertex cover of an arbitrary graph: the oracle when the
/// graph is within its guard, otherwise the tree-decomposition program on a
/// min-fill decomposition.
pub fn solve_exact(g: &Graph) -> Result<CvcSolution> {
    let none = VertexSet::new();
    if g.n() <= ORACLE_GUARD {
        return cvc_oracle(g, &none, &none);
    }
    let td = treewidth::min_fill_decomposition(g);
    cvc_treewidth_dp(g, &td.to_nice(), &none, &none)
}
