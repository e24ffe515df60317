//! Recognition and decompositions for the supported graph classes.

pub mod chordal;
pub mod classify;
pub mod cograph;
pub mod split;
pub mod treedec;
pub mod treewidth;

pub use chordal::{build_clique_tree, recognize_chordal, CliqueTree, PerfectEliminationOrder};
pub use classify::{classify_components, classify_graph, ClassLabel};
pub use cograph::{recognize_cograph, CoKind, Cotree};
pub use split::{recognize_split, SplitPartition};
pub use treedec::{NiceKind, NiceTreeDecomposition, TdViolation, TreeDecomposition};
pub use treewidth::{exact_treewidth, min_fill_decomposition, treewidth_small};
