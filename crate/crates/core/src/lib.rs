//! Lossy kernelization for Connected Vertex Cover parameterized by the
//! deletion distance to bounded treewidth, chordal, split and cograph
//! graphs.

pub mod approx;
pub mod brute;
pub mod classes;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod lift;

pub use error::{Error, Result};
pub use exact::CvcSolution;
pub use graph::{Graph, VertexId, VertexSet};
pub use instance::{Epsilon, Mode, ModulatorInstance};
