//! Instance generation and the batch property runner.

pub mod gen;
pub mod suite;

pub use gen::{gen_instance, ComponentSpec, GenClass, GenSpec};
pub use suite::{run_named, run_suite, PropertyReport, SuiteReport, GROUPS};
