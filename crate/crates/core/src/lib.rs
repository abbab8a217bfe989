//! Induced rainbow and colorful paths in colored triangle-free graphs.
//!
//! * [`graph`]: graphs, colorings, paths and their predicates.
//! * [`chromatic`]: DSATUR, exact chromatic number, canonical coloring enumeration.
//! * [`gen_io`]: triangle-free generators and graph6.
//! * [`oracle`]: exact induced-path searches and the color-orientation rainbow path.
//! * [`constructive`]: the grading procedure, the colorful-path recursion and the bound formulas.
//! * [`harness`]: conjecture sweeps over corpora with JSON Lines reports.

pub mod chromatic;
pub mod constructive;
pub mod error;
pub mod gen_io;
pub mod graph;
pub mod harness;
pub mod oracle;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, Coloring, Graph, Path, PathReport, VertexSet};
