//! Induced-forest machinery on small graphs: k-valid edge detection,
//! exact k-strong induced arboricity with certificates, and constructive
//! covers driven by tree-width, tree-depth and acyclic colorings.
//!
//! Everything is sized for desk scale (at most [`graph::MAX_VERTICES`]
//! vertices) and is deterministic run-to-run: fixed vertex orders, fixed
//! tie-breaking, no wall-clock dependence in any search.

pub mod acyclic;
pub mod budget;
pub mod coloring;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod td;
pub mod tw;
pub mod tw2;
pub mod validity;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
pub use oracle::ForestCover;
