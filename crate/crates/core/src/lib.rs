//! Robust maximal independent sets.
//!
//! An MIS `M` of a connected graph is robust when deleting any set of edges
//! that keeps the graph connected also keeps `M` maximal. This crate decides
//! whether such a set exists in linear time, builds one, classifies graph
//! families, and ships brute-force oracles for cross-checking.

pub mod classification;
pub mod construction;
pub mod decomposition;
pub mod generate;
pub mod graph;
pub mod labeling;
pub mod oracle;
pub mod twosat;

pub use graph::{Edge, Graph, GraphError, VertexSet};
