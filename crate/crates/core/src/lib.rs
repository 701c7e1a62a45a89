//! Domination in subset-inclusion bipartite graphs `G_{l,k}`.
//!
//! Vertices of `G_{l,k}` are the `k`- and `l`-subsets of `[n]`, adjacent when one
//! contains the other. Subsets are `u64` bit masks with element `i` at bit `i - 1`.

pub mod bounds;
pub mod constructions;
pub mod dompair;
pub mod error;
pub mod graph;
pub mod hypergraph;
pub mod par;
pub mod sets;
pub mod solver;

pub use dompair::DomPair;
pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::KGraph;
pub use par::Execution;
pub use sets::{SetFamily, VertexSet};
