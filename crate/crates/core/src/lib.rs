//! Adaptive network models.
//!
//! A target graph is summarized by a handful of size-independent topology
//! measurements. A genetic algorithm then searches for the probabilities and
//! parameters of a mixture of four network-formation processes (ring lattice
//! with rewiring, preferential attachment, neighborhood copying, and
//! assortativity-steering edge toggles) whose synthesized graphs are closest
//! to the target. The fitted mixture can then grow graphs of any size.

pub mod error;
pub mod graph;
pub mod metrics;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub mod baselines;
pub mod distance;
pub mod evolve;
pub mod processes;
