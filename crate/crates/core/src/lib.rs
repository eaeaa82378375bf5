//! Degree-based seed selection for influence maximization under the
//! independent cascade model.
//!
//! The crate is organised around an immutable multigraph ([`graph::Graph`]),
//! a cascade simulator with an exact live-edge oracle ([`icm`]), the
//! seed-selection algorithms themselves ([`heuristics`]) and an experiment
//! harness that produces CSV reports ([`eval`]).

pub mod error;
pub mod eval;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod icm;
pub(crate) mod rng;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use heuristics::{Algorithm, HeuristicParams, SeedSet};
pub use icm::{SimConfig, SpreadEstimate};
