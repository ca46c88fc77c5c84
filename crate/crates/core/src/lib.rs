//! Periodic temporal graph realization with bounded stretch.
//!
//! A Δ-periodic labeling assigns each edge of a static graph one label in
//! `[1, Δ]`; the edge is then available at every time congruent to its label.
//! The stretch of a labeling is the largest ratio, over ordered vertex pairs,
//! between the fastest temporal path duration and the hop distance.

pub mod exact;
pub mod format;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod local_search;
#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
pub mod radius;
pub mod rational;
pub mod reductions;
pub mod temporal;

pub use graph::{DistanceMatrix, Graph, GraphError, Layering, Metrics};
pub use rational::{parse_rational, Rational};
pub use temporal::{evaluate_stretch, Labeling, StretchReport};
