//! Extended Sprague-Grundy values for loopy impartial games, and their
//! behaviour on Galton-Watson game trees.
//!
//! The finite-graph side lives in [`graph`], [`engine`] and [`reduction`];
//! the branching-process side in [`gw`] (generating-function analytics)
//! and [`sampler`] (Monte Carlo trees with certified root values).

pub mod engine;
pub mod error;
pub mod graph;
pub mod gw;
pub mod reduction;
pub mod report;
pub mod sampler;
pub mod value;

pub use engine::{solve, Rank, Solution};
pub use error::{Error, Result};
pub use graph::{load_graph, nim_heap, product_graph, GameGraph, PositionId, RootedTree};
pub use reduction::{
    enumerate_mex_labellings, is_k_stable, reduce, reduce_k, truncation_labelling, MexLabelling, ReductionReport,
};
pub use value::{equivalent, mex, sum_value, Outcome, SGValue};
