//! Possibilistic knowledge bases and directed possibilistic graphs.
//!
//! A possibilistic base is a set of weighted clauses `(p, α)`, each stating
//! that `p` is certain at least to level `α`. A directed possibilistic graph
//! is a DAG of binary variables with conditional possibility tables. Both
//! induce a possibility distribution over interpretations, and the two
//! representations can be translated into each other without changing that
//! distribution:
//!
//! * [`graph2base::encode_min`] / [`graph2base::encode_product`] turn a graph
//!   into a base (for min-based and product-based conditioning respectively);
//! * [`base2graph::compile`] turns a base into a min-based graph.
//!
//! All weights are exact rationals, so translated artifacts reproduce their
//! source distributions bit for bit. The [`verify`] module provides randomized
//! brute-force checks of every translation and recovery property against
//! direct world enumeration.
//!
//! See the crate `examples/` directory for runnable walkthroughs of each
//! capability, and the `posslog` binary for the file-based command line.

pub mod base;
pub mod base2graph;
pub mod cli;
mod error;
pub mod format;
pub mod graph2base;
pub mod logic;
pub mod network;
pub mod parser;
pub mod sat;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use logic::{Clause, Formula, Interpretation, Literal, VarId, VarSet, DEFAULT_ENUM_GUARD};
pub use weight::Weight;
