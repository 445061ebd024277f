//! Uniform sampling of edge weights without negative cycles.
//!
//! A Markov chain proposes single-edge weight changes and keeps only those
//! that leave the graph free of negative cycles. Consistency checks use a
//! dynamically maintained Johnson potential with pruned uni- or
//! bidirectional Dijkstra searches (or plain SPFA as a baseline).
//!
//! Everything numeric is generic over [`Weight`]; the aliases below fix the
//! two scalar types used in practice: exact `i64` and `f64`.

pub mod checkers;
pub mod cycle;
pub mod error;
pub mod graph;
pub mod mcmc;
pub mod potential;
pub mod report;
pub mod sssp;
pub mod weight;
pub mod weights;

pub use checkers::{Checker, CheckerKind, Outcome, Proposal, Verdict};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, Node};
pub use mcmc::{run_chain, run_ensemble, Chain, Checkpoint, RunStats, Schedule, StepStats};
pub use potential::Potential;
pub use sssp::{sssp_general, SsspOutcome};
pub use weight::Weight;
pub use weights::{InitStrategy, WeightAssignment, WeightDomain};

pub type IntDomain = WeightDomain<i64>;
pub type RealDomain = WeightDomain<f64>;
pub type IntWeights = WeightAssignment<i64>;
pub type RealWeights = WeightAssignment<f64>;
pub type IntPotential = Potential<i64>;
pub type RealPotential = Potential<f64>;
pub type IntChain<'g> = Chain<'g, i64>;
pub type RealChain<'g> = Chain<'g, f64>;
