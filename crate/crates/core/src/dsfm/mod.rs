//! Approximate minimization of sums of concave cardinality functions by a
//! single minimum cut on a sparse reduced graph.

mod instance;
mod oracle;
mod penalty;
mod solve;

pub use instance::{evaluate_objective, Component, DsfmInstance};
pub use oracle::{brute_force, BRUTE_FORCE_MAX_N};
pub use penalty::{evaluate_penalty, shift_to_nonnegative, PenaltySpec};
pub use solve::{
    reduce, reduced_network, sparse_card, Certificate, ComponentStats, GadgetPath, PathPolicy,
    Reduction, Solution, SolveOptions, SolveStats,
};

use thiserror::Error;

use crate::flow::FlowError;
use crate::gadget::GadgetError;
use crate::plcover::PlError;

#[derive(Debug, Error)]
pub enum DsfmError {
    #[error("{0}")]
    Validation(String),
    #[error("ground set of {n} nodes exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}
