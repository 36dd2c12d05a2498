//! Piecewise-linear covers of concave functions sampled at integer points.
//!
//! A cover of `g` on `{0, 1, ..., k}` is a set of lines, each of which lies
//! on or above every point `(i, g(i))`, such that every point is within a
//! factor `1 + eps` of at least one line. The pointwise minimum of the lines
//! is a concave piecewise-linear function `l` with `g(i) <= l(i) <= (1 + eps) g(i)`.
//!
//! [`greedy_pl_cover`] finds a cover with the fewest lines in `O(k)` time.
//! [`min_cover_oracle`] computes the same optimum by brute-force interval
//! covering and exists to check the greedy. [`tangent_log_cover`] and
//! [`clique_cover`] are explicit constructions with known size bounds.

mod bounds;
mod greedy;
mod line;
mod oracle;
mod seq;

pub use bounds::{clique_cover, log_cover_bound, pairing_bound, tangent_log_cover, CliqueCover};
pub use greedy::{greedy_pl_cover, next_line, symmetric_pl_cover};
pub use line::{eval_pl, Line, PlFunction};
pub use oracle::{min_cover_oracle, ORACLE_MAX_K};
pub use seq::{ConcaveSeq, MonotoneConcaveSeq};

use thiserror::Error;

/// Relative tolerance used for every floating-point comparison in this module.
pub const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlError {
    #[error("a concave sequence needs at least two points (k >= 1)")]
    EmptySupport,
    #[error("value g({index}) = {value} is not a finite nonnegative number")]
    InvalidValue { index: usize, value: f64 },
    #[error("sequence is not concave at index {index}")]
    NotConcave { index: usize },
    #[error("sequence decreases at index {index}")]
    NotMonotone { index: usize },
    #[error("monotone sequence must start at 0, got {0}")]
    NonzeroOrigin(f64),
    #[error("{name} = {value} is outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("k = {k} exceeds the limit of {limit}")]
    TooLarge { k: usize, limit: usize },
    #[error("invalid piecewise-linear function: {0}")]
    InvalidPl(String),
}

pub(crate) fn check_eps(eps: f64) -> Result<(), PlError> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(PlError::Domain {
            name: "eps",
            value: eps,
            range: "[0, inf)",
        })
    }
}
