//! Fixed-point flow networks and an exact push-relabel minimum cut.

mod dimacs;
mod network;
mod push_relabel;

pub use dimacs::{read_dimacs, write_dimacs};
pub use network::{build_network, pin_nodes, BuildStats, FlowNetwork, DEFAULT_SCALE};
pub use push_relabel::{max_flow, min_st_cut, CutResult, MaxFlow};

pub use crate::gadget::quantize;

use thiserror::Error;

/// Largest total capacity a network may carry.
pub const CAPACITY_LIMIT: i64 = 1 << 62;

#[derive(Debug, Error)]
pub enum FlowError {
    #[error(
        "total scaled capacity {total:e} reaches 2^62; use a scale of at most {suggested_scale}"
    )]
    Overflow { total: f64, suggested_scale: u64 },
    #[error("node {node} is outside a network of {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("arc {tail}->{head} has negative capacity {cap}")]
    NegativeCapacity { tail: usize, head: usize, cap: i64 },
    #[error("edge weight {0} is not finite and nonnegative")]
    InvalidWeight(f64),
    #[error("source and sink must be distinct nodes")]
    SourceIsSink,
    #[error("node {0} is pinned to both sides")]
    OverlappingPins(usize),
    #[error("scale must be positive")]
    ZeroScale,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
