//! Sparse graph-cut reductions for minimizing sums of concave cardinality
//! functions.
//!
//! Each term `g_e(|S ∩ e|)` is replaced by a small gadget whose cut function
//! approximates `g_e` within a factor `1 + eps`, and the whole sum is then
//! minimized with one exact minimum s-t cut.
//!
//! The crate is organized bottom-up:
//!
//! - [`plcover`] finds piecewise-linear covers with the fewest pieces.
//! - [`gadget`] turns covers into cardinality-based gadgets.
//! - [`flow`] assembles networks and computes minimum cuts.
//! - [`dsfm`] ties it together and certifies the result.

pub mod dsfm;
pub mod flow;
pub mod gadget;
pub mod plcover;
