use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::flow::{build_network, min_st_cut, BuildStats, FlowNetwork, DEFAULT_SCALE};
use crate::gadget::{
    cgf_to_gadget, pairwise_gadget, pl_to_cgf, sym_cgf_to_gadget, sym_pl_to_cgf, unary_gadget,
    GadgetGraph,
};
use crate::plcover::{
    check_eps, greedy_pl_cover, symmetric_pl_cover, ConcaveSeq, MonotoneConcaveSeq,
};

use super::instance::{evaluate_objective, Component, DsfmInstance};
use super::DsfmError;

/// How much finer than `eps` the certificate's lower-bound network is.
const CERTIFICATE_SHARPENING: f64 = 8.0;

/// Which gadget family to use for components that admit the symmetric one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathPolicy {
    /// Build both and keep the one with fewer edges.
    #[default]
    Cheapest,
    SymmetricWhenEligible,
    ForceAsymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub scale: u64,
    pub path: PathPolicy,
    /// Solve a second network, built from covers that stay below the
    /// penalties, for a tighter ratio certificate.
    pub refine_certificate: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            scale: DEFAULT_SCALE,
            path: PathPolicy::Cheapest,
            refine_certificate: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetPath {
    Unary,
    Pairwise,
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentStats {
    pub k: usize,
    /// Linear pieces in the cover (1 for the exact small-support gadgets).
    pub pieces: usize,
    /// Cardinality-based gadget terms used.
    pub terms: usize,
    pub path: GadgetPath,
    pub edges: usize,
    pub aux_nodes: usize,
    /// Largest ratio between the modeled and the true penalty where the
    /// true penalty is positive.
    pub worst_ratio: f64,
    /// Largest modeled value where the true penalty is zero.
    pub zero_residue: f64,
}

/// The gadgets for an instance, ready for network assembly.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub gadgets: Vec<(GadgetGraph, Vec<usize>)>,
    pub components: Vec<ComponentStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// `(1 + eps) objective / (cut - quantization bound)`.
    pub formula_ratio: f64,
    /// Lower bound on the optimum from the under-approximating network, if solved.
    pub refined_lower_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveStats {
    pub nodes: usize,
    pub arcs: usize,
    pub gadget_edges: usize,
    pub aux_nodes: usize,
    pub components: Vec<ComponentStats>,
    pub eps: f64,
    pub scale: u64,
    pub quantization_bound: f64,
    pub rounded_to_zero: usize,
    pub certificate: Certificate,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub members: Vec<bool>,
    pub objective: f64,
    pub reduced_cut_value: f64,
    /// Certified upper bound on `objective / OPT`.
    pub a_posteriori_ratio: f64,
    pub stats: SolveStats,
}

impl Solution {
    pub fn member_indices(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&v| self.members[v])
            .collect()
    }
}

/// Replaces every component by a gadget whose cut function lies between
/// `g_e` and `(1 + eps) g_e` at every cardinality.
pub fn reduce(inst: &DsfmInstance, eps: f64, path: PathPolicy) -> Result<Reduction, DsfmError> {
    check_eps(eps)?;
    inst.validate()?;
    let built: Vec<(GadgetGraph, ComponentStats)> = inst
        .components
        .par_iter()
        .map(|c| reduce_component(c, eps, path))
        .collect::<Result<_, _>>()?;
    let (graphs, components): (Vec<_>, Vec<_>) = built.into_iter().unzip();
    let gadgets = graphs
        .into_iter()
        .zip(&inst.components)
        .map(|(g, c)| (g, c.support.clone()))
        .collect();
    Ok(Reduction {
        gadgets,
        components,
    })
}

fn reduce_component(
    c: &Component,
    eps: f64,
    path: PathPolicy,
) -> Result<(GadgetGraph, ComponentStats), DsfmError> {
    let k = c.k();
    let g = |i| c.penalty.value(k, i);
    let (gadget, pieces, kind) = match k {
        1 => (unary_gadget(g(0), g(1))?, 1, GadgetPath::Unary),
        2 => (
            pairwise_gadget([g(0), g(1), g(2)])?,
            1,
            GadgetPath::Pairwise,
        ),
        _ => {
            let symmetric =
                path != PathPolicy::ForceAsymmetric && c.penalty.is_symmetric_zero_ended(k);
            let sym = if symmetric {
                let penalty = c.penalty.clone();
                let h = MonotoneConcaveSeq::from_fn(k / 2, move |i| {
                    if i == 0 {
                        0.0
                    } else {
                        penalty.value(k, i)
                    }
                })?;
                let pl = symmetric_pl_cover(&h, eps)?;
                let gg = sym_cgf_to_gadget(&sym_pl_to_cgf(&pl)?, k)?;
                Some((gg, pl.piece_count(), GadgetPath::Symmetric))
            } else {
                None
            };
            let asym = if sym.is_none() || path == PathPolicy::Cheapest {
                let pl = greedy_pl_cover(&c.penalty.curve(k)?, eps)?;
                let gg = cgf_to_gadget(&pl_to_cgf(&pl)?)?;
                Some((gg, pl.piece_count(), GadgetPath::Asymmetric))
            } else {
                None
            };
            match (sym, asym) {
                (Some(s), Some(a)) => {
                    if s.0.edge_count() < a.0.edge_count() {
                        s
                    } else {
                        a
                    }
                }
                (Some(s), None) => s,
                (None, Some(a)) => a,
                (None, None) => unreachable!(),
            }
        }
    };

    let mut worst_ratio: f64 = 1.0;
    let mut zero_residue: f64 = 0.0;
    for i in 0..=k {
        let modeled = gadget.cut_eval(i)?;
        let truth = g(i);
        if truth > 0.0 {
            worst_ratio = worst_ratio.max(modeled / truth);
        } else {
            zero_residue = zero_residue.max(modeled);
        }
    }
    let terms = match kind {
        GadgetPath::Symmetric => gadget.aux_count / 2,
        _ => gadget.aux_count,
    };
    let stats = ComponentStats {
        k,
        pieces,
        terms,
        path: kind,
        edges: gadget.edge_count(),
        aux_nodes: gadget.aux_count,
        worst_ratio,
        zero_residue,
    };
    Ok((gadget, stats))
}

/// Assembles the reduced network for `inst`.
pub fn reduced_network(
    inst: &DsfmInstance,
    eps: f64,
    options: &SolveOptions,
) -> Result<(FlowNetwork, BuildStats, Reduction), DsfmError> {
    let red = reduce(inst, eps, options.path)?;
    let (net, stats) = build_network(&red.gadgets, inst.n, options.scale)?;
    Ok((net, stats, red))
}

/// Approximately minimizes `inst` within a factor `1 + eps` via one minimum cut.
pub fn sparse_card(
    inst: &DsfmInstance,
    eps: f64,
    options: &SolveOptions,
) -> Result<Solution, DsfmError> {
    let started = Instant::now();
    let (net, build, red) = reduced_network(inst, eps, options)?;
    let cut = min_st_cut(&net);
    let members = cut.source_side[..inst.n].to_vec();
    let objective = evaluate_objective(inst, &members);

    let q = build.quantization_bound;
    let formula_ratio = ratio((1.0 + eps) * objective, cut.cut_value - q, objective);

    let refined_lower_bound = if options.refine_certificate && eps > 0.0 && objective > 0.0 {
        Some(refined_lower_bound(
            inst,
            eps / CERTIFICATE_SHARPENING,
            options.scale,
        )?)
    } else {
        None
    };
    let refined_ratio =
        refined_lower_bound.map_or(f64::INFINITY, |lb| ratio(objective, lb, objective));
    let a_posteriori_ratio = if objective == 0.0 {
        1.0
    } else {
        formula_ratio.min(refined_ratio).max(1.0)
    };

    Ok(Solution {
        members,
        objective,
        reduced_cut_value: cut.cut_value,
        a_posteriori_ratio,
        stats: SolveStats {
            nodes: net.node_count(),
            arcs: net.arc_count(),
            gadget_edges: build.gadget_edges,
            aux_nodes: build.aux_nodes,
            components: red.components,
            eps,
            scale: options.scale,
            quantization_bound: q,
            rounded_to_zero: build.rounded_to_zero,
            certificate: Certificate {
                formula_ratio,
                refined_lower_bound,
            },
            wall_time: started.elapsed(),
        },
    })
}

fn ratio(numerator: f64, lower_bound: f64, objective: f64) -> f64 {
    if objective == 0.0 {
        1.0
    } else if lower_bound > 0.0 {
        numerator / lower_bound
    } else {
        f64::INFINITY
    }
}

/// A lower bound on the optimum from a network whose gadgets model
/// functions that never exceed the true penalties.
///
/// Each component with `k >= 3` is modeled by a cover of `g_e / (1 + tight)`
/// at tolerance `tight`, which lies between `g_e / (1 + tight)` and `g_e`. The
/// minimum cut of that network, less rounding, is at most the optimum and at
/// least the optimum over `1 + tight`.
fn refined_lower_bound(inst: &DsfmInstance, tight: f64, scale: u64) -> Result<f64, DsfmError> {
    let lower: Vec<(GadgetGraph, Vec<usize>)> = inst
        .components
        .par_iter()
        .map(|c| {
            let k = c.k();
            let g = |i| c.penalty.value(k, i);
            let gg = match k {
                1 => unary_gadget(g(0), g(1))?,
                2 => pairwise_gadget([g(0), g(1), g(2)])?,
                _ => {
                    let spec = c.penalty.clone();
                    let shrunk = ConcaveSeq::from_fn(k, move |i| spec.value(k, i) / (1.0 + tight))?;
                    cgf_to_gadget(&pl_to_cgf(&greedy_pl_cover(&shrunk, tight)?)?)?
                }
            };
            Ok((gg, c.support.clone()))
        })
        .collect::<Result<_, DsfmError>>()?;
    let (net, build) = build_network(&lower, inst.n, scale)?;
    let cut = min_st_cut(&net);
    // the cover may exceed its target by the comparison tolerance
    let drift: f64 = inst
        .components
        .iter()
        .map(|c| {
            1e-11
                * (0..=c.k())
                    .map(|i| c.penalty.value(c.k(), i))
                    .fold(0.0, f64::max)
        })
        .sum();
    Ok(cut.cut_value - build.quantization_bound - drift)
}
