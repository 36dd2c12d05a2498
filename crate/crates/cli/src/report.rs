use serde::Serialize;
use sparse_card::dsfm::{GadgetPath, Solution};

pub const SCHEMA: &str = "sparse-card/1";

/// Machine-readable result of `solve` or `oracle`.
#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub schema: &'static str,
    pub command: &'static str,
    pub eps: Option<f64>,
    /// 1-indexed ids of the chosen nodes.
    pub members: Vec<usize>,
    /// Objective of the solved (lifted) instance.
    pub objective: f64,
    /// Constant added to make explicit penalties nonnegative.
    pub offset: f64,
    /// Objective of the instance as written, `objective - offset`.
    pub raw_objective: f64,
    pub reduced_cut_value: Option<f64>,
    pub a_posteriori_ratio: Option<f64>,
    /// The same guarantee for the unlifted objective, when it is meaningful.
    pub raw_a_posteriori_ratio: Option<f64>,
    pub graph: Option<GraphSummary>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub arcs: usize,
    pub gadget_edges: usize,
    pub aux_nodes: usize,
    pub scale: u64,
    pub quantization_bound: f64,
    pub rounded_to_zero: usize,
    pub formula_ratio: Option<f64>,
    pub refined_lower_bound: Option<f64>,
    pub components: Vec<ComponentSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentSummary {
    pub k: usize,
    pub pieces: usize,
    pub path: &'static str,
    pub edges: usize,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn path_name(p: GadgetPath) -> &'static str {
    match p {
        GadgetPath::Unary => "unary",
        GadgetPath::Pairwise => "pairwise",
        GadgetPath::Symmetric => "symmetric",
        GadgetPath::Asymmetric => "asymmetric",
    }
}

/// Ratio guarantee for `objective - offset` implied by a guarantee for
/// `objective`. Needs the implied lower bound to stay positive after the shift.
fn raw_ratio(objective: f64, ratio: f64, offset: f64) -> Option<f64> {
    if offset == 0.0 {
        return finite(ratio);
    }
    let raw = objective - offset;
    let lower = objective / ratio - offset;
    if raw == 0.0 && lower >= -1e-12 * offset {
        Some(1.0)
    } else if lower > 0.0 {
        finite((raw / lower).max(1.0))
    } else {
        None
    }
}

impl ResultDocument {
    pub fn from_solution(sol: &Solution, offset: f64) -> Self {
        let st = &sol.stats;
        Self {
            schema: SCHEMA,
            command: "solve",
            eps: Some(st.eps),
            members: sol.member_indices().iter().map(|v| v + 1).collect(),
            objective: sol.objective,
            offset,
            raw_objective: sol.objective - offset,
            reduced_cut_value: Some(sol.reduced_cut_value),
            a_posteriori_ratio: finite(sol.a_posteriori_ratio),
            raw_a_posteriori_ratio: raw_ratio(sol.objective, sol.a_posteriori_ratio, offset),
            graph: Some(GraphSummary {
                nodes: st.nodes,
                arcs: st.arcs,
                gadget_edges: st.gadget_edges,
                aux_nodes: st.aux_nodes,
                scale: st.scale,
                quantization_bound: st.quantization_bound,
                rounded_to_zero: st.rounded_to_zero,
                formula_ratio: finite(st.certificate.formula_ratio),
                refined_lower_bound: st.certificate.refined_lower_bound,
                components: st
                    .components
                    .iter()
                    .map(|c| ComponentSummary {
                        k: c.k,
                        pieces: c.pieces,
                        path: path_name(c.path),
                        edges: c.edges,
                    })
                    .collect(),
            }),
            wall_ms: st.wall_time.as_secs_f64() * 1e3,
        }
    }

    pub fn from_optimum(members: &[bool], objective: f64, offset: f64, wall_ms: f64) -> Self {
        Self {
            schema: SCHEMA,
            command: "oracle",
            eps: None,
            members: (0..members.len())
                .filter(|&v| members[v])
                .map(|v| v + 1)
                .collect(),
            objective,
            offset,
            raw_objective: objective - offset,
            reduced_cut_value: None,
            a_posteriori_ratio: Some(1.0),
            raw_a_posteriori_ratio: Some(1.0),
            graph: None,
            wall_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }
}

pub const CSV_HEADER: &str = "eps,approx_minus_1,sparsity,runtime_ms";

/// One summary row: certified ratio minus one, edge fraction against the
/// exact reduction, and solve time.
pub fn csv_row(sol: &Solution, exact_edges: usize) -> String {
    let sparsity = sol.stats.gadget_edges as f64 / exact_edges.max(1) as f64;
    format!(
        "{},{},{},{}",
        sol.stats.eps,
        sol.a_posteriori_ratio - 1.0,
        sparsity,
        sol.stats.wall_time.as_secs_f64() * 1e3
    )
}
