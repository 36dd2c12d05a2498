//! Cardinality-based gadgets: small directed graphs whose conditioned minimum
//! cut reproduces a concave piecewise-linear function of `|S|`.
//!
//! An asymmetric gadget of order `J` on `k` support nodes realizes
//!
//! ```text
//! l(x) = z0 (k - x) + zk x + sum_j a_j min{ x (k - b_j), (k - x) b_j }
//! ```
//!
//! using one auxiliary node per term. A symmetric gadget realizes
//! `sum_j a_j min{x, k - x, b_j}` with two auxiliary nodes per term and needs
//! about half the edges.

use thiserror::Error;

use crate::plcover::{PlError, PlFunction, REL_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GadgetError {
    #[error("invalid gadget parameters: {0}")]
    InvalidParams(String),
    #[error("function is not a flat-tailed nondecreasing curve from the origin: {0}")]
    NotInClass(String),
    #[error("cardinality {i} is outside 0..={k}")]
    Cardinality { i: usize, k: usize },
    #[error(transparent)]
    Pl(#[from] PlError),
}

fn invalid(msg: impl Into<String>) -> GadgetError {
    GadgetError::InvalidParams(msg.into())
}

/// Parameters of an asymmetric combined gadget on `k` support nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct CgfParams {
    pub k: usize,
    pub z0: f64,
    pub zk: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl CgfParams {
    pub fn new(k: usize, z0: f64, zk: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self, GadgetError> {
        let p = Self { k, z0, zk, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        if self.k == 0 {
            return Err(invalid("support size must be positive"));
        }
        for (name, z) in [("z0", self.z0), ("zk", self.zk)] {
            if !(z.is_finite() && z >= 0.0) {
                return Err(invalid(format!(
                    "{name} = {z} must be finite and nonnegative"
                )));
            }
        }
        check_terms(&self.a, &self.b)?;
        if let Some(&last) = self.b.last() {
            if last >= self.k as f64 {
                return Err(invalid(format!(
                    "last breakpoint {last} must be below k = {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.k as f64;
        let mut v = self.z0 * (k - x) + self.zk * x;
        for (&a, &b) in self.a.iter().zip(&self.b) {
            v += a * f64::min(x * (k - b), (k - x) * b);
        }
        v
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            k: self.k,
            z0: self.z0 * factor,
            zk: self.zk * factor,
            a: self.a.iter().map(|a| a * factor).collect(),
            b: self.b.clone(),
        }
    }
}

/// Parameters of a symmetric combined gadget `sum_j a_j min{x, b_j}` on `[0, r]`.
///
/// Breakpoints beyond `r` are accepted; such a term simply never reaches its
/// cap on a support of size `2r` or `2r + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymCgfParams {
    pub r: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl SymCgfParams {
    pub fn new(r: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, GadgetError> {
        let p = Self { r, a, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        if self.r == 0 {
            return Err(invalid("half-width r must be positive"));
        }
        check_terms(&self.a, &self.b)
    }

    /// Whether every breakpoint lies in `(0, r]`.
    pub fn is_canonical(&self) -> bool {
        self.b.last().is_none_or(|&b| b <= self.r as f64)
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(&a, &b)| a * x.min(b))
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            r: self.r,
            a: self.a.iter().map(|a| a * factor).collect(),
            b: self.b.clone(),
        }
    }
}

fn check_terms(a: &[f64], b: &[f64]) -> Result<(), GadgetError> {
    if a.len() != b.len() {
        return Err(invalid(format!(
            "{} weights but {} breakpoints",
            a.len(),
            b.len()
        )));
    }
    if let Some(&w) = a.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(invalid(format!(
            "term weight {w} must be finite and positive"
        )));
    }
    let mut prev = 0.0;
    for &x in b {
        if !(x.is_finite() && x > prev) {
            return Err(invalid(format!(
                "breakpoints must be positive and strictly increasing, got {x} after {prev}"
            )));
        }
        prev = x;
    }
    Ok(())
}

/// Converts a concave PL function on `[0, k]` into gadget parameters.
pub fn pl_to_cgf(pl: &PlFunction) -> Result<CgfParams, GadgetError> {
    let k = pl.k();
    let kf = k as f64;
    let slopes = pl.slopes();
    let at_zero = pl.value_at_zero();
    let at_k = pl.eval(kf)?;
    let mag = at_zero.abs() + at_k.abs() + slopes.iter().map(|m| m.abs() * kf).sum::<f64>();
    let clamp = |v: f64, name: &str| -> Result<f64, GadgetError> {
        if v.abs() <= REL_TOL * mag {
            Ok(0.0)
        } else if v > 0.0 {
            Ok(v)
        } else {
            Err(invalid(format!("{name} = {v} is negative")))
        }
    };
    let z0 = clamp(at_zero, "l(0)")? / kf;
    let zk = clamp(at_k, "l(k)")? / kf;
    let a: Vec<f64> = slopes.windows(2).map(|w| (w[0] - w[1]) / kf).collect();
    let b = pl.breakpoints().to_vec();
    let params = CgfParams { k, z0, zk, a, b };
    params.validate()?;
    Ok(params)
}

/// The PL function a set of gadget parameters realizes.
pub fn cgf_to_pl(params: &CgfParams) -> Result<PlFunction, GadgetError> {
    params.validate()?;
    let kf = params.k as f64;
    let weighted: f64 = params.a.iter().zip(&params.b).map(|(a, b)| a * b).sum();
    let mut tail: f64 = params.a.iter().sum();
    let mut slopes = Vec::with_capacity(params.order() + 1);
    slopes.push(params.zk - params.z0 - weighted + kf * tail);
    for &a in &params.a {
        tail -= a;
        slopes.push(params.zk - params.z0 - weighted + kf * tail);
    }
    Ok(PlFunction::new(
        params.k,
        params.b.clone(),
        slopes,
        kf * params.z0,
    )?)
}

/// Converts a flat-tailed nondecreasing cover on `[0, r]` into symmetric terms.
pub fn sym_pl_to_cgf(pl: &PlFunction) -> Result<SymCgfParams, GadgetError> {
    let slopes = pl.slopes();
    let scale = slopes.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
    let tol = REL_TOL * scale * pl.k() as f64;
    if pl.value_at_zero().abs() > tol {
        return Err(GadgetError::NotInClass(format!(
            "value at zero is {}",
            pl.value_at_zero()
        )));
    }
    let last = *slopes.last().unwrap();
    if last.abs() > REL_TOL * scale {
        return Err(GadgetError::NotInClass(format!(
            "last slope is {last}, not flat"
        )));
    }
    if slopes.iter().any(|&s| s < -REL_TOL * scale) {
        return Err(GadgetError::NotInClass("a slope is negative".into()));
    }
    let a: Vec<f64> = slopes.windows(2).map(|w| w[0] - w[1]).collect();
    let params = SymCgfParams {
        r: pl.k(),
        a,
        b: pl.breakpoints().to_vec(),
    };
    params.validate()?;
    Ok(params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    SourceToSupport,
    SupportToSink,
    SupportToAux,
    AuxToSupport,
    AuxToAux,
    SupportToSupport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadgetEdge {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
    pub role: EdgeRole,
}

/// The function a gadget graph was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum GadgetModel {
    /// A single node with cost `g0` outside the set and `g1` inside.
    Unary {
        g0: f64,
        g1: f64,
    },
    /// Two nodes with costs `g[i]` for `i` members in the set.
    Pairwise {
        g: [f64; 3],
    },
    Asymmetric(CgfParams),
    Symmetric(SymCgfParams),
}

/// A gadget on local node ids.
///
/// Ids `0..k` are support nodes, `k..k + aux_count` are auxiliary nodes, and
/// the source and sink follow at `k + aux_count` and `k + aux_count + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetGraph {
    pub k: usize,
    pub aux_count: usize,
    pub edges: Vec<GadgetEdge>,
    pub model: GadgetModel,
}

impl GadgetGraph {
    pub fn source(&self) -> usize {
        self.k + self.aux_count
    }

    pub fn sink(&self) -> usize {
        self.k + self.aux_count + 1
    }

    pub fn node_count(&self) -> usize {
        self.k + self.aux_count + 2
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The same gadget with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let model = match &self.model {
            GadgetModel::Unary { g0, g1 } => GadgetModel::Unary {
                g0: g0 * factor,
                g1: g1 * factor,
            },
            GadgetModel::Pairwise { g } => GadgetModel::Pairwise {
                g: g.map(|v| v * factor),
            },
            GadgetModel::Asymmetric(p) => GadgetModel::Asymmetric(p.scaled(factor)),
            GadgetModel::Symmetric(p) => GadgetModel::Symmetric(p.scaled(factor)),
        };
        Self {
            k: self.k,
            aux_count: self.aux_count,
            edges: self
                .edges
                .iter()
                .map(|e| GadgetEdge {
                    weight: e.weight * factor,
                    ..*e
                })
                .collect(),
            model,
        }
    }

    /// Minimum cut with exactly `i` support nodes on the source side,
    /// minimized over auxiliary placements.
    pub fn cut_eval(&self, i: usize) -> Result<f64, GadgetError> {
        if i > self.k {
            return Err(GadgetError::Cardinality { i, k: self.k });
        }
        let x = i as f64;
        Ok(match &self.model {
            GadgetModel::Unary { g0, g1 } => [*g0, *g1][i],
            GadgetModel::Pairwise { g } => g[i],
            GadgetModel::Asymmetric(p) => p.eval(x),
            GadgetModel::Symmetric(p) => p.eval(x.min((self.k - i) as f64)),
        })
    }

    /// [`cut_eval`](Self::cut_eval) on fixed-point weights, each edge
    /// rounded to an integer multiple of `1 / scale` on its own.
    pub fn cut_eval_scaled(&self, i: usize, scale: u64) -> Result<i64, GadgetError> {
        if i > self.k {
            return Err(GadgetError::Cardinality { i, k: self.k });
        }
        let q = |w: f64| quantize(w, scale);
        let inside = i as i64;
        let outside = (self.k - i) as i64;
        Ok(match &self.model {
            GadgetModel::Unary { .. } | GadgetModel::Pairwise { .. } => {
                // these have no auxiliary nodes: the cut is fixed once the
                // members are chosen, and by symmetry any choice of size i works
                let members: Vec<bool> = (0..self.k).map(|v| v < i).collect();
                self.fixed_cut_scaled(&members, &[], scale)
            }
            GadgetModel::Asymmetric(p) => {
                let kf = p.k as f64;
                let mut total = q(p.z0) * outside + q(p.zk) * inside;
                for (&a, &b) in p.a.iter().zip(&p.b) {
                    total += i64::min(q(a * (kf - b)) * inside, q(a * b) * outside);
                }
                total
            }
            GadgetModel::Symmetric(p) => {
                let mut total = 0;
                for (&a, &b) in p.a.iter().zip(&p.b) {
                    let qa = q(a);
                    total += (qa * inside).min(qa * outside).min(q(a * b));
                }
                total
            }
        })
    }

    /// Cut of the partition with `members` and `aux_source` on the source side,
    /// using fixed-point weights.
    pub fn fixed_cut_scaled(&self, members: &[bool], aux_source: &[bool], scale: u64) -> i64 {
        let on_source = |v: usize| -> bool {
            if v < self.k {
                members[v]
            } else if v < self.source() {
                aux_source[v - self.k]
            } else {
                v == self.source()
            }
        };
        self.edges
            .iter()
            .filter(|e| on_source(e.tail) && !on_source(e.head))
            .map(|e| quantize(e.weight, scale))
            .sum()
    }
}

/// `round(w * scale)` as an integer capacity.
#[inline]
pub fn quantize(w: f64, scale: u64) -> i64 {
    (w * scale as f64).round() as i64
}

fn push_edge(edges: &mut Vec<GadgetEdge>, tail: usize, head: usize, weight: f64, role: EdgeRole) {
    if weight > 0.0 {
        edges.push(GadgetEdge {
            tail,
            head,
            weight,
            role,
        });
    }
}

/// Builds the asymmetric gadget for `params`, one auxiliary node per term.
pub fn cgf_to_gadget(params: &CgfParams) -> Result<GadgetGraph, GadgetError> {
    params.validate()?;
    let k = params.k;
    let kf = k as f64;
    let j = params.order();
    let (s, t) = (k + j, k + j + 1);
    let mut edges = Vec::with_capacity(k * (2 * j + 2));
    for v in 0..k {
        push_edge(&mut edges, s, v, params.z0, EdgeRole::SourceToSupport);
        push_edge(&mut edges, v, t, params.zk, EdgeRole::SupportToSink);
    }
    for (idx, (&a, &b)) in params.a.iter().zip(&params.b).enumerate() {
        let aux = k + idx;
        for v in 0..k {
            push_edge(&mut edges, v, aux, a * (kf - b), EdgeRole::SupportToAux);
            push_edge(&mut edges, aux, v, a * b, EdgeRole::AuxToSupport);
        }
    }
    debug_assert_eq!(
        edges.len(),
        k * 2 * j + k * usize::from(params.z0 > 0.0) + k * usize::from(params.zk > 0.0)
    );
    Ok(GadgetGraph {
        k,
        aux_count: j,
        edges,
        model: GadgetModel::Asymmetric(params.clone()),
    })
}

/// Builds the symmetric gadget for `params` on `k` support nodes, where
/// `params.r` must be `k / 2`. Each term uses an entry and an exit node.
pub fn sym_cgf_to_gadget(params: &SymCgfParams, k: usize) -> Result<GadgetGraph, GadgetError> {
    params.validate()?;
    if params.r != k / 2 {
        return Err(invalid(format!(
            "half-width {} does not match support size {k}",
            params.r
        )));
    }
    let j = params.order();
    let mut edges = Vec::with_capacity(j * (2 * k + 1));
    for (idx, (&a, &b)) in params.a.iter().zip(&params.b).enumerate() {
        let entry = k + 2 * idx;
        let exit = entry + 1;
        for v in 0..k {
            push_edge(&mut edges, v, entry, a, EdgeRole::SupportToAux);
            push_edge(&mut edges, exit, v, a, EdgeRole::AuxToSupport);
        }
        push_edge(&mut edges, entry, exit, a * b, EdgeRole::AuxToAux);
    }
    debug_assert_eq!(edges.len(), j * (2 * k + 1));
    Ok(GadgetGraph {
        k,
        aux_count: 2 * j,
        edges,
        model: GadgetModel::Symmetric(params.clone()),
    })
}

fn check_values(values: &[f64]) -> Result<(), GadgetError> {
    match values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        Some(v) => Err(invalid(format!("value {v} must be finite and nonnegative"))),
        None => Ok(()),
    }
}

/// A single node paying `g0` when outside the set and `g1` when inside.
pub fn unary_gadget(g0: f64, g1: f64) -> Result<GadgetGraph, GadgetError> {
    check_values(&[g0, g1])?;
    let mut edges = Vec::with_capacity(2);
    push_edge(&mut edges, 1, 0, g0, EdgeRole::SourceToSupport);
    push_edge(&mut edges, 0, 2, g1, EdgeRole::SupportToSink);
    Ok(GadgetGraph {
        k: 1,
        aux_count: 0,
        edges,
        model: GadgetModel::Unary { g0, g1 },
    })
}

/// Two nodes with concave costs `g[0], g[1], g[2]`, modeled exactly by
/// half-weight terminal edges and a symmetric pair of edges between them.
pub fn pairwise_gadget(g: [f64; 3]) -> Result<GadgetGraph, GadgetError> {
    check_values(&g)?;
    let coupling = g[1] - 0.5 * (g[0] + g[2]);
    let tol = REL_TOL * (g[0] + g[1] + g[2]);
    if coupling < -tol {
        return Err(invalid(format!("values {g:?} are not concave")));
    }
    let coupling = coupling.max(0.0);
    let (s, t) = (2, 3);
    let mut edges = Vec::with_capacity(6);
    for v in 0..2 {
        push_edge(&mut edges, s, v, 0.5 * g[0], EdgeRole::SourceToSupport);
        push_edge(&mut edges, v, t, 0.5 * g[2], EdgeRole::SupportToSink);
    }
    push_edge(&mut edges, 0, 1, coupling, EdgeRole::SupportToSupport);
    push_edge(&mut edges, 1, 0, coupling, EdgeRole::SupportToSupport);
    Ok(GadgetGraph {
        k: 2,
        aux_count: 0,
        edges,
        model: GadgetModel::Pairwise { g },
    })
}

/// Analytic minimum cut of `gg` with `i` support nodes on the source side.
pub fn gadget_cut_eval(gg: &GadgetGraph, i: usize) -> Result<f64, GadgetError> {
    gg.cut_eval(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plcover::{greedy_pl_cover, symmetric_pl_cover, ConcaveSeq, MonotoneConcaveSeq};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
    }

    /// Minimum over auxiliary placements of the real-weighted cut.
    fn brute_cut(gg: &GadgetGraph, members: &[bool]) -> f64 {
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << gg.aux_count) {
            let aux: Vec<bool> = (0..gg.aux_count).map(|j| mask >> j & 1 == 1).collect();
            let on_source = |v: usize| {
                if v < gg.k {
                    members[v]
                } else if v < gg.source() {
                    aux[v - gg.k]
                } else {
                    v == gg.source()
                }
            };
            let cut: f64 = gg
                .edges
                .iter()
                .filter(|e| on_source(e.tail) && !on_source(e.head))
                .map(|e| e.weight)
                .sum();
            best = best.min(cut);
        }
        best
    }

    #[test]
    fn tent_to_cgf() {
        let pl = PlFunction::new(2, vec![1.0], vec![1.0, -1.0], 0.0).unwrap();
        let p = pl_to_cgf(&pl).unwrap();
        assert_eq!((p.z0, p.zk), (0.0, 0.0));
        assert_eq!(p.a, vec![1.0]);
        assert_eq!(p.b, vec![1.0]);
        let back = cgf_to_pl(&p).unwrap();
        assert_eq!(back, pl);
    }

    #[test]
    fn three_piece_to_cgf() {
        let pl = PlFunction::new(4, vec![1.0, 3.0], vec![3.0, 1.0, -3.0], 0.0).unwrap();
        let p = pl_to_cgf(&pl).unwrap();
        assert_eq!(p.a, vec![0.5, 1.0]);
        assert_eq!(p.b, vec![1.0, 3.0]);
        assert_eq!((p.z0, p.zk), (0.0, 0.5));
        let want = [0.0, 3.0, 4.0, 5.0, 2.0];
        for (i, w) in want.iter().enumerate() {
            assert!(close(p.eval(i as f64), *w));
        }
    }

    #[test]
    fn constant_has_no_terms() {
        let pl = PlFunction::new(3, vec![], vec![0.0], 3.0).unwrap();
        let p = pl_to_cgf(&pl).unwrap();
        assert_eq!(p.order(), 0);
        assert_eq!((p.z0, p.zk), (1.0, 1.0));
        let back = cgf_to_pl(&p).unwrap();
        assert_eq!(back.eval(2.0).unwrap(), 3.0);
    }

    #[test]
    fn round_trip_parabola_cover() {
        let g = ConcaveSeq::from_fn(6, |i| (i * (6 - i)) as f64).unwrap();
        let pl = greedy_pl_cover(&g, 0.0).unwrap();
        let back = cgf_to_pl(&pl_to_cgf(&pl).unwrap()).unwrap();
        for i in 0..=6 {
            assert!(close(back.eval(i as f64).unwrap(), g.value(i)));
        }
    }

    #[test]
    fn symmetric_conversion() {
        let pl = PlFunction::new(5, vec![3.0], vec![1.0, 0.0], 0.0).unwrap();
        let p = sym_pl_to_cgf(&pl).unwrap();
        assert_eq!((p.a.clone(), p.b.clone()), (vec![1.0], vec![3.0]));

        let pl = PlFunction::new(4, vec![1.0, 3.0], vec![2.0, 1.0, 0.0], 0.0).unwrap();
        let p = sym_pl_to_cgf(&pl).unwrap();
        assert_eq!(p.a, vec![1.0, 1.0]);
        assert_eq!(p.b, vec![1.0, 3.0]);
        assert_eq!(p.eval(2.0), 3.0);
    }

    #[test]
    fn symmetric_conversion_rejects_bad_class() {
        let pl = PlFunction::new(4, vec![2.0], vec![1.0, 0.0], 1.0).unwrap();
        assert!(matches!(
            sym_pl_to_cgf(&pl),
            Err(GadgetError::NotInClass(_))
        ));
        let pl = PlFunction::new(4, vec![2.0], vec![1.0, 0.5], 0.0).unwrap();
        assert!(matches!(
            sym_pl_to_cgf(&pl),
            Err(GadgetError::NotInClass(_))
        ));
    }

    #[test]
    fn delta_linear_is_one_term() {
        let h = MonotoneConcaveSeq::from_fn(5, |i| (i as f64).min(3.0)).unwrap();
        let p = sym_pl_to_cgf(&symmetric_pl_cover(&h, 0.0).unwrap()).unwrap();
        assert_eq!(p.a, vec![1.0]);
        assert_eq!(p.b, vec![3.0]);
    }

    #[test]
    fn linear_half_curve_breaks_at_r() {
        let h = MonotoneConcaveSeq::from_fn(4, |i| i as f64).unwrap();
        let pl = symmetric_pl_cover(&h, 0.0).unwrap();
        assert_eq!(pl.breakpoints(), &[4.0]);
        let p = sym_pl_to_cgf(&pl).unwrap();
        assert_eq!((p.a, p.b), (vec![1.0], vec![4.0]));
    }

    #[test]
    fn asymmetric_gadget_edges() {
        let p = CgfParams::new(2, 0.0, 0.0, vec![1.0], vec![1.0]).unwrap();
        let gg = cgf_to_gadget(&p).unwrap();
        assert_eq!(gg.aux_count, 1);
        assert_eq!(gg.edge_count(), 4);
        assert!(gg.edges.iter().all(|e| e.weight == 1.0));

        let p = CgfParams::new(3, 0.0, 0.0, vec![2.0], vec![1.0]).unwrap();
        let gg = cgf_to_gadget(&p).unwrap();
        let out: Vec<f64> = gg
            .edges
            .iter()
            .filter(|e| e.role == EdgeRole::SupportToAux)
            .map(|e| e.weight)
            .collect();
        assert_eq!(out, vec![4.0; 3]);
        assert!(gg
            .edges
            .iter()
            .filter(|e| e.role == EdgeRole::AuxToSupport)
            .all(|e| e.weight == 2.0));
        assert_eq!(gadget_cut_eval(&gg, 2).unwrap(), 2.0);
        assert_eq!(gadget_cut_eval(&gg, 0).unwrap(), 0.0);
        assert!(gadget_cut_eval(&gg, 4).is_err());
    }

    #[test]
    fn terminal_edges_counted() {
        let p = CgfParams::new(4, 0.5, 0.0, vec![1.0, 2.0], vec![1.0, 2.5]).unwrap();
        assert_eq!(cgf_to_gadget(&p).unwrap().edge_count(), 4 * 4 + 4);
    }

    #[test]
    fn rejects_breakpoint_at_k() {
        assert!(CgfParams::new(3, 0.0, 0.0, vec![1.0], vec![3.0]).is_err());
        assert!(CgfParams::new(3, 0.0, 0.0, vec![0.0], vec![1.0]).is_err());
        assert!(CgfParams::new(3, -1.0, 0.0, vec![], vec![]).is_err());
        assert!(CgfParams::new(3, 0.0, 0.0, vec![1.0, 1.0], vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn symmetric_gadget_models_capped_min() {
        let p = SymCgfParams::new(1, vec![1.0], vec![1.0]).unwrap();
        let gg = sym_cgf_to_gadget(&p, 3).unwrap();
        assert_eq!(gg.edge_count(), 7);
        for mask in 0u32..8 {
            let members: Vec<bool> = (0..3).map(|v| mask >> v & 1 == 1).collect();
            let i = mask.count_ones() as usize;
            let want = (i.min(3 - i)).min(1) as f64;
            assert_eq!(brute_cut(&gg, &members), want);
            assert_eq!(gadget_cut_eval(&gg, i).unwrap(), want);
        }

        let p = SymCgfParams::new(5, vec![1.0], vec![5000.0]).unwrap();
        assert!(!p.is_canonical());
        let gg = sym_cgf_to_gadget(&p, 10).unwrap();
        for i in 0..=10 {
            assert_eq!(gadget_cut_eval(&gg, i).unwrap(), i.min(10 - i) as f64);
        }
        assert!(sym_cgf_to_gadget(&p, 12).is_err());
    }

    #[test]
    fn clique_cover_symmetric_gadget_matches_enumeration() {
        let k = 8;
        let h = MonotoneConcaveSeq::from_fn(k / 2, move |i| (i * (k - i)) as f64).unwrap();
        let pl = symmetric_pl_cover(&h, 1.0).unwrap();
        let p = sym_pl_to_cgf(&pl).unwrap();
        let gg = sym_cgf_to_gadget(&p, k).unwrap();
        for mask in 0u32..(1 << k) {
            let members: Vec<bool> = (0..k).map(|v| mask >> v & 1 == 1).collect();
            let i = mask.count_ones() as usize;
            let want = pl.eval(i.min(k - i) as f64).unwrap();
            assert!(close(brute_cut(&gg, &members), want));
        }
    }

    #[test]
    fn asymmetric_cover_gadget_matches_enumeration() {
        let g = ConcaveSeq::from_fn(5, |i| (i * (5 - i)) as f64 + 1.0).unwrap();
        let pl = greedy_pl_cover(&g, 0.0).unwrap();
        let gg = cgf_to_gadget(&pl_to_cgf(&pl).unwrap()).unwrap();
        for mask in 0u32..32 {
            let members: Vec<bool> = (0..5).map(|v| mask >> v & 1 == 1).collect();
            let i = mask.count_ones() as usize;
            assert!(close(brute_cut(&gg, &members), g.value(i)));
            assert!(close(gadget_cut_eval(&gg, i).unwrap(), g.value(i)));
        }
    }

    #[test]
    fn sqrt_cover_gadget_sandwich() {
        let g = ConcaveSeq::from_fn(20, |i| (i as f64).sqrt()).unwrap();
        let pl = greedy_pl_cover(&g, 0.1).unwrap();
        let gg = cgf_to_gadget(&pl_to_cgf(&pl).unwrap()).unwrap();
        for i in 0..=20 {
            let v = gadget_cut_eval(&gg, i).unwrap();
            let gi = g.value(i);
            assert!(v >= gi - 1e-12 && v <= 1.1 * gi + 1e-12, "i={i}");
        }
    }

    #[test]
    fn unary_and_pairwise_are_exact() {
        let gg = unary_gadget(0.0, 1.0).unwrap();
        assert_eq!(gg.edge_count(), 1);
        assert_eq!(gg.edges[0].role, EdgeRole::SupportToSink);

        let g = [1.0, 4.0, 2.0];
        let gg = pairwise_gadget(g).unwrap();
        for mask in 0u32..4 {
            let members: Vec<bool> = (0..2).map(|v| mask >> v & 1 == 1).collect();
            let i = mask.count_ones() as usize;
            assert!(close(brute_cut(&gg, &members), g[i]));
            assert_eq!(
                gg.fixed_cut_scaled(&members, &[], 1000),
                gg.cut_eval_scaled(i, 1000).unwrap()
            );
        }
        assert!(pairwise_gadget([0.0, 0.0, 3.0]).is_err());
    }

    #[test]
    fn scaling_preserves_shape() {
        let p = CgfParams::new(4, 0.5, 0.25, vec![1.0], vec![2.0]).unwrap();
        let gg = cgf_to_gadget(&p).unwrap();
        let half = gg.scaled(0.5);
        for i in 0..=4 {
            assert!(close(
                half.cut_eval(i).unwrap(),
                0.5 * gg.cut_eval(i).unwrap()
            ));
        }
    }
}
