use std::collections::BTreeSet;

use super::line::Line;
use super::seq::ConcaveSeq;
use super::PlError;

fn check_positive_eps(eps: f64) -> Result<(), PlError> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(PlError::Domain {
            name: "eps",
            value: eps,
            range: "(0, inf)",
        })
    }
}

/// A cover built from interpolation secants at geometrically spaced points.
///
/// `g` is split at its first maximum into a nondecreasing half and a
/// nonincreasing half. On each half the secant over `[floor(y), floor(y) + 1]`
/// is taken for `y = 1, (1+eps), (1+eps)^2, ...`, measured from the outer
/// end, together with the secant through the two outermost points. Each secant
/// covers a factor `1 + eps` of distance, so at most
/// `2 + 2 ceil(log_{1+eps} k)` lines are produced. Not minimal; used as a
/// comparator for [`greedy_pl_cover`](super::greedy_pl_cover).
pub fn tangent_log_cover(g: &ConcaveSeq, eps: f64) -> Result<Vec<Line>, PlError> {
    check_positive_eps(eps)?;
    let k = g.k();
    let p = g.peak();
    let ratio = 1.0 + eps;

    // left endpoints of the unit secants to keep
    let mut lefts = BTreeSet::new();
    lefts.insert(0);
    lefts.insert(k - 1);
    let mut y = 1.0_f64;
    while y < p as f64 {
        lefts.insert(y.floor() as usize);
        y *= ratio;
    }
    let mut y = 1.0_f64;
    while y < (k - p) as f64 {
        lefts.insert(k - y.floor() as usize - 1);
        y *= ratio;
    }

    Ok(lefts
        .into_iter()
        .map(|i| {
            let x = i as f64;
            Line::through(x, g.value(i), x + 1.0, g.value(i + 1))
        })
        .collect())
}

/// Tangent-line cover of `x (k - x)` on `[1, k/2]`, plus the line `(k - 1) x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueCover {
    pub k: usize,
    pub eps: f64,
    /// Points where the emitted tangents touch the curve, in increasing order.
    pub tangent_points: Vec<f64>,
}

impl CliqueCover {
    pub fn base(&self) -> Line {
        Line::new(self.k as f64 - 1.0, 0.0)
    }

    /// The tangent to `x (k - x)` at `t`.
    pub fn tangent(&self, t: f64) -> Line {
        Line::new(self.k as f64 - 2.0 * t, t * t)
    }

    pub fn lines(&self) -> Vec<Line> {
        std::iter::once(self.base())
            .chain(self.tangent_points.iter().map(|&t| self.tangent(t)))
            .collect()
    }

    pub fn len(&self) -> usize {
        1 + self.tangent_points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Line count after mirroring the cover onto `[k/2, k]`.
    pub fn doubled_count(&self) -> usize {
        2 * self.len()
    }
}

/// Covers `x (k - x)` by repeatedly choosing the tangent that reaches farthest.
///
/// Starting from the covered point `z = 1`, the tangent point `t` is the
/// largest one whose tangent still `(1 + eps)`-covers `z`, and the new `z` is
/// the farthest point that tangent covers. Stops once `z >= k/2`.
pub fn clique_cover(k: usize, eps: f64) -> Result<CliqueCover, PlError> {
    check_positive_eps(eps)?;
    if k < 2 {
        return Err(PlError::Domain {
            name: "k",
            value: k as f64,
            range: "[2, inf)",
        });
    }
    let kf = k as f64;
    let half = kf / 2.0;
    let denom = 2.0 * (1.0 + eps);
    let mut z = 1.0_f64;
    let mut tangent_points = Vec::new();
    loop {
        let t = z + (z * (kf - z) * eps).sqrt();
        let disc = (kf * kf * eps * eps + 4.0 * eps * t * (kf - t)).max(0.0);
        z = t / (1.0 + eps) + kf * eps / denom + disc.sqrt() / denom;
        tangent_points.push(t);
        if z >= half {
            break;
        }
    }
    Ok(CliqueCover {
        k,
        eps,
        tangent_points,
    })
}

/// Pieces needed to interpolate `k + 1` points by joining disjoint pairs.
pub fn pairing_bound(k: usize) -> usize {
    1 + k / 2
}

/// `2 + 2 ceil(log_{1+eps} k)`, or `None` when `eps = 0`.
pub fn log_cover_bound(k: usize, eps: f64) -> Option<usize> {
    if eps.is_nan() || eps <= 0.0 || k == 0 {
        return None;
    }
    let logs = (k as f64).ln() / eps.ln_1p();
    // exact powers of 1 + eps land a hair above the integer
    let ceil = (logs - 1e-9).ceil().max(0.0) as usize;
    Some(2 + 2 * ceil)
}
