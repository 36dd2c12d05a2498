use super::{PlError, REL_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    pub fn new(slope: f64, intercept: f64) -> Self {
        Self { slope, intercept }
    }

    /// The line through `(x1, y1)` and `(x2, y2)`; requires `x1 != x2`.
    pub fn through(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        let slope = (y2 - y1) / (x2 - x1);
        Self {
            slope,
            intercept: y1 - slope * x1,
        }
    }

    pub fn flat(value: f64) -> Self {
        Self {
            slope: 0.0,
            intercept: value,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// A continuous concave piecewise-linear function on `[0, k]`.
///
/// Piece `i` covers `[b_i, b_{i+1})` with `b_0 = 0` and the last piece
/// extends to `k`. `breakpoints` holds `b_1 < ... < b_{m-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlFunction {
    k: usize,
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    intercepts: Vec<f64>,
    value_at_zero: f64,
}

impl PlFunction {
    pub fn new(
        k: usize,
        breakpoints: Vec<f64>,
        slopes: Vec<f64>,
        value_at_zero: f64,
    ) -> Result<Self, PlError> {
        if k == 0 {
            return Err(PlError::EmptySupport);
        }
        if slopes.is_empty() {
            return Err(PlError::InvalidPl("no pieces".into()));
        }
        if breakpoints.len() + 1 != slopes.len() {
            return Err(PlError::InvalidPl(format!(
                "{} slopes need {} breakpoints, got {}",
                slopes.len(),
                slopes.len() - 1,
                breakpoints.len()
            )));
        }
        if !value_at_zero.is_finite() {
            return Err(PlError::InvalidPl("value at zero is not finite".into()));
        }
        if slopes.iter().any(|s| !s.is_finite()) {
            return Err(PlError::InvalidPl("non-finite slope".into()));
        }
        let mut prev = 0.0;
        for &b in &breakpoints {
            if !(b.is_finite() && b > prev && b <= k as f64) {
                return Err(PlError::InvalidPl(format!(
                    "breakpoints must increase strictly inside (0, {k}], got {b}"
                )));
            }
            prev = b;
        }
        for w in slopes.windows(2) {
            if w[1] >= w[0] {
                return Err(PlError::InvalidPl(
                    "slopes must be strictly decreasing".into(),
                ));
            }
        }
        let mut intercepts = Vec::with_capacity(slopes.len());
        intercepts.push(value_at_zero);
        for (i, &b) in breakpoints.iter().enumerate() {
            let y = slopes[i] * b + intercepts[i];
            intercepts.push(y - slopes[i + 1] * b);
        }
        Ok(Self {
            k,
            breakpoints,
            slopes,
            intercepts,
            value_at_zero,
        })
    }

    /// Builds the function from its lines, already in envelope order.
    pub(crate) fn from_lines(k: usize, lines: &[Line], breakpoints: Vec<f64>) -> Self {
        debug_assert_eq!(lines.len(), breakpoints.len() + 1);
        Self {
            k,
            breakpoints,
            slopes: lines.iter().map(|l| l.slope).collect(),
            intercepts: lines.iter().map(|l| l.intercept).collect(),
            value_at_zero: lines[0].intercept,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn intercepts(&self) -> &[f64] {
        &self.intercepts
    }

    pub fn value_at_zero(&self) -> f64 {
        self.value_at_zero
    }

    pub fn piece_count(&self) -> usize {
        self.slopes.len()
    }

    pub fn lines(&self) -> Vec<Line> {
        self.slopes
            .iter()
            .zip(&self.intercepts)
            .map(|(&s, &c)| Line::new(s, c))
            .collect()
    }

    pub fn eval(&self, x: f64) -> Result<f64, PlError> {
        let k = self.k as f64;
        if !(x >= 0.0 && x <= k) {
            return Err(PlError::Domain {
                name: "x",
                value: x,
                range: "[0, k]",
            });
        }
        let i = self.breakpoints.partition_point(|&b| b <= x);
        Ok(self.slopes[i] * x + self.intercepts[i])
    }

    /// Evaluates at an integer point; panics outside `0..=k`.
    pub(crate) fn at(&self, i: usize) -> f64 {
        self.eval(i as f64).expect("integer point in range")
    }

    /// Checks `g(i) <= l(i) <= (1 + eps) g(i)` at every integer point.
    pub fn approximates(&self, g: impl Fn(usize) -> f64, eps: f64) -> bool {
        (0..=self.k).all(|i| {
            let gi = g(i);
            let li = self.at(i);
            let mag = gi.abs() + li.abs();
            li >= gi - REL_TOL * mag && li <= (1.0 + eps) * gi + REL_TOL * mag
        })
    }
}

pub fn eval_pl(pl: &PlFunction, x: f64) -> Result<f64, PlError> {
    pl.eval(x)
}
