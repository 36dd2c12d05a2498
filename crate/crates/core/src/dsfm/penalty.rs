use crate::plcover::{ConcaveSeq, PlError};

use super::DsfmError;

/// A concave cardinality penalty `g(|A|)` for a component of size `k`.
///
/// The four closed forms depend on `m = min(|A|, k - |A|)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PenaltySpec {
    /// `min(m, delta)`.
    DeltaLinear(f64),
    /// `|A| (k - |A|) / (k - 1)`.
    Clique,
    /// `sqrt(m)`.
    Sqrt,
    /// `m^p` for `p` in `(0, 1]`.
    Pow(f64),
    /// `values[|A|]` for `k + 1` values.
    ExplicitAsym(Vec<f64>),
    /// `values[m]` for `k / 2 + 1` nondecreasing values.
    ExplicitSym(Vec<f64>),
}

impl PenaltySpec {
    pub fn validate(&self, k: usize) -> Result<(), DsfmError> {
        let bad = |msg: String| Err(DsfmError::Validation(msg));
        match self {
            Self::DeltaLinear(d) if !(d.is_finite() && *d > 0.0) => {
                bad(format!("delta-linear threshold {d} must be positive"))
            }
            Self::Pow(p) if !(*p > 0.0 && *p <= 1.0) => {
                bad(format!("power {p} must lie in (0, 1]"))
            }
            Self::ExplicitAsym(v) => {
                if v.len() != k + 1 {
                    return bad(format!(
                        "explicit penalty has {} values, support of size {k} needs {}",
                        v.len(),
                        k + 1
                    ));
                }
                ConcaveSeq::from_values(v.clone())?;
                Ok(())
            }
            Self::ExplicitSym(v) => {
                if v.len() != k / 2 + 1 {
                    return bad(format!(
                        "symmetric penalty has {} values, support of size {k} needs {}",
                        v.len(),
                        k / 2 + 1
                    ));
                }
                if v.len() >= 2 {
                    ConcaveSeq::from_values(v.clone())?;
                } else if !(v[0].is_finite() && v[0] >= 0.0) {
                    return Err(PlError::InvalidValue {
                        index: 0,
                        value: v[0],
                    }
                    .into());
                }
                if let Some(i) = (1..v.len()).find(|&i| v[i] < v[i - 1]) {
                    return Err(PlError::NotMonotone { index: i }.into());
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `g(i)`; panics if `i > k`. Assumes the penalty is valid for `k`.
    pub fn value(&self, k: usize, i: usize) -> f64 {
        assert!(i <= k, "cardinality {i} outside 0..={k}");
        let m = i.min(k - i) as f64;
        match self {
            Self::DeltaLinear(d) => m.min(*d),
            Self::Clique if k <= 1 => 0.0,
            Self::Clique => (i * (k - i)) as f64 / (k - 1) as f64,
            Self::Sqrt => m.sqrt(),
            Self::Pow(p) => m.powf(*p),
            Self::ExplicitAsym(v) => v[i],
            Self::ExplicitSym(v) => v[i.min(k - i)],
        }
    }

    /// The penalty as a lazily evaluated concave sequence on `0..=k`.
    pub fn curve(&self, k: usize) -> Result<ConcaveSeq, DsfmError> {
        self.validate(k)?;
        let spec = self.clone();
        Ok(ConcaveSeq::from_fn(k, move |i| spec.value(k, i))?)
    }

    /// Whether `g(i) = g(k - i)` for all `i` and `g(0) = 0`, up to a relative
    /// tolerance of `1e-12`.
    pub fn is_symmetric_zero_ended(&self, k: usize) -> bool {
        match self {
            Self::DeltaLinear(_) | Self::Clique | Self::Sqrt | Self::Pow(_) => true,
            Self::ExplicitSym(v) => v[0] == 0.0,
            Self::ExplicitAsym(v) => {
                let tol = 1e-12 * v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
                v[0].abs() <= tol && (0..=k / 2).all(|i| (v[i] - v[k - i]).abs() <= tol)
            }
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self, Self::ExplicitAsym(_) | Self::ExplicitSym(_))
    }
}

/// `g(i)` after validating `i`.
pub fn evaluate_penalty(p: &PenaltySpec, k: usize, i: usize) -> Result<f64, DsfmError> {
    if i > k {
        return Err(DsfmError::Validation(format!(
            "cardinality {i} outside 0..={k}"
        )));
    }
    Ok(p.value(k, i))
}

/// Lifts an explicit penalty so its smallest value is zero when it was negative.
///
/// Returns the shifted penalty and the constant added to every value.
/// Closed-form penalties are already nonnegative and come back unchanged.
pub fn shift_to_nonnegative(p: &PenaltySpec) -> (PenaltySpec, f64) {
    let lift = |v: &[f64]| {
        let low = v.iter().copied().fold(f64::INFINITY, f64::min);
        if low < 0.0 {
            (v.iter().map(|x| x - low).collect(), -low)
        } else {
            (v.to_vec(), 0.0)
        }
    };
    match p {
        PenaltySpec::ExplicitAsym(v) => {
            let (v, s) = lift(v);
            (PenaltySpec::ExplicitAsym(v), s)
        }
        PenaltySpec::ExplicitSym(v) => {
            let (v, s) = lift(v);
            (PenaltySpec::ExplicitSym(v), s)
        }
        other => (other.clone(), 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(PenaltySpec::Clique.value(5, 2), 1.5);
        assert_eq!(PenaltySpec::DeltaLinear(5000.0).value(10, 4), 4.0);
        assert_eq!(PenaltySpec::Pow(0.9).value(8, 3), 3f64.powf(0.9));
        assert_eq!(PenaltySpec::Sqrt.value(9, 7), 2f64.sqrt());
        assert_eq!(PenaltySpec::Clique.value(1, 1), 0.0);
        assert!(evaluate_penalty(&PenaltySpec::Sqrt, 3, 4).is_err());
    }

    #[test]
    fn explicit_variants() {
        let sym = PenaltySpec::ExplicitSym(vec![0.0, 2.0, 3.0]);
        sym.validate(5).unwrap();
        assert_eq!(sym.value(5, 3), 3.0);
        assert_eq!(sym.value(5, 4), 2.0);
        assert!(sym.validate(6).is_err());
        assert!(PenaltySpec::ExplicitSym(vec![0.0, 2.0, 1.0])
            .validate(4)
            .is_err());

        let asym = PenaltySpec::ExplicitAsym(vec![1.0, 3.0, 2.0]);
        asym.validate(2).unwrap();
        assert!(!asym.is_symmetric_zero_ended(2));
        assert!(PenaltySpec::ExplicitAsym(vec![0.0, 3.0, 0.0]).is_symmetric_zero_ended(2));
        assert!(PenaltySpec::ExplicitAsym(vec![0.0, 0.0, 3.0, 0.0])
            .validate(3)
            .is_err());
    }

    #[test]
    fn parameter_ranges() {
        assert!(PenaltySpec::Pow(1.5).validate(4).is_err());
        assert!(PenaltySpec::Pow(0.0).validate(4).is_err());
        PenaltySpec::Pow(1.0).validate(4).unwrap();
        assert!(PenaltySpec::DeltaLinear(0.0).validate(4).is_err());
    }

    #[test]
    fn shifting() {
        let (p, s) = shift_to_nonnegative(&PenaltySpec::ExplicitAsym(vec![-1.0, 0.0, -1.0]));
        assert_eq!(p, PenaltySpec::ExplicitAsym(vec![0.0, 1.0, 0.0]));
        assert_eq!(s, 1.0);
        let q = PenaltySpec::ExplicitAsym(vec![0.0, 1.0, 0.0]);
        assert_eq!(shift_to_nonnegative(&q), (q.clone(), 0.0));
        assert_eq!(
            shift_to_nonnegative(&PenaltySpec::Sqrt),
            (PenaltySpec::Sqrt, 0.0)
        );
    }

    #[test]
    fn curve_is_lazy_for_large_supports() {
        let g = PenaltySpec::Clique.curve(1_000_000).unwrap();
        assert_eq!(g.k(), 1_000_000);
        assert_eq!(g.value(1), 1.0);
    }
}
