use std::fmt;
use std::sync::Arc;

use super::{PlError, REL_TOL};

type ValueFn = dyn Fn(usize) -> f64 + Send + Sync;

#[derive(Clone)]
enum Source {
    Table(Arc<[f64]>),
    Func(Arc<ValueFn>),
}

/// A nonnegative concave function sampled at `0..=k`.
///
/// Values come either from an explicit table or from a closed-form function
/// that is evaluated on demand, so large supports never need a materialized
/// array. Both forms are validated in a single streaming pass on construction.
#[derive(Clone)]
pub struct ConcaveSeq {
    k: usize,
    source: Source,
}

impl ConcaveSeq {
    pub fn from_values(values: Vec<f64>) -> Result<Self, PlError> {
        if values.len() < 2 {
            return Err(PlError::EmptySupport);
        }
        let k = values.len() - 1;
        validate_concave(k, |i| values[i])?;
        Ok(Self {
            k,
            source: Source::Table(values.into()),
        })
    }

    pub fn from_fn<F>(k: usize, f: F) -> Result<Self, PlError>
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        if k == 0 {
            return Err(PlError::EmptySupport);
        }
        validate_concave(k, &f)?;
        Ok(Self {
            k,
            source: Source::Func(Arc::new(f)),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `g(i)`. Panics if `i > k`.
    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        assert!(i <= self.k, "index {i} outside 0..={}", self.k);
        match &self.source {
            Source::Table(v) => v[i],
            Source::Func(f) => f(i),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..=self.k).map(|i| self.value(i)).collect()
    }

    /// Smallest index attaining the maximum value.
    pub fn peak(&self) -> usize {
        let mut best = 0;
        let mut best_val = self.value(0);
        for i in 1..=self.k {
            let v = self.value(i);
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        best
    }
}

impl fmt::Debug for ConcaveSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.source {
            Source::Table(_) => "table",
            Source::Func(_) => "closed-form",
        };
        f.debug_struct("ConcaveSeq")
            .field("k", &self.k)
            .field("source", &kind)
            .finish()
    }
}

/// A concave, nondecreasing function on `0..=r` with `h(0) = 0`.
///
/// This is the half-curve `h` of a symmetric cardinality function
/// `g(i) = h(min(i, k - i))`.
#[derive(Clone, Debug)]
pub struct MonotoneConcaveSeq {
    inner: ConcaveSeq,
}

impl MonotoneConcaveSeq {
    pub fn from_values(values: Vec<f64>) -> Result<Self, PlError> {
        Self::wrap(ConcaveSeq::from_values(values)?)
    }

    pub fn from_fn<F>(r: usize, f: F) -> Result<Self, PlError>
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        Self::wrap(ConcaveSeq::from_fn(r, f)?)
    }

    fn wrap(inner: ConcaveSeq) -> Result<Self, PlError> {
        let h0 = inner.value(0);
        if h0 != 0.0 {
            return Err(PlError::NonzeroOrigin(h0));
        }
        let mut prev = h0;
        for i in 1..=inner.k() {
            let v = inner.value(i);
            if v < prev - REL_TOL * prev.abs() {
                return Err(PlError::NotMonotone { index: i });
            }
            prev = v;
        }
        Ok(Self { inner })
    }

    pub fn r(&self) -> usize {
        self.inner.k()
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.inner.value(i)
    }

    pub fn as_concave(&self) -> &ConcaveSeq {
        &self.inner
    }
}

fn validate_concave(k: usize, f: impl Fn(usize) -> f64) -> Result<(), PlError> {
    let check = |i: usize| {
        let v = f(i);
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(PlError::InvalidValue { index: i, value: v })
        }
    };
    let mut a = check(0)?;
    let mut b = check(1)?;
    for i in 2..=k {
        let c = check(i)?;
        // (c - b) <= (b - a), scaled to the magnitudes involved
        let slack = REL_TOL * (a.abs() + b.abs() + c.abs());
        if (c - b) > (b - a) + slack {
            return Err(PlError::NotConcave { index: i - 1 });
        }
        a = b;
        b = c;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_and_negative() {
        assert_eq!(
            ConcaveSeq::from_values(vec![1.0]).unwrap_err(),
            PlError::EmptySupport
        );
        assert!(matches!(
            ConcaveSeq::from_values(vec![0.0, -1.0, 0.0]),
            Err(PlError::InvalidValue { index: 1, .. })
        ));
        assert!(matches!(
            ConcaveSeq::from_values(vec![0.0, f64::NAN]),
            Err(PlError::InvalidValue { index: 1, .. })
        ));
    }

    #[test]
    fn rejects_convex_kink() {
        assert_eq!(
            ConcaveSeq::from_values(vec![0.0, 1.0, 1.0, 3.0]).unwrap_err(),
            PlError::NotConcave { index: 2 }
        );
    }

    #[test]
    fn lazy_source_matches_table() {
        let lazy = ConcaveSeq::from_fn(30, |i| (i as f64).sqrt()).unwrap();
        let table = ConcaveSeq::from_values((0..=30).map(|i| (i as f64).sqrt()).collect()).unwrap();
        assert_eq!(lazy.values(), table.values());
        assert_eq!(lazy.peak(), 30);
    }

    #[test]
    fn monotone_requires_zero_origin_and_growth() {
        assert!(matches!(
            MonotoneConcaveSeq::from_values(vec![1.0, 2.0]),
            Err(PlError::NonzeroOrigin(_))
        ));
        assert!(matches!(
            MonotoneConcaveSeq::from_values(vec![0.0, 2.0, 1.0]),
            Err(PlError::NotMonotone { index: 2 })
        ));
        let h = MonotoneConcaveSeq::from_values(vec![0.0, 1.0, 1.5, 1.5]).unwrap();
        assert_eq!(h.r(), 3);
    }

    #[test]
    fn peak_is_first_maximum() {
        let g = ConcaveSeq::from_values(vec![0.0, 2.0, 2.0, 1.0]).unwrap();
        assert_eq!(g.peak(), 1);
    }
}
