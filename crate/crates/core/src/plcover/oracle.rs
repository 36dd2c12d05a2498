use super::line::Line;
use super::seq::ConcaveSeq;
use super::{check_eps, PlError, REL_TOL};

/// Largest `k` accepted by [`min_cover_oracle`].
pub const ORACLE_MAX_K: usize = 2000;

/// Minimum number of lines in a `(1 + eps)`-cover of `g`, by exhaustive search.
///
/// Any cover line can be swapped for the canonical line anchored at its
/// leftmost covered point `u`: the line through `(u, (1 + eps) g(u))` with the
/// smallest slope that keeps it above `g`. That swap never shrinks the set of
/// covered points, so an optimal cover exists among the canonical lines (plus
/// the two boundary secants). Each canonical line covers an interval of
/// integers, and the fewest intervals covering `0..=k` is found by dynamic
/// programming. Runs in `O(k^2)` time.
pub fn min_cover_oracle(g: &ConcaveSeq, eps: f64) -> Result<usize, PlError> {
    check_eps(eps)?;
    let k = g.k();
    if k > ORACLE_MAX_K {
        return Err(PlError::TooLarge {
            k,
            limit: ORACLE_MAX_K,
        });
    }
    let vals = g.values();
    let mut candidates = Vec::with_capacity(k + 2);
    candidates.push(Line::through(0.0, vals[0], 1.0, vals[1]));
    candidates.push(Line::through(
        (k - 1) as f64,
        vals[k - 1],
        k as f64,
        vals[k],
    ));
    for u in 0..k {
        let top = (1.0 + eps) * vals[u];
        let slope = (u + 1..=k)
            .map(|j| (vals[j] - top) / (j - u) as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        candidates.push(Line::new(slope, top - slope * u as f64));
    }

    let mut intervals: Vec<(usize, usize)> = candidates
        .iter()
        .filter_map(|l| covered_interval(l, &vals, eps))
        .collect();
    intervals.sort_by_key(|&(a, b)| (b, a));

    // best[x] = fewest lines covering 0..x
    let mut best = vec![usize::MAX; k + 2];
    best[0] = 0;
    for (a, b) in intervals {
        let prev = best[a..=b].iter().copied().min().unwrap();
        if prev != usize::MAX && prev + 1 < best[b + 1] {
            best[b + 1] = prev + 1;
        }
    }
    Ok(best[k + 1])
}

/// The integer points `line` covers, or `None` if it dips below `g` anywhere.
fn covered_interval(line: &Line, vals: &[f64], eps: f64) -> Option<(usize, usize)> {
    let mut first = None;
    let mut last = 0;
    for (i, &gi) in vals.iter().enumerate() {
        let x = i as f64;
        let li = line.eval(x);
        let upper = (1.0 + eps) * gi;
        let mag = (line.slope * x).abs() + line.intercept.abs() + upper;
        if li < gi - REL_TOL * mag {
            return None;
        }
        if li <= upper + REL_TOL * mag {
            first.get_or_insert(i);
            last = i;
        }
    }
    first.map(|a| (a, last))
}
