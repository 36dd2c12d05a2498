use super::line::{Line, PlFunction};
use super::seq::{ConcaveSeq, MonotoneConcaveSeq};
use super::{check_eps, PlError, REL_TOL};

/// Finds the line that starts covering at `u` and reaches as far right as possible.
///
/// The line passes through `(u, (1 + eps) g(u))` and is rotated upward just
/// enough to stay above every later point. Returns the line together with the
/// first integer point it fails to cover (`k + 1` if it reaches the end).
pub fn next_line(g: &ConcaveSeq, u: usize, eps: f64) -> Result<(Line, usize), PlError> {
    check_eps(eps)?;
    let k = g.k();
    if u > k {
        return Err(PlError::Domain {
            name: "u",
            value: u as f64,
            range: "0..=k",
        });
    }
    if u + 1 >= k {
        let x = (k - 1) as f64;
        let line = Line::through(x, g.value(k - 1), x + 1.0, g.value(k));
        return Ok((line, k + 1));
    }

    let x0 = u as f64;
    let top = (1.0 + eps) * g.value(u);
    let mut line = Line::through(x0, top, x0 + 1.0, g.value(u + 1));
    for v in u + 2..=k {
        let x = v as f64;
        let gv = g.value(v);
        let lv = line.eval(x);
        let upper = (1.0 + eps) * gv;
        let mag = (line.slope * x).abs() + line.intercept.abs() + upper;
        if lv > upper + REL_TOL * mag {
            return Ok((line, v));
        }
        if lv < gv {
            line = Line::through(x0, top, x, gv);
        }
    }
    Ok((line, k + 1))
}

/// Greedy cover lines paired with the integer point where each one starts.
pub(crate) fn greedy_lines(g: &ConcaveSeq, eps: f64) -> Result<Vec<(usize, Line)>, PlError> {
    check_eps(eps)?;
    let mut out = Vec::new();
    let mut u = 0;
    while u <= g.k() {
        let (line, next) = next_line(g, u, eps)?;
        out.push((u, line));
        u = next;
    }
    Ok(out)
}

/// A `(1 + eps)`-approximation of `g` with the minimum number of pieces.
pub fn greedy_pl_cover(g: &ConcaveSeq, eps: f64) -> Result<PlFunction, PlError> {
    let lines: Vec<Line> = greedy_lines(g, eps)?.into_iter().map(|(_, l)| l).collect();
    let (env, bps) = lower_envelope(lines, Some(g.k() as f64));
    Ok(PlFunction::from_lines(g.k(), &env, bps))
}

/// A cover of a monotone half-curve `h` on `[0, r]` whose last piece is flat.
///
/// The flat tail at height `h(r)` replaces the last greedy line whenever it
/// already covers that line's points, so the result never uses more pieces
/// than the greedy cover plus one.
pub fn symmetric_pl_cover(h: &MonotoneConcaveSeq, eps: f64) -> Result<PlFunction, PlError> {
    let r = h.r();
    let mut lines = greedy_lines(h.as_concave(), eps)?;
    let hr = h.value(r);
    if let Some(&(u_last, _)) = lines.last() {
        if hr <= (1.0 + eps) * h.value(u_last) * (1.0 + REL_TOL) {
            lines.pop();
        }
    }
    let max_slope = lines
        .iter()
        .map(|(_, l)| l.slope.abs())
        .fold(0.0_f64, f64::max);
    let mut kept: Vec<Line> = lines
        .into_iter()
        .map(|(_, l)| l)
        .filter(|l| l.slope > REL_TOL * max_slope)
        .collect();
    kept.push(Line::flat(hr));

    let (mut env, mut bps) = lower_envelope(kept, None);
    let rf = r as f64;
    if let Some(cut) = bps.iter().position(|&b| b >= rf) {
        let flat = *env.last().expect("flat line survives");
        env.truncate(cut + 1);
        env.push(flat);
        bps.truncate(cut);
        bps.push(rf);
    }
    Ok(PlFunction::from_lines(r, &env, bps))
}

/// Lower envelope of `lines` on `[0, hi)`, as pieces in left-to-right order
/// plus the breakpoints between them. Without `hi` the envelope is unbounded
/// on the right.
pub(crate) fn lower_envelope(mut lines: Vec<Line>, hi: Option<f64>) -> (Vec<Line>, Vec<f64>) {
    assert!(!lines.is_empty());
    lines.sort_by(|a, b| b.slope.total_cmp(&a.slope));
    let scale = lines.iter().map(|l| l.slope.abs()).fold(0.0_f64, f64::max);
    let tol = REL_TOL * scale;

    let mut merged: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        match merged.last_mut() {
            Some(prev) if prev.slope - l.slope <= tol => {
                if l.intercept < prev.intercept {
                    *prev = l;
                }
            }
            _ => merged.push(l),
        }
    }

    let mut stack: Vec<Line> = Vec::with_capacity(merged.len());
    let mut starts: Vec<f64> = Vec::with_capacity(merged.len());
    for l in merged {
        let mut x = 0.0;
        while let Some(top) = stack.last() {
            x = (l.intercept - top.intercept) / (top.slope - l.slope);
            if x <= *starts.last().unwrap() {
                stack.pop();
                starts.pop();
            } else {
                break;
            }
        }
        if stack.is_empty() {
            stack.push(l);
            starts.push(0.0);
        } else if hi.is_none_or(|h| x < h) {
            stack.push(l);
            starts.push(x);
        }
    }
    starts.remove(0);
    (stack, starts)
}
