use super::instance::{evaluate_objective, DsfmInstance};
use super::DsfmError;

/// Largest ground set [`brute_force`] will enumerate.
pub const BRUTE_FORCE_MAX_N: usize = 24;

/// Exact minimum of `inst` over all `2^n` subsets.
///
/// Subsets are visited in Gray-code order so each step flips one node and
/// only the components touching it are re-evaluated. Among minimizers the
/// lexicographically smallest indicator vector wins, comparing node 0 first.
pub fn brute_force(inst: &DsfmInstance) -> Result<(Vec<bool>, f64), DsfmError> {
    inst.validate()?;
    let n = inst.n;
    if n > BRUTE_FORCE_MAX_N {
        return Err(DsfmError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let tables: Vec<Vec<f64>> = inst
        .components
        .iter()
        .map(|c| (0..=c.k()).map(|i| c.penalty.value(c.k(), i)).collect())
        .collect();
    let mut touching = vec![Vec::new(); n];
    for (idx, c) in inst.components.iter().enumerate() {
        for &v in &c.support {
            touching[v].push(idx);
        }
    }

    let mut counts = vec![0usize; tables.len()];
    let mut current: f64 = tables.iter().map(|t| t[0]).sum();
    let mut best_mask = 0u32;
    let mut best = current;
    let tie = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
    // node 0 in the top bit, so smaller keys are lexicographically smaller
    let key = |mask: u32| mask.reverse_bits();

    let mut mask = 0u32;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        mask ^= 1 << v;
        let adding = mask >> v & 1 == 1;
        for &idx in &touching[v] {
            let t = &tables[idx];
            current -= t[counts[idx]];
            if adding {
                counts[idx] += 1;
            } else {
                counts[idx] -= 1;
            }
            current += t[counts[idx]];
        }
        if tie(current, best) {
            if key(mask) < key(best_mask) {
                best_mask = mask;
            }
        } else if current < best {
            best = current;
            best_mask = mask;
        }
    }

    let members: Vec<bool> = (0..n).map(|v| best_mask >> v & 1 == 1).collect();
    let value = evaluate_objective(inst, &members);
    Ok((members, value))
}
