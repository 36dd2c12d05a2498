use super::penalty::PenaltySpec;
use super::DsfmError;

/// One term of the objective: a penalty on how many support nodes are chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// Sorted, distinct ground-node indices.
    pub support: Vec<usize>,
    pub penalty: PenaltySpec,
}

impl Component {
    pub fn new(support: Vec<usize>, penalty: PenaltySpec) -> Self {
        Self { support, penalty }
    }

    pub fn k(&self) -> usize {
        self.support.len()
    }
}

/// Minimize `f(S) = sum_e g_e(|S ∩ e|)` over subsets `S` of `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DsfmInstance {
    pub n: usize,
    pub components: Vec<Component>,
}

impl DsfmInstance {
    pub fn new(n: usize, components: Vec<Component>) -> Result<Self, DsfmError> {
        let inst = Self { n, components };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), DsfmError> {
        for (idx, c) in self.components.iter().enumerate() {
            let ctx = |msg: String| DsfmError::Validation(format!("component {idx}: {msg}"));
            if c.support.is_empty() {
                return Err(ctx("support is empty".into()));
            }
            if c.support.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ctx("support must be sorted and free of duplicates".into()));
            }
            if let Some(&v) = c.support.iter().find(|&&v| v >= self.n) {
                return Err(ctx(format!("node {v} is outside 0..{}", self.n)));
            }
            c.penalty.validate(c.k()).map_err(|e| ctx(e.to_string()))?;
        }
        Ok(())
    }
}

/// `f(S)` for the set whose indicator is `members`.
pub fn evaluate_objective(inst: &DsfmInstance, members: &[bool]) -> f64 {
    assert_eq!(members.len(), inst.n, "membership has the wrong length");
    inst.components
        .iter()
        .map(|c| {
            let inside = c.support.iter().filter(|&&v| members[v]).count();
            c.penalty.value(c.k(), inside)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_sums_components() {
        let inst =
            DsfmInstance::new(3, vec![Component::new(vec![0, 1, 2], PenaltySpec::Clique)]).unwrap();
        assert_eq!(evaluate_objective(&inst, &[false; 3]), 0.0);
        assert_eq!(evaluate_objective(&inst, &[true, false, false]), 1.0);
    }

    #[test]
    fn rejects_malformed_supports() {
        let one = |support: Vec<usize>| {
            DsfmInstance::new(3, vec![Component::new(support, PenaltySpec::Sqrt)])
        };
        assert!(one(vec![]).is_err());
        assert!(one(vec![1, 0]).is_err());
        assert!(one(vec![1, 1]).is_err());
        assert!(one(vec![0, 3]).is_err());
        assert!(one(vec![0, 2]).is_ok());
    }
}
