use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A question with a canonical gold answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Problem {
    /// Opaque identifier, unique within a dataset.
    pub id: String,
    /// Problem statement shown to the generator; never empty.
    pub statement: String,
    /// Canonical answer string used by the correctness check.
    pub gold_answer: String,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        gold_answer: impl Into<String>,
    ) -> Self {
        let statement = statement.into();
        debug_assert!(!statement.trim().is_empty(), "problem statement is empty");
        Self {
            id: id.into(),
            statement,
            gold_answer: gold_answer.into(),
        }
    }
}

/// One reasoning line. The text never contains line breaks and is non-empty
/// after trimming.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub text: String,
    /// 0-based position within its solution.
    pub index: usize,
}

impl Step {
    pub fn new(text: impl Into<String>, index: usize) -> Self {
        let text = text.into();
        debug_assert!(!text.contains('\n') && !text.contains('\r'));
        debug_assert!(!text.trim().is_empty());
        Self { text, index }
    }
}

/// A question plus the steps generated so far; the state object of the
/// step-level framework.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialSolution {
    pub problem: Arc<Problem>,
    pub steps: Vec<Step>,
}

impl PartialSolution {
    pub fn new(problem: Arc<Problem>) -> Self {
        Self {
            problem,
            steps: Vec::new(),
        }
    }

    pub fn with_steps(problem: Arc<Problem>, steps: Vec<Step>) -> Self {
        debug_assert!(steps.iter().enumerate().all(|(i, s)| s.index == i));
        Self { problem, steps }
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// The solution text: step lines joined with line breaks.
    pub fn text(&self) -> String {
        crate::parse::join_steps(&self.steps)
    }

    pub fn last_step(&self) -> Option<&Step> {
        self.steps.last()
    }
}

/// A sampled completion from a prefix to a final answer.
///
/// `correct == true` implies `final_answer` is present and matches gold
/// under answer equivalence; the reverse is not required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rollout {
    pub steps: Vec<Step>,
    pub final_answer: Option<String>,
    pub correct: bool,
}

/// Where a labeled step came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "mcts")]
    Mcts,
    #[serde(rename = "rollout-reuse")]
    RolloutReuse,
}

/// One PRM training record: a step in context with its estimated value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledStep {
    pub problem_id: String,
    pub question: String,
    /// Prefix text (steps joined with line breaks); empty for first steps.
    pub prefix: String,
    pub step: String,
    /// Value in [0, 1]; Monte Carlo estimate or group-assigned value.
    pub value: f64,
    pub provenance: Provenance,
}

impl LabeledStep {
    pub fn validate(&self) -> Result<(), crate::CoreError> {
        if !(0.0..=1.0).contains(&self.value) || !self.value.is_finite() {
            return Err(crate::CoreError::ContractViolation(format!(
                "labeled step value {} outside [0, 1]",
                self.value
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_step_rejects_out_of_range_value() {
        let mut rec = LabeledStep {
            problem_id: "p0".into(),
            question: "q".into(),
            prefix: String::new(),
            step: "s".into(),
            value: 0.5,
            provenance: Provenance::Mcts,
        };
        assert!(rec.validate().is_ok());
        rec.value = 1.5;
        assert!(rec.validate().is_err());
    }

    #[test]
    fn provenance_uses_spec_wire_names() {
        assert_eq!(
            serde_json::to_string(&Provenance::RolloutReuse).unwrap(),
            "\"rollout-reuse\""
        );
        assert_eq!(serde_json::to_string(&Provenance::Mcts).unwrap(), "\"mcts\"");
    }
}
