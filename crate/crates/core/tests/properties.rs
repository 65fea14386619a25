//! Property tests for the core parsing and answer-equivalence invariants.

use proptest::prelude::*;
use stepflow_core::{
    answers_equal, join_steps, split_into_steps, LabeledStep, Provenance, Step,
};

fn step_line() -> impl Strategy<Value = String> {
    // Non-blank single lines without line breaks.
    "[a-z0-9 +*=/-]{1,40}".prop_filter("non-blank", |s| !s.trim().is_empty())
}

proptest! {
    #[test]
    fn split_join_round_trips(lines in prop::collection::vec(step_line(), 0..12)) {
        let steps: Vec<Step> = lines
            .iter()
            .enumerate()
            .map(|(i, l)| Step::new(l.trim_end().to_string(), i))
            .collect();
        let joined = join_steps(&steps);
        let reparsed = split_into_steps(&joined);
        prop_assert_eq!(reparsed, steps);
    }

    #[test]
    fn answers_equal_is_reflexive_and_symmetric(a in "[0-9a-zA-Z./-]{1,12}", b in "[0-9a-zA-Z./-]{1,12}") {
        prop_assert!(answers_equal(&a, &a));
        prop_assert_eq!(answers_equal(&a, &b), answers_equal(&b, &a));
    }

    #[test]
    fn labeled_step_serialization_round_trips(value in 0.0f64..=1.0) {
        let rec = LabeledStep {
            problem_id: "p".into(),
            question: "q".into(),
            prefix: "x".into(),
            step: "y".into(),
            value,
            provenance: Provenance::Mcts,
        };
        rec.validate().unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        let back: LabeledStep = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rec);
    }
}
