//! Arithmetic-chain environment: a desk-scale stand-in for line-structured
//! math solutions.
//!
//! A solution starts from a given value and applies single-digit
//! operations, one per line, written `apply: a OP b = c`. The chain ends
//! with `the answer is \boxed{v}` (or a direct stop, in which case the
//! last result is graded). A step whose arithmetic is wrong, or whose
//! left operand disagrees with the running value, taints the chain: the
//! only continuation from a tainted state is `the answer is
//! \boxed{undefined}`, which never matches gold. Faulty steps are offered
//! as legal actions so that imperfect generation, error localization, and
//! step-quality scoring all have something real to detect.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use stepflow_core::hash::hash_parts;
use stepflow_core::{PartialSolution, Problem, Step};

use crate::env::Environment;
use crate::error::EnvError;

pub const UNDEFINED_ANSWER: &str = "the answer is \\boxed{undefined}";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainOp {
    Add,
    Sub,
    Mul,
}

impl ChainOp {
    fn symbol(self) -> char {
        match self {
            ChainOp::Add => '+',
            ChainOp::Sub => '-',
            ChainOp::Mul => '*',
        }
    }

    fn apply(self, a: i64, b: i64) -> Option<i64> {
        match self {
            ChainOp::Add => a.checked_add(b),
            ChainOp::Sub => a.checked_sub(b),
            ChainOp::Mul => a.checked_mul(b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ArithChainParams {
    pub n_problems: usize,
    pub start_min: i64,
    pub start_max: i64,
    pub digits: Vec<i64>,
    pub ops: Vec<ChainOp>,
    /// Maximum number of arithmetic steps per solution.
    pub max_depth: usize,
    /// Faulty step variants offered per state (wrong result numbers).
    pub faulty_per_state: usize,
    /// Operations whose result magnitude would exceed this are not offered.
    pub value_cap: i64,
    /// Enumeration bound for exact computations.
    pub state_cap: usize,
    pub seed: u64,
}

impl Default for ArithChainParams {
    fn default() -> Self {
        Self {
            n_problems: 16,
            start_min: 1,
            start_max: 9,
            digits: vec![2, 3, 4],
            ops: vec![ChainOp::Add, ChainOp::Sub, ChainOp::Mul],
            max_depth: 4,
            faulty_per_state: 2,
            value_cap: 10_000,
            state_cap: 100_000,
            seed: 0,
        }
    }
}

impl ArithChainParams {
    pub fn validate(&self) -> Result<(), EnvError> {
        let bad = |key: &str, message: &str| EnvError::InvalidConfig {
            key: key.to_string(),
            message: message.to_string(),
        };
        if self.n_problems == 0 {
            return Err(bad("n_problems", "must be >= 1"));
        }
        if self.start_min > self.start_max {
            return Err(bad("start_min", "must be <= start_max"));
        }
        if self.digits.is_empty() || self.digits.iter().any(|d| *d <= 0 || *d > 9) {
            return Err(bad("digits", "must be non-empty digits in 1..=9"));
        }
        if self.ops.is_empty() {
            return Err(bad("ops", "must be non-empty"));
        }
        if self.max_depth == 0 {
            return Err(bad("max_depth", "must be >= 1"));
        }
        if self.value_cap <= 0 {
            return Err(bad("value_cap", "must be positive"));
        }
        if self.state_cap == 0 {
            return Err(bad("state_cap", "must be >= 1"));
        }
        Ok(())
    }
}

/// Parsed view of a chain state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct ChainState {
    value: i64,
    depth: usize,
    tainted: bool,
    answered: bool,
}

pub struct ArithChainEnv {
    params: ArithChainParams,
    problems: Vec<Problem>,
    starts: HashMap<String, i64>,
    // Exact success probabilities are memoized per (problem, state).
    success_memo: Mutex<HashMap<(String, ChainState), f64>>,
}

impl ArithChainEnv {
    pub fn new(params: ArithChainParams) -> Result<Self, EnvError> {
        params.validate()?;
        let mut rng = rand_seed(params.seed);
        let mut problems = Vec::with_capacity(params.n_problems);
        let mut starts = HashMap::new();
        for i in 0..params.n_problems {
            let start = rng.gen_range(params.start_min..=params.start_max);
            // A random coherent walk guarantees the target is reachable.
            let walk_len = rng.gen_range(1..=params.max_depth);
            let mut value = start;
            for _ in 0..walk_len {
                let op = params.ops[rng.gen_range(0..params.ops.len())];
                let digit = params.digits[rng.gen_range(0..params.digits.len())];
                match op.apply(value, digit) {
                    Some(v) if v.abs() <= params.value_cap => value = v,
                    _ => {}
                }
            }
            let target = value;
            let id = format!("arith-{i:04}");
            let statement = format!(
                "Start with {start}. Reach {target} in at most {} arithmetic steps, \
                 each written as 'apply: a OP b = c' with b a single digit. \
                 Finish with 'the answer is \\boxed{{value}}'.",
                params.max_depth
            );
            starts.insert(id.clone(), start);
            problems.push(Problem::new(id, statement, target.to_string()));
        }
        Ok(Self {
            params,
            problems,
            starts,
            success_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> &ArithChainParams {
        &self.params
    }

    fn start_value(&self, problem: &Problem) -> i64 {
        self.starts.get(&problem.id).copied().unwrap_or(0)
    }

    fn parse_state(&self, state: &PartialSolution) -> ChainState {
        let mut cs = ChainState {
            value: self.start_value(&state.problem),
            depth: 0,
            tainted: false,
            answered: false,
        };
        for step in &state.steps {
            if cs.answered {
                cs.tainted = true;
                continue;
            }
            if let Some(rest) = step.text.strip_prefix("the answer is \\boxed{") {
                let _ = rest;
                cs.answered = true;
                continue;
            }
            match parse_apply(&step.text) {
                Some((a, op, b, c)) => {
                    let expected = op.apply(a, b);
                    if a != cs.value || expected != Some(c) {
                        cs.tainted = true;
                    }
                    cs.value = c;
                    cs.depth += 1;
                }
                None => cs.tainted = true,
            }
        }
        cs
    }

    fn legal_from(&self, problem: &Problem, cs: ChainState, base_index: usize) -> Vec<Step> {
        if cs.answered {
            return Vec::new();
        }
        if cs.tainted {
            return vec![Step::new(UNDEFINED_ANSWER, base_index)];
        }
        let mut steps = Vec::new();
        if cs.depth < self.params.max_depth {
            let mut correct: Vec<(ChainOp, i64, i64)> = Vec::new();
            for &op in &self.params.ops {
                for &d in &self.params.digits {
                    if let Some(c) = op.apply(cs.value, d) {
                        if c.abs() <= self.params.value_cap {
                            correct.push((op, d, c));
                        }
                    }
                }
            }
            for &(op, d, c) in &correct {
                steps.push(Step::new(
                    format!("apply: {} {} {} = {}", cs.value, op.symbol(), d, c),
                    base_index,
                ));
            }
            // Faulty variants: plausible-looking steps whose result is off.
            let mut seen: Vec<i64> = Vec::new();
            for j in 0..self.params.faulty_per_state {
                if correct.is_empty() {
                    break;
                }
                let key = format!("{}|{}|{}", cs.value, cs.depth, j);
                let h = hash_parts(self.params.seed, &["faulty", &problem.id, &key]);
                let (op, d, c) = correct[(h % correct.len() as u64) as usize];
                let delta = 1 + ((h >> 8) % 3) as i64;
                let sign = if (h >> 16) % 2 == 0 { 1 } else { -1 };
                let wrong = c + sign * delta;
                if wrong.abs() > self.params.value_cap || seen.contains(&wrong) {
                    continue;
                }
                seen.push(wrong);
                steps.push(Step::new(
                    format!("apply: {} {} {} = {}", cs.value, op.symbol(), d, wrong),
                    base_index,
                ));
            }
        }
        if cs.depth >= 1 {
            steps.push(Step::new(
                format!("the answer is \\boxed{{{}}}", cs.value),
                base_index,
            ));
        }
        steps
    }

    fn success_from(&self, problem: &Problem, cs: ChainState, target: i64) -> f64 {
        if let Some(p) = self
            .success_memo
            .lock()
            .unwrap()
            .get(&(problem.id.clone(), cs))
        {
            return *p;
        }
        let p = self.success_uncached(problem, cs, target);
        self.success_memo
            .lock()
            .unwrap()
            .insert((problem.id.clone(), cs), p);
        p
    }

    fn success_uncached(&self, problem: &Problem, cs: ChainState, target: i64) -> f64 {
        if cs.answered {
            // Terminal: tainted chains boxed "undefined", clean chains boxed
            // their running value.
            return if !cs.tainted && cs.value == target {
                1.0
            } else {
                0.0
            };
        }
        let steps = self.legal_from(problem, cs, 0);
        let stop = self.chain_can_terminate(cs);
        let options = steps.len() + usize::from(stop);
        if options == 0 {
            return 0.0;
        }
        let mut total = 0.0;
        if stop {
            // Direct stop is graded on the last result value.
            total += f64::from(u8::from(cs.value == target));
        }
        for step in &steps {
            let child = self.child_state(cs, &step.text);
            total += self.success_from(problem, child, target);
        }
        total / options as f64
    }

    fn child_state(&self, cs: ChainState, step_text: &str) -> ChainState {
        let mut child = cs;
        if cs.answered {
            child.tainted = true;
            return child;
        }
        if step_text.starts_with("the answer is \\boxed{") {
            child.answered = true;
            return child;
        }
        match parse_apply(step_text) {
            Some((a, op, b, c)) => {
                if a != cs.value || op.apply(a, b) != Some(c) {
                    child.tainted = true;
                }
                child.value = c;
                child.depth += 1;
            }
            None => child.tainted = true,
        }
        child
    }

    fn chain_can_terminate(&self, cs: ChainState) -> bool {
        cs.answered || (!cs.tainted && cs.depth >= 1)
    }
}

impl Environment for ArithChainEnv {
    fn problems(&self) -> &[Problem] {
        &self.problems
    }

    fn legal_steps(&self, state: &PartialSolution) -> Vec<Step> {
        let cs = self.parse_state(state);
        self.legal_from(&state.problem, cs, state.steps.len())
    }

    fn can_terminate(&self, state: &PartialSolution) -> bool {
        self.chain_can_terminate(self.parse_state(state))
    }

    fn success_probability(&self, state: &PartialSolution) -> Result<f64, EnvError> {
        let target: i64 = state.problem.gold_answer.parse().map_err(|_| {
            EnvError::Capability("problem gold answer is not an integer".to_string())
        })?;
        let cs = self.parse_state(state);
        Ok(self.success_from(&state.problem, cs, target))
    }

    fn state_key(&self, state: &PartialSolution) -> String {
        let cs = self.parse_state(state);
        format!(
            "v{};d{};t{};a{}",
            cs.value,
            cs.depth,
            u8::from(cs.tainted),
            u8::from(cs.answered)
        )
    }

    fn state_cap(&self) -> usize {
        self.params.state_cap
    }
}

fn parse_apply(text: &str) -> Option<(i64, ChainOp, i64, i64)> {
    let rest = text.strip_prefix("apply: ")?;
    let (lhs, result) = rest.split_once('=')?;
    let result: i64 = result.trim().parse().ok()?;
    let mut parts = lhs.split_whitespace();
    let a: i64 = parts.next()?.parse().ok()?;
    let op = match parts.next()? {
        "+" => ChainOp::Add,
        "-" => ChainOp::Sub,
        "*" => ChainOp::Mul,
        _ => return None,
    };
    let b: i64 = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((a, op, b, result))
}

fn rand_seed(seed: u64) -> impl Rng {
    // Problem generation only; a small deterministic PCG-style stream.
    struct Mix(u64);
    impl RngCore for Mix {
        fn next_u32(&mut self) -> u32 {
            (self.next_u64() >> 32) as u32
        }
        fn next_u64(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
            stepflow_core::hash::mix64(self.0)
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            for chunk in dest.chunks_mut(8) {
                let bytes = self.next_u64().to_le_bytes();
                chunk.copy_from_slice(&bytes[..chunk.len()]);
            }
        }
        fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
            self.fill_bytes(dest);
            Ok(())
        }
    }
    Mix(stepflow_core::hash::mix64(seed))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn small_env() -> ArithChainEnv {
        ArithChainEnv::new(ArithChainParams {
            n_problems: 4,
            start_min: 2,
            start_max: 5,
            digits: vec![2, 3],
            ops: vec![ChainOp::Add, ChainOp::Sub],
            max_depth: 3,
            faulty_per_state: 1,
            seed: 11,
            ..ArithChainParams::default()
        })
        .unwrap()
    }

    fn state_with(env: &ArithChainEnv, idx: usize, lines: &[&str]) -> PartialSolution {
        let problem = Arc::new(env.problems()[idx].clone());
        let steps = lines
            .iter()
            .enumerate()
            .map(|(i, l)| Step::new((*l).to_string(), i))
            .collect();
        PartialSolution::with_steps(problem, steps)
    }

    #[test]
    fn legal_steps_include_correct_faulty_and_answer() {
        let env = small_env();
        let root = state_with(&env, 0, &[]);
        let steps = env.legal_steps(&root);
        // 4 correct (+2,+3,-2,-3), up to 1 faulty, no answer at depth 0.
        assert!(steps.len() >= 4);
        assert!(!env.can_terminate(&root));
        let consistent = steps
            .iter()
            .filter(|s| stepflow_core::text::arithmetic_consistency(&s.text) == Some(true))
            .count();
        assert_eq!(consistent, 4);
        assert!(steps.iter().all(|s| !s.text.contains("boxed")));
    }

    #[test]
    fn faulty_step_taints_and_forces_undefined_answer() {
        let env = small_env();
        let start = env.start_value(&env.problems()[0]);
        let bad = format!("apply: {start} + 2 = {}", start + 5);
        let state = state_with(&env, 0, &[&bad]);
        let steps = env.legal_steps(&state);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].text, UNDEFINED_ANSWER);
        assert!(!env.can_terminate(&state));
        assert_eq!(env.success_probability(&state).unwrap(), 0.0);
    }

    #[test]
    fn chain_break_taints() {
        let env = small_env();
        let start = env.start_value(&env.problems()[0]);
        let wrong_operand = format!("apply: {} + 2 = {}", start + 1, start + 3);
        let state = state_with(&env, 0, &[&wrong_operand]);
        assert!(env.state_key(&state).contains("t1"));
    }

    #[test]
    fn success_probability_is_one_at_correct_answered_state() {
        let env = small_env();
        for p in env.problems() {
            let problem = Arc::new(p.clone());
            let root = PartialSolution::new(problem);
            let prob = env.success_probability(&root).unwrap();
            assert!(prob > 0.0, "targets are reachable by construction");
            assert!(prob <= 1.0);
        }
    }

    #[test]
    fn answered_state_is_terminal() {
        let env = small_env();
        let start = env.start_value(&env.problems()[0]);
        let ok = format!("apply: {start} + 2 = {}", start + 2);
        let answer = format!("the answer is \\boxed{{{}}}", start + 2);
        let state = state_with(&env, 0, &[&ok, &answer]);
        assert!(env.legal_steps(&state).is_empty());
        assert!(env.can_terminate(&state));
        let p = env.success_probability(&state).unwrap();
        let expected = f64::from(u8::from(
            (start + 2).to_string() == env.problems()[0].gold_answer,
        ));
        assert_eq!(p, expected);
    }
}
