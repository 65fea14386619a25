use rand::RngCore;
use stepflow_core::{answers_equal, extract_final_answer, PartialSolution, Problem, Step};

use crate::error::{EnvError, GenError};

/// Hard safety cap on completion length; finite environments terminate far
/// below this.
pub const COMPLETION_STEP_CAP: usize = 10_000;

/// A candidate next step together with the natural log of its proposal
/// probability under the generator's tempered distribution. Remote
/// generators may not report probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct StepProposal {
    pub step: Step,
    pub logprob: Option<f64>,
}

/// A finite-DAG reasoning environment over one or more problems.
///
/// States are [`PartialSolution`]s; the environment derives everything it
/// needs by parsing the step texts, so any state handed back by a
/// generator, a policy, or a test fixture is acceptable. All methods must
/// be pure functions of the state so instances can be shared across
/// threads.
pub trait Environment: Send + Sync {
    fn problems(&self) -> &[Problem];

    fn problem(&self, id: &str) -> Result<&Problem, EnvError> {
        self.problems()
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| EnvError::UnknownProblem(id.to_string()))
    }

    /// Continuation steps legal from this state, in a deterministic order.
    /// Empty for states whose only option is to terminate.
    fn legal_steps(&self, state: &PartialSolution) -> Vec<Step>;

    /// Whether the trajectory may end here (the state connects to the sink).
    fn can_terminate(&self, state: &PartialSolution) -> bool;

    /// Correctness oracle for a terminal state. The default grades the
    /// solution text: extracted final answer versus the gold answer.
    fn is_correct_terminal(&self, state: &PartialSolution) -> bool {
        match extract_final_answer(&state.text()) {
            Some(answer) => answers_equal(&answer, &state.problem.gold_answer),
            None => false,
        }
    }

    /// Reward attached to terminating at this state. Defaults to the
    /// 1.0 / 0.0 correctness indicator; reward-structured environments
    /// override this with a strictly positive function.
    fn terminal_reward(&self, state: &PartialSolution) -> f64 {
        if self.is_correct_terminal(state) {
            1.0
        } else {
            0.0
        }
    }

    /// Exact probability that a uniformly random legal completion from
    /// `state` reaches a correct terminal. Environments without a
    /// correctness structure return a capability error.
    fn success_probability(&self, state: &PartialSolution) -> Result<f64, EnvError> {
        let _ = state;
        Err(EnvError::Capability(
            "success_probability is not supported by this environment".to_string(),
        ))
    }

    /// Canonical identity of a state. States with equal keys must agree on
    /// legal steps, termination, and rewards; enumeration merges on it.
    fn state_key(&self, state: &PartialSolution) -> String;

    /// Enumeration bound for exact computations over the transition graph.
    fn state_cap(&self) -> usize {
        100_000
    }
}

/// Something that can propose next steps and sample full completions.
/// Implemented by the uniform reference generator here, by the trainable
/// policy adaptor, and by the remote-model client.
pub trait StepGenerator: Send + Sync {
    /// Sample `k` candidate next steps from the tempered proposal
    /// distribution. Errors on terminal states.
    fn propose_steps(
        &self,
        state: &PartialSolution,
        k: usize,
        temperature: f64,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<StepProposal>, GenError>;

    /// Sample one completion from `state` to a terminal, returning the new
    /// steps only.
    fn complete(
        &self,
        state: &PartialSolution,
        temperature: f64,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Step>, GenError>;
}

/// The reference generator: uniform over the options available at each
/// state (legal steps, plus termination where allowed). The tempered
/// uniform distribution is uniform at every temperature.
pub struct UniformGenerator<E: Environment + ?Sized> {
    env: std::sync::Arc<E>,
}

impl<E: Environment + ?Sized> UniformGenerator<E> {
    pub fn new(env: std::sync::Arc<E>) -> Self {
        Self { env }
    }
}

impl<E: Environment + ?Sized> StepGenerator for UniformGenerator<E> {
    fn propose_steps(
        &self,
        state: &PartialSolution,
        k: usize,
        _temperature: f64,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<StepProposal>, GenError> {
        let steps = self.env.legal_steps(state);
        if steps.is_empty() {
            return Err(GenError::TerminalState);
        }
        let logprob = -(steps.len() as f64).ln();
        Ok((0..k)
            .map(|_| {
                let idx = uniform_index(rng, steps.len());
                StepProposal {
                    step: steps[idx].clone(),
                    logprob: Some(logprob),
                }
            })
            .collect())
    }

    fn complete(
        &self,
        state: &PartialSolution,
        _temperature: f64,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<Step>, GenError> {
        let mut current = state.clone();
        let mut new_steps = Vec::new();
        for _ in 0..COMPLETION_STEP_CAP {
            let steps = self.env.legal_steps(&current);
            let stop_allowed = self.env.can_terminate(&current);
            let options = steps.len() + usize::from(stop_allowed);
            if options == 0 {
                // Unreachable for well-formed environments: every state
                // offers a step or may terminate.
                return Err(GenError::Backend(format!(
                    "dead state with no options: {}",
                    self.env.state_key(&current)
                )));
            }
            let choice = uniform_index(rng, options);
            if choice == steps.len() {
                return Ok(new_steps);
            }
            let step = steps[choice].clone();
            current.steps.push(step.clone());
            new_steps.push(step);
        }
        Err(GenError::RunawayCompletion(COMPLETION_STEP_CAP))
    }
}

/// Unbiased uniform index draw from a raw RNG stream.
pub(crate) fn uniform_index(rng: &mut dyn RngCore, n: usize) -> usize {
    debug_assert!(n > 0);
    // Rejection sampling to avoid modulo bias.
    let n = n as u64;
    let zone = u64::MAX - (u64::MAX % n);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % n) as usize;
        }
    }
}
