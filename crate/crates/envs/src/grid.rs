//! Flow-grid environment: the standard exact-check setting for
//! reward-proportional sampling.
//!
//! States are cells of an `H^D` lattice reached from the origin by
//! monotone coordinate increments; the trajectory may stop at any cell,
//! making every cell a terminal. Moves are restricted to nondecreasing
//! dimension order (all dim-0 increments before dim-1, and so on), so each
//! cell is reached by exactly one step sequence. That keeps the transition
//! graph a tree, which is the structure the subtrajectory balance loss
//! assumes: with merging paths the loss would drive terminal probabilities
//! toward path-count-weighted rewards rather than the rewards themselves.
//!
//! The default reward is a two-mode function: two high-reward arms along
//! the first two axes, separated by a heavily penalized mixed region. The
//! reward is constructed to decay along every edge, which is exactly the
//! shape a product of per-step scores in (0,1) can represent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use stepflow_core::{PartialSolution, Problem, Step};

use crate::env::Environment;
use crate::error::EnvError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum GridReward {
    /// Two high-reward arms along the first two axes. `keep[i]` is the
    /// per-move retention in dimension `i`; entering a second nonzero
    /// dimension multiplies by `cross_penalty` once per extra mixed
    /// dimension.
    TwoArm {
        keep: Vec<f64>,
        cross_penalty: f64,
    },
    /// `ratio^(sum of coordinates)`: constant per-step score everywhere.
    Geometric { ratio: f64 },
    /// Explicit per-cell rewards keyed by the cell state key.
    Cells { table: BTreeMap<String, f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowGridParams {
    pub dims: usize,
    pub side: usize,
    pub reward: GridReward,
    pub state_cap: usize,
}

impl Default for FlowGridParams {
    fn default() -> Self {
        Self {
            dims: 2,
            side: 8,
            reward: GridReward::TwoArm {
                keep: vec![0.9, 0.88],
                cross_penalty: 0.02,
            },
            state_cap: 100_000,
        }
    }
}

impl FlowGridParams {
    pub fn validate(&self) -> Result<(), EnvError> {
        let bad = |key: &str, message: String| EnvError::InvalidConfig {
            key: key.to_string(),
            message,
        };
        if self.dims == 0 {
            return Err(bad("dims", "must be >= 1".into()));
        }
        if self.side < 2 {
            return Err(bad("side", "must be >= 2".into()));
        }
        match &self.reward {
            GridReward::TwoArm {
                keep,
                cross_penalty,
            } => {
                if keep.len() != self.dims {
                    return Err(bad(
                        "reward.keep",
                        format!("needs one retention factor per dimension ({})", self.dims),
                    ));
                }
                if keep.iter().any(|k| !(*k > 0.0 && *k < 1.0)) {
                    return Err(bad("reward.keep", "factors must lie in (0, 1)".into()));
                }
                if !(*cross_penalty > 0.0 && *cross_penalty < 1.0) {
                    return Err(bad("reward.cross_penalty", "must lie in (0, 1)".into()));
                }
            }
            GridReward::Geometric { ratio } => {
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(bad("reward.ratio", "must lie in (0, 1)".into()));
                }
            }
            GridReward::Cells { table } => {
                if table.values().any(|r| !(*r > 0.0) || !r.is_finite()) {
                    return Err(bad("reward.table", "rewards must be positive".into()));
                }
            }
        }
        if self.state_cap == 0 {
            return Err(bad("state_cap", "must be >= 1".into()));
        }
        Ok(())
    }
}

pub struct FlowGridEnv {
    params: FlowGridParams,
    problems: Vec<Problem>,
}

impl FlowGridEnv {
    pub fn new(params: FlowGridParams) -> Result<Self, EnvError> {
        params.validate()?;
        let statement = format!(
            "Navigate a {}^{} grid from the origin with moves 'move: dim i -> v' \
             (coordinates may only increase, in nondecreasing dimension order); \
             stop at any cell.",
            params.side, params.dims
        );
        let env = Self {
            params,
            problems: Vec::new(),
        };
        let best = env.best_cell();
        let gold = cell_key(&best);
        let problems = vec![Problem::new("grid-0", statement, gold)];
        Ok(Self { problems, ..env })
    }

    pub fn params(&self) -> &FlowGridParams {
        &self.params
    }

    /// Reward of a terminal cell; strictly positive and at most 1.
    pub fn cell_reward(&self, cell: &[usize]) -> f64 {
        match &self.params.reward {
            GridReward::TwoArm {
                keep,
                cross_penalty,
            } => {
                let mut r = 1.0;
                for (i, &x) in cell.iter().enumerate() {
                    r *= keep[i].powi(x as i32);
                }
                let nonzero = cell.iter().filter(|x| **x > 0).count();
                if nonzero > 1 {
                    r *= cross_penalty.powi((nonzero - 1) as i32);
                }
                r
            }
            GridReward::Geometric { ratio } => {
                ratio.powi(cell.iter().sum::<usize>() as i32)
            }
            GridReward::Cells { table } => {
                table.get(&cell_key(cell)).copied().unwrap_or(f64::MIN_POSITIVE)
            }
        }
    }

    fn best_cell(&self) -> Vec<usize> {
        let mut best = vec![0; self.params.dims];
        let mut best_r = self.cell_reward(&best);
        let mut cell = vec![0; self.params.dims];
        loop {
            let r = self.cell_reward(&cell);
            if r > best_r {
                best_r = r;
                best = cell.clone();
            }
            // Odometer increment over the lattice.
            let mut i = 0;
            loop {
                if i == self.params.dims {
                    return best;
                }
                cell[i] += 1;
                if cell[i] < self.params.side {
                    break;
                }
                cell[i] = 0;
                i += 1;
            }
        }
    }

    /// Parse the cell a state describes; `None` when a move line is
    /// malformed or violates monotone dimension order.
    pub fn parse_cell(&self, state: &PartialSolution) -> Option<Vec<usize>> {
        let mut cell = vec![0usize; self.params.dims];
        let mut min_dim = 0usize;
        for step in &state.steps {
            let (dim, to) = parse_move(&step.text)?;
            if dim >= self.params.dims || dim < min_dim {
                return None;
            }
            if to != cell[dim] + 1 || to > self.params.side - 1 {
                return None;
            }
            cell[dim] = to;
            min_dim = dim;
        }
        Some(cell)
    }
}

impl Environment for FlowGridEnv {
    fn problems(&self) -> &[Problem] {
        &self.problems
    }

    fn legal_steps(&self, state: &PartialSolution) -> Vec<Step> {
        let Some(cell) = self.parse_cell(state) else {
            return Vec::new();
        };
        let min_dim = cell
            .iter()
            .rposition(|x| *x > 0)
            .unwrap_or(0);
        let index = state.steps.len();
        (min_dim..self.params.dims)
            .filter(|&i| cell[i] < self.params.side - 1)
            .map(|i| Step::new(format!("move: dim {} -> {}", i, cell[i] + 1), index))
            .collect()
    }

    fn can_terminate(&self, _state: &PartialSolution) -> bool {
        true
    }

    fn is_correct_terminal(&self, state: &PartialSolution) -> bool {
        self.state_key(state) == state.problem.gold_answer
    }

    fn terminal_reward(&self, state: &PartialSolution) -> f64 {
        match self.parse_cell(state) {
            Some(cell) => self.cell_reward(&cell),
            None => f64::MIN_POSITIVE,
        }
    }

    fn state_key(&self, state: &PartialSolution) -> String {
        match self.parse_cell(state) {
            Some(cell) => cell_key(&cell),
            None => "cell(invalid)".to_string(),
        }
    }

    fn state_cap(&self) -> usize {
        self.params.state_cap
    }
}

pub(crate) fn cell_key(cell: &[usize]) -> String {
    let coords: Vec<String> = cell.iter().map(ToString::to_string).collect();
    format!("cell({})", coords.join(","))
}

fn parse_move(text: &str) -> Option<(usize, usize)> {
    let rest = text.strip_prefix("move: dim ")?;
    let (dim, to) = rest.split_once(" -> ")?;
    Some((dim.trim().parse().ok()?, to.trim().parse().ok()?))
}
