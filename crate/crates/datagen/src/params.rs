use serde::{Deserialize, Serialize};

/// Knobs of the data-generation stage. The selection constants have no
/// published values; the defaults pick a mild quality preference, a mild
/// length penalty, and a small exploration constant, all configurable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DatagenParams {
    /// Rollouts per Monte Carlo evaluation.
    pub k: usize,
    /// Sampling temperature for rollouts.
    pub temperature: f64,
    /// Quality-preference base of the rollout value, in (0, 1].
    pub alpha: f64,
    /// Length-penalty base of the rollout value, in (0, 1].
    pub beta: f64,
    /// Length normalizer (characters of rollout text).
    pub length_norm: f64,
    /// Exploration intensity of the PUCT bonus.
    pub c_puct: f64,
    /// Total rollouts allowed per problem; each MC evaluation spends `k`.
    pub rollout_budget: usize,
    /// Prefixes deeper than this are not evaluated.
    pub max_tree_depth: usize,
    /// Runner iterations between checkpoint snapshots.
    pub checkpoint_interval: usize,
}

impl Default for DatagenParams {
    fn default() -> Self {
        Self {
            k: 96,
            temperature: 0.6,
            alpha: 0.5,
            beta: 0.9,
            length_norm: 500.0,
            c_puct: 0.125,
            rollout_budget: 9_600,
            max_tree_depth: 64,
            checkpoint_interval: 10,
        }
    }
}

impl DatagenParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.k == 0 {
            return Err("k: must be >= 1".into());
        }
        if !(self.temperature > 0.0) {
            return Err("temperature: must be > 0".into());
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err("alpha: must lie in (0, 1]".into());
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err("beta: must lie in (0, 1]".into());
        }
        if !(self.length_norm > 0.0) {
            return Err("length_norm: must be > 0".into());
        }
        if !(self.c_puct > 0.0) {
            return Err("c_puct: must be > 0".into());
        }
        if self.max_tree_depth == 0 {
            return Err("max_tree_depth: must be >= 1".into());
        }
        if self.checkpoint_interval == 0 {
            return Err("checkpoint_interval: must be >= 1".into());
        }
        Ok(())
    }
}
