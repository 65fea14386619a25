//! MCTS-based generation of step-quality training data.
//!
//! The loop per problem: select a stored (node, rollout) pair by the
//! adapted PUCT rule, binary-search the rollout for its first incorrect
//! step (a step whose prefix has Monte Carlo value zero), attach every
//! probed good step to the tree with its rollouts, record the error step
//! with value zero and close that branch, and repeat until the rollout
//! budget is exhausted or no unused pair remains.

mod binsearch;
mod checkpoint;
mod estimate;
mod params;
mod runner;
mod select;
mod tree;

pub use binsearch::{find_first_error, find_first_error_with, BinarySearchOutcome, Probe};
pub use checkpoint::DatagenCheckpoint;
pub use estimate::{exploration_bonus, mc_estimate, rollout_value};
pub use params::DatagenParams;
pub use runner::{collect_dataset, run_datagen, DatagenOutcome, DatagenRunner};
pub use select::{select_candidate, Candidate};
pub use tree::{DatagenTree, ErrorRecord, NodeId, RolloutExportRow, TreeNode};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatagenError {
    /// The generator failed after retries; the rollouts gathered so far
    /// are preserved for inspection.
    #[error("generation failed after {} rollouts: {source}", partial.len())]
    Generation {
        partial: Vec<stepflow_core::Rollout>,
        source: stepflow_envs::GenError,
    },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("checkpoint does not match the current run: {0}")]
    CheckpointMismatch(String),
}
