//! Domain types shared by every pipeline stage, plus step parsing and
//! answer extraction.
//!
//! A solution is a sequence of [`Step`]s (one reasoning line each). A
//! [`PartialSolution`] pairs a [`Problem`] with a step prefix and is the
//! state object handed around by data generation, search, and training.
//! All types here are immutable values; operations are pure and safe to
//! call concurrently.

mod answers;
mod error;
pub mod hash;
mod jsonl;
mod parse;
pub mod text;
mod types;

pub use answers::{answers_equal, parse_rational};
pub use error::CoreError;
pub use jsonl::{read_jsonl, write_jsonl};
pub use parse::{
    concat_prefix, extract_final_answer, join_steps, split_into_steps, split_into_steps_with,
    DEFAULT_MAX_STEP_LEN,
};
pub use types::{LabeledStep, PartialSolution, Problem, Provenance, Rollout, Step};
