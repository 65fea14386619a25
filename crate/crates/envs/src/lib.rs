//! Pluggable step generation plus synthetic, fully enumerable reasoning
//! environments.
//!
//! An [`Environment`] defines, per problem, which steps are legal from a
//! state, where a trajectory may terminate, which terminals count as
//! correct, and (when supported) the exact probability that a uniformly
//! random completion succeeds. The built-in environments keep their
//! transition graphs small enough that every downstream claim can be
//! checked against exact enumeration. Nothing outside tests may rely on
//! enumerability: the production code paths only ever ask for legal steps
//! at the current state.

mod arith;
mod config;
mod env;
mod error;
mod graph;
mod grid;

pub use arith::{ArithChainEnv, ArithChainParams, ChainOp};
pub use config::{build_env, EnvSpec};
pub use env::{Environment, StepGenerator, StepProposal, UniformGenerator, COMPLETION_STEP_CAP};
pub use error::{EnvError, GenError};
pub use graph::{build_dag, enumerate_terminals, Dag, DagNode};
pub use grid::{FlowGridEnv, FlowGridParams, GridReward};
