use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnvError {
    /// The environment does not support the requested exact computation.
    #[error("environment capability missing: {0}")]
    Capability(String),

    /// The transition graph exceeded the configured enumeration bound.
    #[error("state graph exceeds the configured bound of {limit} states")]
    Capacity { limit: usize },

    #[error("invalid environment config at {key}: {message}")]
    InvalidConfig { key: String, message: String },

    #[error("unknown problem id {0}")]
    UnknownProblem(String),
}

/// Errors from step generators (environment-backed or remote).
#[derive(Debug, Error)]
pub enum GenError {
    #[error("cannot propose steps from a terminal state")]
    TerminalState,

    #[error("completion exceeded {0} steps without terminating")]
    RunawayCompletion(usize),

    /// A backing service failed after its own retry policy was exhausted.
    #[error("generation backend failed: {0}")]
    Backend(String),
}
