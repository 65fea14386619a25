use thiserror::Error;

/// Errors produced by the core domain operations.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A caller violated an operation precondition.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
