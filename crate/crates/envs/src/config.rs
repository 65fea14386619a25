use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{ArithChainEnv, ArithChainParams};
use crate::env::Environment;
use crate::error::EnvError;
use crate::grid::{FlowGridEnv, FlowGridParams};

/// Environment declaration as it appears in a run config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnvSpec {
    ArithChain(ArithChainParams),
    FlowGrid(FlowGridParams),
}

/// Validate a spec and construct the environment.
pub fn build_env(spec: &EnvSpec) -> Result<Arc<dyn Environment>, EnvError> {
    match spec {
        EnvSpec::ArithChain(params) => Ok(Arc::new(ArithChainEnv::new(params.clone())?)),
        EnvSpec::FlowGrid(params) => Ok(Arc::new(FlowGridEnv::new(params.clone())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_round_trip_and_build() {
        let spec = EnvSpec::ArithChain(ArithChainParams::default());
        let text = serde_json::to_string(&spec).unwrap();
        let back: EnvSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let env = build_env(&back).unwrap();
        assert_eq!(env.problems().len(), 16);
    }

    #[test]
    fn invalid_params_are_rejected_with_key() {
        let spec = EnvSpec::FlowGrid(FlowGridParams {
            side: 1,
            ..FlowGridParams::default()
        });
        match build_env(&spec).map(|_| ()) {
            Err(EnvError::InvalidConfig { key, .. }) => assert_eq!(key, "side"),
            other => panic!("expected InvalidConfig, got {other:?}"),
        }
    }
}
