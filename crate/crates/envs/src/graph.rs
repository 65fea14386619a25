//! Exact enumeration of an environment's transition graph, used by the
//! oracles: terminal listing with trajectory counts, and the dynamic
//! programs for success probabilities and terminal distributions.

use std::collections::HashMap;
use std::sync::Arc;

use stepflow_core::{PartialSolution, Problem, Step};

use crate::env::Environment;
use crate::error::EnvError;

/// One canonical state of the enumerated graph. `steps[i]` leads to
/// `succs[i]`.
pub struct DagNode {
    pub key: String,
    /// A representative partial solution reaching this state.
    pub state: PartialSolution,
    pub steps: Vec<Step>,
    pub succs: Vec<usize>,
    pub can_terminate: bool,
}

/// An environment's transition graph for one problem, enumerated up to the
/// configured state cap and merged on canonical state keys.
pub struct Dag {
    pub nodes: Vec<DagNode>,
    pub source: usize,
    /// Node indices in a topological order (source first).
    pub topo: Vec<usize>,
}

/// Enumerate the transition graph reachable from the problem's source
/// state. Errors when the graph exceeds the environment's state cap or
/// contains a cycle.
pub fn build_dag(env: &dyn Environment, problem: &Problem) -> Result<Dag, EnvError> {
    let cap = env.state_cap();
    let source_state = PartialSolution::new(Arc::new(problem.clone()));
    let mut nodes: Vec<DagNode> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();

    let source = intern(env, &mut nodes, &mut index, source_state, cap)?;
    let mut cursor = source;
    while cursor < nodes.len() {
        let steps = env.legal_steps(&nodes[cursor].state);
        let mut succs = Vec::with_capacity(steps.len());
        for step in &steps {
            let child = stepflow_core::concat_prefix(&nodes[cursor].state, step)
                .expect("legal steps extend their own state");
            let child_idx = intern(env, &mut nodes, &mut index, child, cap)?;
            succs.push(child_idx);
        }
        nodes[cursor].steps = steps;
        nodes[cursor].succs = succs;
        cursor += 1;
    }

    let topo = topo_sort(&nodes)?;
    Ok(Dag {
        nodes,
        source,
        topo,
    })
}

fn intern(
    env: &dyn Environment,
    nodes: &mut Vec<DagNode>,
    index: &mut HashMap<String, usize>,
    state: PartialSolution,
    cap: usize,
) -> Result<usize, EnvError> {
    let key = env.state_key(&state);
    if let Some(&idx) = index.get(&key) {
        return Ok(idx);
    }
    if nodes.len() >= cap {
        return Err(EnvError::Capacity { limit: cap });
    }
    let idx = nodes.len();
    index.insert(key.clone(), idx);
    nodes.push(DagNode {
        key,
        can_terminate: env.can_terminate(&state),
        state,
        steps: Vec::new(),
        succs: Vec::new(),
    });
    Ok(idx)
}

/// Kahn's algorithm; errors if the graph has a cycle.
fn topo_sort(nodes: &[DagNode]) -> Result<Vec<usize>, EnvError> {
    let mut indegree = vec![0usize; nodes.len()];
    for node in nodes {
        for &succ in &node.succs {
            indegree[succ] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..nodes.len()).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(nodes.len());
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        order.push(u);
        for &v in &nodes[u].succs {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push(v);
            }
        }
    }
    if order.len() != nodes.len() {
        return Err(EnvError::Capability(
            "transition graph contains a cycle".to_string(),
        ));
    }
    Ok(order)
}

/// Every terminal state with the number of distinct step sequences that
/// reach it, in discovery order.
pub fn enumerate_terminals(
    env: &dyn Environment,
    problem: &Problem,
) -> Result<Vec<(PartialSolution, u64)>, EnvError> {
    let dag = build_dag(env, problem)?;
    let mut paths = vec![0u64; dag.nodes.len()];
    paths[dag.source] = 1;
    for &u in &dag.topo {
        for &v in &dag.nodes[u].succs {
            paths[v] = paths[v].saturating_add(paths[u]);
        }
    }
    Ok(dag
        .nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.can_terminate)
        .map(|(i, n)| (n.state.clone(), paths[i]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{FlowGridEnv, FlowGridParams, GridReward};

    #[test]
    fn flow_grid_terminal_count_is_side_pow_dims() {
        let env = FlowGridEnv::new(FlowGridParams {
            dims: 2,
            side: 3,
            reward: GridReward::Geometric { ratio: 0.5 },
            state_cap: 1000,
        })
        .unwrap();
        let problem = env.problems()[0].clone();
        let terminals = enumerate_terminals(&env, &problem).unwrap();
        assert_eq!(terminals.len(), 9);
        // Dimension-ordered moves make the graph a tree.
        assert!(terminals.iter().all(|(_, count)| *count == 1));
    }

    #[test]
    fn capacity_bound_is_enforced() {
        let env = FlowGridEnv::new(FlowGridParams {
            dims: 2,
            side: 5,
            reward: GridReward::Geometric { ratio: 0.5 },
            state_cap: 7,
        })
        .unwrap();
        let problem = env.problems()[0].clone();
        let err = enumerate_terminals(&env, &problem).unwrap_err();
        assert!(matches!(err, EnvError::Capacity { limit: 7 }));
    }
}
