//! Block-sequential to parallel rewriting.
//!
//! Every `<`-edge `(u, v)` of the update digraph means `v` reads the value
//! `u` has *after* its update. Those reads are first marked with theta
//! placeholders, then each placeholder is wired to the output gate of the
//! corresponding local function, in an order where that function is
//! already placeholder-free.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::circuit::{Gate, GateId, GatePool};
use crate::error::{Error, Result};
use crate::graphs::update_digraph;
use crate::network::AutomataNetwork;
use crate::schedule::UpdateSchedule;
use crate::Limits;

/// A network whose circuits may still hold theta placeholders.
#[derive(Clone, Debug)]
pub struct TransientNetwork {
    names: Vec<String>,
    pool: GatePool,
    outputs: Vec<GateId>,
}

impl TransientNetwork {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn pool(&self) -> &GatePool {
        &self.pool
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    pub fn contains_theta(&self, i: usize) -> bool {
        self.pool.contains_theta(self.outputs[i])
    }
}

/// Retypes, in `f_v`, every input `x_u` of a `<`-edge `(u, v)` into `θ_u`.
/// Gates shared with other circuits are copied before being rewritten.
pub fn insert_thetas(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<(TransientNetwork, Vec<(usize, usize)>)> {
    let ud = update_digraph(net, schedule, limits)?;
    let lt = ud.lt_edges();
    let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in &lt {
        by_target.entry(v).or_default().push(u);
    }
    let (names, mut pool, mut outputs) = net.clone().into_parts();
    for (v, sources) in by_target {
        let mut memo: HashMap<GateId, GateId> = HashMap::new();
        for id in pool.reachable(&[outputs[v]]) {
            let gate = pool.gate(id).clone();
            let new_id = match gate {
                Gate::Input(u) if sources.contains(&u) => pool.push(Gate::Theta(u)),
                Gate::Not(_) | Gate::And(_) | Gate::Or(_) => {
                    let changed = gate.children().iter().any(|c| memo[c] != *c);
                    if changed {
                        pool.push(gate.map_children(|c| memo[&c]))
                    } else {
                        id
                    }
                }
                _ => id,
            };
            memo.insert(id, new_id);
        }
        outputs[v] = memo[&outputs[v]];
    }
    Ok((
        TransientNetwork {
            names,
            pool,
            outputs,
        },
        lt,
    ))
}

/// Replaces every `θ_s` by a wire to the output of `f_s`, taking at each
/// step the lowest-index unresolved automaton whose function is theta-free.
/// Runs exactly `n` steps and returns the network with the resolution order.
pub fn resolve_thetas(transient: TransientNetwork) -> Result<(AutomataNetwork, Vec<usize>)> {
    let TransientNetwork {
        names,
        mut pool,
        outputs,
    } = transient;
    let n = names.len();
    let mut resolved = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let s = (0..n)
            .find(|&s| !resolved[s] && !pool.contains_theta(outputs[s]))
            .ok_or(Error::ThetaDeadlock)?;
        let thetas: Vec<GateId> = pool
            .reachable(&outputs)
            .into_iter()
            .filter(|&g| matches!(pool.gate(g), Gate::Theta(i) if *i == s))
            .collect();
        for g in thetas {
            pool.replace(g, Gate::And(vec![outputs[s]]));
        }
        resolved[s] = true;
        order.push(s);
    }
    let (pool, outputs) = pool.rebuild(&outputs, crate::circuit::InputMap::Input);
    Ok((AutomataNetwork::from_parts(names, pool, outputs), order))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParallelizeOptions {
    /// Merge structurally identical gates after resolution.
    pub hash_cons: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParallelizeReport {
    pub lt_edges: Vec<(usize, usize)>,
    pub resolution_order: Vec<usize>,
    pub initial_gates: usize,
    pub final_gates: usize,
}

impl ParallelizeReport {
    /// Steps taken by the resolution loop.
    pub fn steps(&self) -> usize {
        self.resolution_order.len()
    }
}

#[derive(Clone, Debug)]
pub struct Parallelized {
    pub network: AutomataNetwork,
    pub report: ParallelizeReport,
}

/// A network over the same automata whose parallel step equals one period
/// of `schedule` on `net`.
pub fn parallelize(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<AutomataNetwork> {
    Ok(parallelize_with(net, schedule, limits, ParallelizeOptions::default())?.network)
}

pub fn parallelize_with(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
    opts: ParallelizeOptions,
) -> Result<Parallelized> {
    let initial_gates = net.gate_count();
    let (transient, lt_edges) = insert_thetas(net, schedule, limits)?;
    let (mut network, resolution_order) = if lt_edges.is_empty() {
        (net.clone(), (0..net.len()).collect())
    } else {
        resolve_thetas(transient)?
    };
    if opts.hash_cons {
        network = network.hash_consed();
    }
    let final_gates = network.gate_count();
    Ok(Parallelized {
        network,
        report: ParallelizeReport {
            lt_edges,
            resolution_order,
            initial_gates,
            final_gates,
        },
    })
}
