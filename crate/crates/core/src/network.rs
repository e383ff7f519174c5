//! Automata networks: named automata whose local functions share one gate pool.

use std::collections::HashSet;

use crate::circuit::{Circuit, CompiledCircuit, Gate, GateId, GatePool, InputMap};
use crate::config::{Configuration, State};
use crate::error::{Error, Result};
use crate::schedule::UpdateSchedule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomataNetwork {
    names: Vec<String>,
    pool: GatePool,
    outputs: Vec<GateId>,
}

impl AutomataNetwork {
    /// Assembles a network, checking that names are distinct, every input
    /// refers to an automaton of the network and no theta gate remains.
    pub fn new(names: Vec<String>, pool: GatePool, outputs: Vec<GateId>) -> Result<Self> {
        if names.len() > Configuration::MAX_LEN {
            return Err(Error::TooManyAutomata {
                got: names.len(),
                max: Configuration::MAX_LEN,
            });
        }
        if names.len() != outputs.len() {
            return Err(Error::InvalidNetwork(format!(
                "{} names for {} local functions",
                names.len(),
                outputs.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate automaton `{name}`"
                )));
            }
        }
        if let Some(bad) = outputs.iter().find(|o| o.index() >= pool.len()) {
            return Err(Error::InvalidNetwork(format!(
                "dangling output gate {}",
                bad.index()
            )));
        }
        for id in pool.reachable(&outputs) {
            match pool.gate(id) {
                Gate::Theta(i) => return Err(Error::TransientCircuit(*i)),
                Gate::Input(i) if *i >= names.len() => {
                    return Err(Error::IndexOutOfRange {
                        index: *i,
                        size: names.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(AutomataNetwork {
            names,
            pool,
            outputs,
        })
    }

    /// Assembles a network from parts that are valid by construction.
    pub(crate) fn from_parts(names: Vec<String>, pool: GatePool, outputs: Vec<GateId>) -> Self {
        debug_assert!(Self::new(names.clone(), pool.clone(), outputs.clone()).is_ok());
        AutomataNetwork {
            names,
            pool,
            outputs,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn pool(&self) -> &GatePool {
        &self.pool
    }

    pub fn outputs(&self) -> &[GateId] {
        &self.outputs
    }

    /// Size of the shared gate pool.
    pub fn gate_count(&self) -> usize {
        self.pool.len()
    }

    pub fn circuit(&self, i: usize) -> Circuit<'_> {
        Circuit::new(&self.pool, self.outputs[i])
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.len(),
            })
        }
    }

    /// Evaluates `f_i(x)`.
    pub fn eval_local(&self, i: usize, x: &Configuration) -> Result<State> {
        self.check_index(i)?;
        self.circuit(i).eval(x)
    }

    pub fn compile(&self) -> CompiledNetwork {
        let circuits = (0..self.len())
            .map(|i| {
                self.circuit(i)
                    .compile()
                    .expect("networks hold no theta gates")
            })
            .collect();
        CompiledNetwork {
            n: self.len(),
            circuits,
        }
    }

    /// The same network with unreachable gates dropped.
    pub fn compacted(&self) -> Self {
        let (pool, outputs) = self.pool.rebuild(&self.outputs, InputMap::Input);
        AutomataNetwork::from_parts(self.names.clone(), pool, outputs)
    }

    /// The same network with structurally identical gates merged.
    pub fn hash_consed(&self) -> Self {
        let (pool, outputs) = self.pool.hash_consed(&self.outputs);
        AutomataNetwork::from_parts(self.names.clone(), pool, outputs)
    }

    /// Keeps the automata in `keep` (ascending), renumbering them densely.
    /// Inputs of dropped automata become constant 0, so this is only sound
    /// when the dropped automata influence none of the kept ones.
    pub(crate) fn restricted_to(&self, keep: &[usize]) -> Self {
        let mut new_index = vec![None; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = Some(k);
        }
        let roots: Vec<GateId> = keep.iter().map(|&i| self.outputs[i]).collect();
        let (pool, outputs) = self.pool.rebuild(&roots, |i| match new_index[i] {
            Some(k) => InputMap::Input(k),
            None => InputMap::Const(false),
        });
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        AutomataNetwork::from_parts(names, pool, outputs)
    }

    pub(crate) fn into_parts(self) -> (Vec<String>, GatePool, Vec<GateId>) {
        (self.names, self.pool, self.outputs)
    }

    /// The global function `F`, i.e. one parallel step.
    pub fn step(&self, x: &Configuration) -> Result<Configuration> {
        self.check_configuration(x)?;
        Ok(self
            .compile()
            .apply_block(&(0..self.len()).collect::<Vec<_>>(), x))
    }

    pub(crate) fn check_configuration(&self, x: &Configuration) -> Result<()> {
        if x.len() == self.len() {
            Ok(())
        } else {
            Err(Error::ConfigurationLength {
                got: x.len(),
                expected: self.len(),
            })
        }
    }
}

/// Default automaton labels: `a`..`z`, then `x26`, `x27`, ...
pub fn default_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// All local functions compiled for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledNetwork {
    n: usize,
    circuits: Vec<CompiledCircuit>,
}

impl CompiledNetwork {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `F_X(x)`: automata of `block` take their local value, others keep theirs.
    pub fn apply_block(&self, block: &[usize], x: &Configuration) -> Configuration {
        let mut lanes: Vec<u64> = (0..self.n)
            .map(|i| if x.get(i) { u64::MAX } else { 0 })
            .collect();
        let mut scratch = Vec::new();
        let mut next = Vec::new();
        self.apply_block_lanes(block, &mut lanes, &mut next, &mut scratch);
        Configuration::from_states(&lanes.iter().map(|&w| w & 1 == 1).collect::<Vec<_>>())
    }

    pub fn apply_schedule(&self, schedule: &UpdateSchedule, x: &Configuration) -> Configuration {
        schedule
            .blocks()
            .iter()
            .fold(*x, |acc, block| self.apply_block(block, &acc))
    }

    /// Bit-sliced block update: `lanes[i]` holds automaton `i` for 64
    /// configurations at once.
    pub fn apply_block_lanes(
        &self,
        block: &[usize],
        lanes: &mut [u64],
        next: &mut Vec<u64>,
        scratch: &mut Vec<u64>,
    ) {
        next.clear();
        next.extend(
            block
                .iter()
                .map(|&i| self.circuits[i].eval_lanes(lanes, scratch)),
        );
        for (&i, &v) in block.iter().zip(next.iter()) {
            lanes[i] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_inputs() {
        let mut p = GatePool::new();
        let g = p.input(3);
        let err = AutomataNetwork::new(vec!["a".into()], p, vec![g]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 3, size: 1 }));
    }

    #[test]
    fn rejects_theta_gates() {
        let mut p = GatePool::new();
        let g = p.push(Gate::Theta(0));
        assert!(AutomataNetwork::new(vec!["a".into()], p, vec![g]).is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        let mut p = GatePool::new();
        let g = p.constant(true);
        assert!(AutomataNetwork::new(vec!["a".into(), "a".into()], p, vec![g, g]).is_err());
    }

    #[test]
    fn default_names() {
        assert_eq!(default_name(0), "a");
        assert_eq!(default_name(25), "z");
        assert_eq!(default_name(26), "x26");
    }
}
