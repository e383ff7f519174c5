//! Shared gate pools and the circuits that encode local functions.
//!
//! Every network owns a single [`GatePool`]. A local function is a
//! [`Circuit`]: a view of the pool rooted at one output gate. Substitutions
//! rewire gates inside the pool instead of copying subcircuits, so a
//! function spliced into several others is stored once.

use std::collections::{BTreeSet, HashMap};

use crate::config::{Configuration, State};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GateId(u32);

impl GateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Gate {
    /// Reads the current state of an automaton.
    Input(usize),
    /// Placeholder for the next-step value of an automaton. Only present in
    /// transient networks built during parallelization.
    Theta(usize),
    Const(State),
    Not(GateId),
    /// Conjunction of at least one child; a single child is a plain wire.
    And(Vec<GateId>),
    /// Disjunction of at least one child; a single child is a plain wire.
    Or(Vec<GateId>),
}

impl Gate {
    pub fn children(&self) -> &[GateId] {
        match self {
            Gate::Not(c) => std::slice::from_ref(c),
            Gate::And(cs) | Gate::Or(cs) => cs,
            Gate::Input(_) | Gate::Theta(_) | Gate::Const(_) => &[],
        }
    }

    pub(crate) fn map_children(&self, mut f: impl FnMut(GateId) -> GateId) -> Gate {
        match self {
            Gate::Not(c) => Gate::Not(f(*c)),
            Gate::And(cs) => Gate::And(cs.iter().map(|&c| f(c)).collect()),
            Gate::Or(cs) => Gate::Or(cs.iter().map(|&c| f(c)).collect()),
            other => other.clone(),
        }
    }

    /// The gate a wire forwards to, if this is a single-child AND/OR.
    pub fn wire_target(&self) -> Option<GateId> {
        match self {
            Gate::And(cs) | Gate::Or(cs) if cs.len() == 1 => Some(cs[0]),
            _ => None,
        }
    }
}

/// How an input is treated when a pool is rebuilt.
#[derive(Clone, Copy, Debug)]
pub(crate) enum InputMap {
    Input(usize),
    Const(State),
}

#[derive(Clone, Default, Debug, PartialEq, Eq)]
pub struct GatePool {
    gates: Vec<Gate>,
}

impl GatePool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id.index()]
    }

    pub fn push(&mut self, gate: Gate) -> GateId {
        if let Gate::And(cs) | Gate::Or(cs) = &gate {
            assert!(!cs.is_empty(), "AND/OR gates need at least one child");
        }
        debug_assert!(gate.children().iter().all(|c| c.index() < self.gates.len()));
        let id = GateId(u32::try_from(self.gates.len()).expect("gate pool overflow"));
        self.gates.push(gate);
        id
    }

    pub fn input(&mut self, automaton: usize) -> GateId {
        self.push(Gate::Input(automaton))
    }

    pub fn constant(&mut self, value: State) -> GateId {
        self.push(Gate::Const(value))
    }

    pub fn not(&mut self, child: GateId) -> GateId {
        self.push(Gate::Not(child))
    }

    pub fn and(&mut self, children: Vec<GateId>) -> GateId {
        self.push(Gate::And(children))
    }

    pub fn or(&mut self, children: Vec<GateId>) -> GateId {
        self.push(Gate::Or(children))
    }

    /// Overwrites a gate in place. Every circuit reaching `id` sees the change.
    pub(crate) fn replace(&mut self, id: GateId, gate: Gate) {
        self.gates[id.index()] = gate;
    }

    /// Gates reachable from `roots`, children before parents.
    pub fn reachable(&self, roots: &[GateId]) -> Vec<GateId> {
        let mut seen = vec![false; self.gates.len()];
        let mut order = Vec::new();
        let mut stack: Vec<(GateId, bool)> = Vec::new();
        for &root in roots {
            stack.push((root, false));
            while let Some((id, expanded)) = stack.pop() {
                if expanded {
                    order.push(id);
                    continue;
                }
                if seen[id.index()] {
                    continue;
                }
                seen[id.index()] = true;
                stack.push((id, true));
                for &c in self.gate(id).children().iter().rev() {
                    if !seen[c.index()] {
                        stack.push((c, false));
                    }
                }
            }
        }
        order
    }

    pub fn contains_theta(&self, root: GateId) -> bool {
        self.reachable(&[root])
            .into_iter()
            .any(|g| matches!(self.gate(g), Gate::Theta(_)))
    }

    /// Automata read through INPUT gates below `root`, sorted.
    pub fn support(&self, root: GateId) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .reachable(&[root])
            .into_iter()
            .filter_map(|g| match self.gate(g) {
                Gate::Input(i) => Some(*i),
                _ => None,
            })
            .collect();
        set.into_iter().collect()
    }

    /// Copies the gates reachable from `roots` into a fresh pool in
    /// topological order, keeping sharing and rewriting inputs with `inputs`.
    pub(crate) fn rebuild(
        &self,
        roots: &[GateId],
        mut inputs: impl FnMut(usize) -> InputMap,
    ) -> (GatePool, Vec<GateId>) {
        let mut out = GatePool::new();
        let mut map: HashMap<GateId, GateId> = HashMap::new();
        for id in self.reachable(roots) {
            let gate = match self.gate(id) {
                Gate::Input(i) => match inputs(*i) {
                    InputMap::Input(j) => Gate::Input(j),
                    InputMap::Const(v) => Gate::Const(v),
                },
                g => g.map_children(|c| map[&c]),
            };
            map.insert(id, out.push(gate));
        }
        let roots = roots.iter().map(|r| map[r]).collect();
        (out, roots)
    }

    /// Copies the reachable gates, merging structurally identical gates and
    /// bypassing single-child wires.
    pub fn hash_consed(&self, roots: &[GateId]) -> (GatePool, Vec<GateId>) {
        let mut out = GatePool::new();
        let mut map: HashMap<GateId, GateId> = HashMap::new();
        let mut table: HashMap<Gate, GateId> = HashMap::new();
        for id in self.reachable(roots) {
            let gate = self.gate(id).map_children(|c| map[&c]);
            let new_id = if let Some(target) = gate.wire_target() {
                target
            } else if let Some(&existing) = table.get(&gate) {
                existing
            } else {
                let fresh = out.push(gate.clone());
                table.insert(gate, fresh);
                fresh
            };
            map.insert(id, new_id);
        }
        let roots = roots.iter().map(|r| map[r]).collect();
        (out, roots)
    }
}

/// A local function: a gate pool together with a designated output gate.
#[derive(Clone, Copy, Debug)]
pub struct Circuit<'a> {
    pool: &'a GatePool,
    output: GateId,
}

impl<'a> Circuit<'a> {
    pub fn new(pool: &'a GatePool, output: GateId) -> Self {
        Circuit { pool, output }
    }

    pub fn pool(&self) -> &'a GatePool {
        self.pool
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    /// Number of distinct gates reachable from the output.
    pub fn size(&self) -> usize {
        self.pool.reachable(&[self.output]).len()
    }

    pub fn support(&self) -> Vec<usize> {
        self.pool.support(self.output)
    }

    pub fn contains_theta(&self) -> bool {
        self.pool.contains_theta(self.output)
    }

    pub fn compile(&self) -> Result<CompiledCircuit> {
        CompiledCircuit::new(*self)
    }

    /// Evaluates the circuit under `x`.
    pub fn eval(&self, x: &Configuration) -> Result<State> {
        let compiled = self.compile()?;
        if let Some(&max) = compiled.inputs().iter().max() {
            if max >= x.len() {
                return Err(Error::ConfigurationLength {
                    got: x.len(),
                    expected: max + 1,
                });
            }
        }
        let lanes: Vec<u64> = (0..x.len()).map(|i| lane_of(x.get(i))).collect();
        let mut scratch = Vec::new();
        Ok(compiled.eval_lanes(&lanes, &mut scratch) & 1 == 1)
    }

    /// Truth table over `vars`, which must contain the circuit's support.
    pub fn truth_table(&self, vars: &[usize]) -> Result<TruthTable> {
        Ok(TruthTable::of(&self.compile()?, vars))
    }
}

fn lane_of(state: State) -> u64 {
    if state {
        u64::MAX
    } else {
        0
    }
}

#[derive(Clone, Debug)]
enum Op {
    Input(usize),
    Const(State),
    Not(u32),
    And { start: u32, len: u32 },
    Or { start: u32, len: u32 },
}

/// A circuit flattened into a straight-line program over 64-bit lanes:
/// one evaluation computes the function on 64 assignments at once.
#[derive(Clone, Debug)]
pub struct CompiledCircuit {
    ops: Vec<Op>,
    args: Vec<u32>,
    inputs: Vec<usize>,
}

impl CompiledCircuit {
    pub fn new(circuit: Circuit<'_>) -> Result<Self> {
        let pool = circuit.pool;
        let order = pool.reachable(&[circuit.output]);
        let mut slot: HashMap<GateId, u32> = HashMap::with_capacity(order.len());
        let mut ops = Vec::with_capacity(order.len());
        let mut args = Vec::new();
        let mut inputs = BTreeSet::new();
        for id in order {
            let op = match pool.gate(id) {
                Gate::Input(i) => {
                    inputs.insert(*i);
                    Op::Input(*i)
                }
                Gate::Theta(i) => return Err(Error::TransientCircuit(*i)),
                Gate::Const(v) => Op::Const(*v),
                Gate::Not(c) => Op::Not(slot[c]),
                Gate::And(cs) | Gate::Or(cs) => {
                    let start = args.len() as u32;
                    args.extend(cs.iter().map(|c| slot[c]));
                    let len = cs.len() as u32;
                    if matches!(pool.gate(id), Gate::And(_)) {
                        Op::And { start, len }
                    } else {
                        Op::Or { start, len }
                    }
                }
            };
            slot.insert(id, ops.len() as u32);
            ops.push(op);
        }
        Ok(CompiledCircuit {
            ops,
            args,
            inputs: inputs.into_iter().collect(),
        })
    }

    /// Automata read by the circuit, sorted.
    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    /// Evaluates on 64 assignments at once; `lanes[i]` holds automaton `i`.
    pub fn eval_lanes(&self, lanes: &[u64], scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Input(i) => lanes[i],
                Op::Const(b) => lane_of(b),
                Op::Not(c) => !scratch[c as usize],
                Op::And { start, len } => self.args[start as usize..(start + len) as usize]
                    .iter()
                    .fold(u64::MAX, |acc, &c| acc & scratch[c as usize]),
                Op::Or { start, len } => self.args[start as usize..(start + len) as usize]
                    .iter()
                    .fold(0, |acc, &c| acc | scratch[c as usize]),
            };
            scratch.push(v);
        }
        *scratch
            .last()
            .expect("compiled circuit has at least one gate")
    }
}

/// Lane `j` of `LANE_PATTERNS[k]` is bit `k` of `j`.
pub(crate) const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A Boolean function tabulated over an ordered list of variables.
///
/// Assignment `a` sets `vars[k]` to bit `k` of `a`. Tables over fewer than
/// six variables occupy one word whose lanes repeat with period `2^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    vars: Vec<usize>,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn of(circuit: &CompiledCircuit, vars: &[usize]) -> Self {
        debug_assert!(circuit.inputs().iter().all(|i| vars.contains(i)));
        let width = vars.iter().copied().max().map_or(0, |m| m + 1);
        let mut lanes = vec![0u64; width];
        let words = if vars.len() <= 6 {
            1
        } else {
            1usize << (vars.len() - 6)
        };
        let mut scratch = Vec::new();
        let table = (0..words)
            .map(|w| {
                for (k, &var) in vars.iter().enumerate() {
                    lanes[var] = if k < 6 {
                        LANE_PATTERNS[k]
                    } else {
                        lane_of((w >> (k - 6)) & 1 == 1)
                    };
                }
                circuit.eval_lanes(&lanes, &mut scratch)
            })
            .collect();
        TruthTable {
            vars: vars.to_vec(),
            words: table,
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Pairs `(low, high)` of words where `high` is `low` with variable
    /// position `k` raised, masked to the lanes where `k` is low.
    fn flips(&self, k: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        let (mask, shift, stride) = if k < 6 {
            (!LANE_PATTERNS[k], 1u32 << k, 0usize)
        } else {
            (u64::MAX, 0, 1usize << (k - 6))
        };
        self.words
            .iter()
            .enumerate()
            .filter(move |(w, _)| stride == 0 || w & stride == 0)
            .map(move |(w, &lo)| {
                let hi = if stride == 0 {
                    lo >> shift
                } else {
                    self.words[w + stride]
                };
                (lo & mask, hi & mask)
            })
    }

    /// Whether the variable at position `k` can change the output.
    pub fn depends_on(&self, k: usize) -> bool {
        self.flips(k).any(|(lo, hi)| lo != hi)
    }

    /// Raising variable `k` never lowers the output.
    pub fn non_decreasing_in(&self, k: usize) -> bool {
        self.flips(k).all(|(lo, hi)| lo & !hi == 0)
    }

    /// Raising variable `k` never raises the output.
    pub fn non_increasing_in(&self, k: usize) -> bool {
        self.flips(k).all(|(lo, hi)| !lo & hi == 0)
    }

    /// Both tables must range over the same variables.
    pub fn is_complement_of(&self, other: &TruthTable) -> bool {
        self.vars == other.vars && self.words.iter().zip(&other.words).all(|(a, b)| *a == !*b)
    }

    pub fn is_constant(&self) -> bool {
        self.words.iter().all(|&w| w == 0) || self.words.iter().all(|&w| w == u64::MAX)
    }

    pub fn value(&self, assignment: usize) -> State {
        let (w, lane) = if self.vars.len() < 6 {
            (0, assignment)
        } else {
            (assignment >> 6, assignment & 63)
        };
        (self.words[w] >> lane) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_pool() -> (GatePool, GateId) {
        let mut p = GatePool::new();
        let a = p.input(0);
        let b = p.input(1);
        let na = p.not(a);
        let nb = p.not(b);
        let l = p.and(vec![a, nb]);
        let r = p.and(vec![na, b]);
        let out = p.or(vec![l, r]);
        (p, out)
    }

    #[test]
    fn eval_constant() {
        let mut p = GatePool::new();
        let one = p.constant(true);
        let c = Circuit::new(&p, one);
        for x in ["", "0", "101"] {
            assert!(c.eval(&x.parse().unwrap()).unwrap());
        }
    }

    #[test]
    fn eval_xor() {
        let (p, out) = xor_pool();
        let c = Circuit::new(&p, out);
        for (x, want) in [("00", false), ("01", true), ("10", true), ("11", false)] {
            assert_eq!(c.eval(&x.parse().unwrap()).unwrap(), want, "{x}");
        }
    }

    #[test]
    fn theta_is_not_evaluable() {
        let mut p = GatePool::new();
        let t = p.push(Gate::Theta(0));
        let out = p.not(t);
        let err = Circuit::new(&p, out)
            .eval(&"0".parse().unwrap())
            .unwrap_err();
        assert!(matches!(err, Error::TransientCircuit(0)));
    }

    #[test]
    fn short_configuration_is_rejected() {
        let (p, out) = xor_pool();
        assert!(Circuit::new(&p, out).eval(&"1".parse().unwrap()).is_err());
    }

    #[test]
    fn truth_table_dependencies() {
        let mut p = GatePool::new();
        let a = p.input(0);
        let _unused = p.input(1);
        let c = p.input(2);
        let na = p.not(a);
        let out = p.or(vec![na, c]);
        let circuit = Circuit::new(&p, out);
        let t = circuit.truth_table(&[0, 1, 2]).unwrap();
        assert!(t.depends_on(0));
        assert!(!t.depends_on(1));
        assert!(t.depends_on(2));
        assert!(t.non_increasing_in(0));
        assert!(!t.non_decreasing_in(0));
        assert!(t.non_decreasing_in(2));
    }

    #[test]
    fn wide_truth_table_matches_pointwise_eval() {
        // Parity of 8 inputs forces multi-word tables.
        let mut p = GatePool::new();
        let mut acc = p.input(0);
        for i in 1..8 {
            let x = p.input(i);
            let na = p.not(acc);
            let nx = p.not(x);
            let l = p.and(vec![acc, nx]);
            let r = p.and(vec![na, x]);
            acc = p.or(vec![l, r]);
        }
        let c = Circuit::new(&p, acc);
        let vars: Vec<usize> = (0..8).collect();
        let t = c.truth_table(&vars).unwrap();
        for a in 0..256usize {
            let states: Vec<bool> = (0..8).map(|k| (a >> k) & 1 == 1).collect();
            let x = Configuration::from_states(&states);
            assert_eq!(t.value(a), c.eval(&x).unwrap());
        }
        for k in 0..8 {
            assert!(t.depends_on(k));
            assert!(!t.non_decreasing_in(k));
        }
    }

    #[test]
    fn hash_consing_merges_duplicates_and_wires() {
        let mut p = GatePool::new();
        let a1 = p.input(0);
        let a2 = p.input(0);
        let n1 = p.not(a1);
        let n2 = p.not(a2);
        let w = p.and(vec![n2]);
        let out = p.or(vec![n1, w]);
        let (q, roots) = p.hash_consed(&[out]);
        assert_eq!(q.len(), 3);
        let c = Circuit::new(&q, roots[0]);
        assert!(c.eval(&"0".parse().unwrap()).unwrap());
        assert!(!c.eval(&"1".parse().unwrap()).unwrap());
    }
}
