//! Isolated cycles, tangential cycles and double cycles: builders, a
//! recognizer, and the counting rules that shorten cycles by their
//! `<`-edges.
//!
//! Layout of a built tangential cycle: automaton 0 is the central one,
//! `1..=t` is the rest of the tangent, then each cycle's private path in
//! spec order. A cycle closes with an edge back into the central
//! automaton, whose function is the disjunction of the closing literals.
//! A negative cycle carries its single negative edge on that closing literal.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateId, GatePool};
use crate::error::{Error, Result};
use crate::graphs::{interaction_digraph, update_digraph, Sign};
use crate::network::{default_name, AutomataNetwork};
use crate::schedule::UpdateSchedule;
use crate::Limits;

fn literal(pool: &mut GatePool, var: usize, sign: Sign) -> GateId {
    let x = pool.input(var);
    match sign {
        Sign::Positive => x,
        Sign::Negative => pool.not(x),
    }
}

fn named(n: usize) -> Vec<String> {
    (0..n).map(default_name).collect()
}

/// A single cycle: `f_{i+1 mod n}` is `x_i` or `¬x_i` as given by `signs[i]`.
pub fn build_cycle(length: usize, signs: &[Sign]) -> Result<AutomataNetwork> {
    if length == 0 || signs.len() != length {
        return Err(Error::InvalidSpec(format!(
            "a cycle of length {length} needs {length} edge signs, got {}",
            signs.len()
        )));
    }
    let mut pool = GatePool::new();
    let mut outputs = vec![None; length];
    for i in 0..length {
        outputs[(i + 1) % length] = Some(literal(&mut pool, i, signs[i]));
    }
    AutomataNetwork::new(named(length), pool, outputs.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TcSpec {
    pub cycle_lengths: Vec<usize>,
    pub cycle_signs: Vec<Sign>,
    /// Automata shared by every cycle besides the central one.
    pub tangent: usize,
}

impl TcSpec {
    pub fn new(cycle_lengths: Vec<usize>, cycle_signs: Vec<Sign>, tangent: usize) -> Result<Self> {
        let spec = TcSpec {
            cycle_lengths,
            cycle_signs,
            tangent,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cycle_lengths.is_empty() {
            return Err(Error::InvalidSpec("at least one cycle is needed".into()));
        }
        if self.cycle_lengths.len() != self.cycle_signs.len() {
            return Err(Error::InvalidSpec(format!(
                "{} cycle lengths but {} signs",
                self.cycle_lengths.len(),
                self.cycle_signs.len()
            )));
        }
        if let Some(&c) = self.cycle_lengths.iter().find(|&&c| c <= self.tangent) {
            return Err(Error::InvalidSpec(format!(
                "a cycle of length {c} cannot contain a tangent of {} automata plus the central one",
                self.tangent
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.cycle_lengths.len()
    }

    /// Two cycles made only of the tangent would be the same cycle.
    pub fn is_degenerate(&self) -> bool {
        self.cycle_lengths
            .iter()
            .filter(|&&c| c == self.tangent + 1)
            .count()
            > 1
    }

    /// Cycles sorted by length, longest first, positive before negative;
    /// a single cycle has no tangent.
    pub fn canonical(&self) -> TcSpec {
        let mut cycles: Vec<(usize, Sign)> = self
            .cycle_lengths
            .iter()
            .copied()
            .zip(self.cycle_signs.iter().copied())
            .collect();
        cycles.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        TcSpec {
            cycle_lengths: cycles.iter().map(|c| c.0).collect(),
            cycle_signs: cycles.iter().map(|c| c.1).collect(),
            tangent: if cycles.len() == 1 { 0 } else { self.tangent },
        }
    }

    pub fn network_size(&self) -> usize {
        let t = self.tangent;
        (t + 1) + self.cycle_lengths.iter().map(|c| c - t - 1).sum::<usize>()
    }

    pub fn largest_cycle(&self) -> usize {
        self.cycle_lengths.iter().copied().max().unwrap_or(0)
    }

    /// Node sequences of the cycles in the built network, each starting at
    /// the central automaton.
    pub fn layout(&self) -> Vec<Vec<usize>> {
        let t = self.tangent;
        let mut next = t + 1;
        self.cycle_lengths
            .iter()
            .map(|&c| {
                let private = c - t - 1;
                let seq: Vec<usize> = (0..=t).chain(next..next + private).collect();
                next += private;
                seq
            })
            .collect()
    }
}

impl fmt::Display for TcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycle_lengths
            .iter()
            .zip(&self.cycle_signs)
            .map(|(c, s)| format!("{s}{c}"))
            .collect();
        write!(f, "TC[{}; tangent {}]", cycles.join(","), self.tangent)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Clause {
    Or,
    And,
}

fn build_central_family(spec: &TcSpec, clause: Clause) -> Result<AutomataNetwork> {
    spec.validate()?;
    let n = spec.network_size();
    let layout = spec.layout();
    let mut pool = GatePool::new();
    let mut outputs: Vec<Option<GateId>> = vec![None; n];
    let mut closing = Vec::with_capacity(layout.len());
    for (seq, &sign) in layout.iter().zip(&spec.cycle_signs) {
        for w in seq.windows(2) {
            if outputs[w[1]].is_none() {
                outputs[w[1]] = Some(pool.input(w[0]));
            }
        }
        closing.push(literal(
            &mut pool,
            *seq.last().expect("cycles are non-empty"),
            sign,
        ));
    }
    outputs[0] = Some(if closing.len() == 1 {
        closing[0]
    } else {
        match clause {
            Clause::Or => pool.or(closing),
            Clause::And => pool.and(closing),
        }
    });
    AutomataNetwork::new(named(n), pool, outputs.into_iter().flatten().collect())
}

/// Tangential cycles with a disjunctive central automaton.
pub fn build_tc(spec: &TcSpec) -> Result<AutomataNetwork> {
    build_central_family(spec, Clause::Or)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DcSpec {
    pub s: Sign,
    pub s_prime: Sign,
    pub a: usize,
    pub b: usize,
}

impl DcSpec {
    pub fn new(s: Sign, s_prime: Sign, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidSpec(
                "double cycle sizes must be at least 1".into(),
            ));
        }
        Ok(DcSpec { s, s_prime, a, b })
    }

    pub fn as_tc(&self) -> TcSpec {
        TcSpec {
            cycle_lengths: vec![self.a, self.b],
            cycle_signs: vec![self.s, self.s_prime],
            tangent: 0,
        }
    }

    /// Both cycles reduced to the central self-loop.
    pub fn is_degenerate(&self) -> bool {
        self.a == 1 && self.b == 1
    }

    pub fn network_size(&self) -> usize {
        self.a + self.b - 1
    }
}

impl fmt::Display for DcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DC({},{},{},{})", self.s, self.s_prime, self.a, self.b)
    }
}

/// The `a`-cycle uses automata `0..a`, the `b`-cycle `0` and `a..a+b-1`.
pub fn build_double_cycle(spec: &DcSpec) -> Result<AutomataNetwork> {
    build_central_family(&spec.as_tc(), Clause::Or)
}

/// The same double cycle with a conjunctive central automaton.
pub fn build_conjunctive_double_cycle(spec: &DcSpec) -> Result<AutomataNetwork> {
    build_central_family(&spec.as_tc(), Clause::And)
}

/// A recognized tangential cycle, with the automata playing each role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcShape {
    /// In canonical order.
    pub spec: TcSpec,
    pub central: usize,
    /// Tangent automata after the central one.
    pub tangent: Vec<usize>,
    /// Node sequences from the central automaton, in the order of `spec`.
    pub cycles: Vec<Vec<usize>>,
}

fn follow_wires(pool: &GatePool, mut id: GateId) -> GateId {
    while let Some(t) = pool.gate(id).wire_target() {
        id = t;
    }
    id
}

/// `Some((var, sign))` when the circuit is an input under negations and wires.
fn literal_of(pool: &GatePool, id: GateId) -> Option<(usize, Sign)> {
    let mut sign = Sign::Positive;
    let mut id = follow_wires(pool, id);
    loop {
        match pool.gate(id) {
            Gate::Input(i) => return Some((*i, sign)),
            Gate::Not(c) => {
                sign = sign.then(Sign::Negative);
                id = follow_wires(pool, *c);
            }
            _ => return None,
        }
    }
}

fn clause_of(pool: &GatePool, id: GateId, out: &mut Vec<(usize, Sign)>) -> bool {
    if let Some(lit) = literal_of(pool, id) {
        out.push(lit);
        return true;
    }
    match pool.gate(id) {
        Gate::Or(cs) => cs.iter().all(|&c| clause_of(pool, c, out)),
        Gate::And(cs) if cs.len() == 1 => clause_of(pool, cs[0], out),
        _ => false,
    }
}

/// Recognizes a network made of cycles sharing exactly one path that starts
/// at the only automaton with several in-neighbours. Non-central automata
/// must be literals and the central one a disjunction of literals over its
/// in-neighbours.
pub fn recognize_tc(net: &AutomataNetwork, limits: &Limits) -> Result<Option<TcShape>> {
    let n = net.len();
    if n == 0 {
        return Ok(None);
    }
    let g = interaction_digraph(net, limits)?;
    let indeg = g.in_degrees();
    let hubs: Vec<usize> = (0..n).filter(|&v| indeg[v] > 1).collect();
    let central = match hubs[..] {
        [c] => c,
        [] => 0,
        _ => return Ok(None),
    };

    let mut pred = vec![(usize::MAX, Sign::Positive); n];
    for j in (0..n).filter(|&j| j != central) {
        match literal_of(net.pool(), net.outputs()[j]) {
            Some(lit) if g.in_neighbors(j) == [lit.0] => pred[j] = lit,
            _ => return Ok(None),
        }
    }
    let mut clause = Vec::new();
    if !clause_of(net.pool(), net.outputs()[central], &mut clause) {
        return Ok(None);
    }
    let vars: Vec<usize> = clause.iter().map(|l| l.0).collect();
    let distinct: BTreeSet<usize> = vars.iter().copied().collect();
    if distinct.len() != vars.len()
        || distinct.into_iter().collect::<Vec<_>>() != g.in_neighbors(central)
    {
        return Ok(None);
    }

    let mut cycles = Vec::with_capacity(clause.len());
    for &(q, closing_sign) in &clause {
        let mut seq = vec![];
        let mut sign = closing_sign;
        let mut x = q;
        while x != central {
            if seq.len() >= n || seq.contains(&x) {
                return Ok(None);
            }
            seq.push(x);
            sign = sign.then(pred[x].1);
            x = pred[x].0;
        }
        seq.push(central);
        seq.reverse();
        cycles.push((seq, sign));
    }

    let prefix = cycles
        .iter()
        .map(|(s, _)| s.as_slice())
        .reduce(|a, b| {
            let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
            &a[..common]
        })
        .expect("the central automaton has an in-neighbour")
        .len();
    let shared: BTreeSet<usize> = cycles[0].0[..prefix].iter().copied().collect();
    let mut uses = vec![0usize; n];
    for (seq, _) in &cycles {
        for &x in &seq[prefix..] {
            uses[x] += 1;
        }
    }
    if (0..n).any(|x| !shared.contains(&x) && uses[x] != 1) {
        return Ok(None);
    }

    cycles.sort_by(|(a, sa), (b, sb)| b.len().cmp(&a.len()).then(sa.cmp(sb)).then(a.cmp(b)));
    let t = if cycles.len() == 1 { 0 } else { prefix - 1 };
    let spec = TcSpec {
        cycle_lengths: cycles.iter().map(|(s, _)| s.len()).collect(),
        cycle_signs: cycles.iter().map(|(_, s)| *s).collect(),
        tangent: t,
    };
    Ok(Some(TcShape {
        tangent: cycles[0].0[1..=t].to_vec(),
        central,
        cycles: cycles.into_iter().map(|(s, _)| s).collect(),
        spec,
    }))
}

fn lt_on_cycles(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    layout: &[Vec<usize>],
    limits: &Limits,
) -> Result<Vec<usize>> {
    let ud = update_digraph(net, schedule, limits)?;
    let lt: BTreeSet<(usize, usize)> = ud.lt_edges().into_iter().collect();
    Ok(layout
        .iter()
        .map(|seq| {
            let closing = (*seq.last().expect("non-empty"), seq[0]);
            seq.windows(2)
                .map(|w| (w[0], w[1]))
                .chain(std::iter::once(closing))
                .filter(|e| lt.contains(e))
                .count()
        })
        .collect())
}

/// Shortens each cycle by the `<`-edges it contains under `schedule`;
/// `<`-edges on the tangent also shorten the tangent. `net` must be the
/// network built from `spec`.
pub fn tc_fast_reduce(
    spec: &TcSpec,
    schedule: &UpdateSchedule,
    net: &AutomataNetwork,
    limits: &Limits,
) -> Result<TcSpec> {
    spec.validate()?;
    if net.len() != spec.network_size() {
        return Err(Error::InvalidSpec(format!(
            "network has {} automata, the cycle lengths describe {}",
            net.len(),
            spec.network_size()
        )));
    }
    let layout = spec.layout();
    let counts = lt_on_cycles(net, schedule, &layout, limits)?;
    let ud = update_digraph(net, schedule, limits)?;
    let on_tangent = (1..=spec.tangent)
        .filter(|&j| ud.label(j - 1, j) == Some(crate::graphs::EdgeLabel::Lt))
        .count();
    let lengths: Vec<usize> = spec
        .cycle_lengths
        .iter()
        .zip(&counts)
        .map(|(&c, &l)| c.checked_sub(l).filter(|&r| r >= 1))
        .collect::<Option<_>>()
        .ok_or(Error::DegenerateReduction)?;
    let shortest = *lengths.iter().min().expect("validated");
    let tangent = if lengths.len() == 1 {
        0
    } else {
        (spec.tangent - on_tangent).min(shortest - 1)
    };
    Ok(TcSpec {
        cycle_lengths: lengths,
        cycle_signs: spec.cycle_signs.clone(),
        tangent,
    })
}

/// `DC(s, s', a − A, b − B)` where `A`, `B` count the `<`-edges on each cycle.
pub fn dc_reduce(spec: &DcSpec, schedule: &UpdateSchedule, limits: &Limits) -> Result<DcSpec> {
    let net = build_double_cycle(spec)?;
    let counts = lt_on_cycles(&net, schedule, &spec.as_tc().layout(), limits)?;
    let a = spec.a.checked_sub(counts[0]).filter(|&r| r >= 1);
    let b = spec.b.checked_sub(counts[1]).filter(|&r| r >= 1);
    match (a, b) {
        (Some(a), Some(b)) => Ok(DcSpec { a, b, ..*spec }),
        _ => Err(Error::DegenerateReduction),
    }
}
