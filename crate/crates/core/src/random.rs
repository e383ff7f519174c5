//! Seedable generators for property suites and census runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{GateId, GatePool};
use crate::families::TcSpec;
use crate::graphs::Sign;
use crate::network::{default_name, AutomataNetwork};
use crate::schedule::UpdateSchedule;

fn random_gate<R: Rng>(rng: &mut R, pool: &mut GatePool, n: usize, depth: usize) -> GateId {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.95) {
            pool.input(rng.gen_range(0..n))
        } else {
            pool.constant(rng.gen())
        };
    }
    match rng.gen_range(0..3) {
        0 => {
            let c = random_gate(rng, pool, n, depth - 1);
            pool.not(c)
        }
        op => {
            let arity = rng.gen_range(2..=3);
            let cs = (0..arity)
                .map(|_| random_gate(rng, pool, n, depth - 1))
                .collect();
            if op == 1 {
                pool.and(cs)
            } else {
                pool.or(cs)
            }
        }
    }
}

/// `n` automata whose local functions are random tree circuits of depth
/// at most `max_depth`.
pub fn random_network<R: Rng>(rng: &mut R, n: usize, max_depth: usize) -> AutomataNetwork {
    let mut pool = GatePool::new();
    let outputs = (0..n)
        .map(|_| random_gate(rng, &mut pool, n, max_depth))
        .collect();
    AutomataNetwork::new((0..n).map(default_name).collect(), pool, outputs)
        .expect("generated networks are well formed")
}

/// Each automaton gets a uniform rank in `0..n`; equal ranks share a block.
pub fn random_block_sequential<R: Rng>(rng: &mut R, n: usize) -> UpdateSchedule {
    let ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n.max(1))).collect();
    UpdateSchedule::from_ranks(&ranks)
}

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    *[Sign::Positive, Sign::Negative]
        .choose(rng)
        .expect("non-empty")
}

/// A non-degenerate spec with `1..=max_k` cycles of length at most
/// `max_len` and a tangent of at most `max_tangent` automata.
pub fn random_tc_spec<R: Rng>(
    rng: &mut R,
    max_k: usize,
    max_len: usize,
    max_tangent: usize,
) -> TcSpec {
    assert!(max_k >= 1 && max_len >= 1);
    loop {
        let k = rng.gen_range(1..=max_k);
        let tangent = if k == 1 {
            0
        } else {
            rng.gen_range(0..=max_tangent.min(max_len - 1))
        };
        let spec = TcSpec {
            cycle_lengths: (0..k)
                .map(|_| rng.gen_range(tangent + 1..=max_len))
                .collect(),
            cycle_signs: (0..k).map(|_| random_sign(rng)).collect(),
            tangent,
        };
        if !spec.is_degenerate() {
            return spec;
        }
    }
}
