//! Exhaustive dynamics over `{0,1}^n`: successor tables, limit cycles and
//! their signatures.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::LANE_PATTERNS;
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::network::AutomataNetwork;
use crate::schedule::UpdateSchedule;
use crate::Limits;

/// Below this many configurations the table is built on one thread.
const PARALLEL_THRESHOLD: usize = 1 << 12;

/// Successor indices are stored as `u32`.
const MAX_ENUMERABLE: usize = 30;

/// The functional graph of `F_Δ`: `successors()[x]` is the index of `F_Δ(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsGraph {
    n: usize,
    successor: Vec<u32>,
}

impl DynamicsGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self) -> &[u32] {
        &self.successor
    }

    pub fn successor(&self, x: &Configuration) -> Configuration {
        Configuration::from_index(self.n, self.successor[x.index() as usize] as u64)
    }
}

fn check_enumerable(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<()> {
    schedule.check_network(net)?;
    let cap = limits.max_automata.min(MAX_ENUMERABLE);
    if net.len() > cap {
        return Err(Error::EnumerationTooLarge { n: net.len(), cap });
    }
    if schedule.blocks().is_empty() && !net.is_empty() {
        return Err(Error::EmptySchedule);
    }
    Ok(())
}

pub fn full_dynamics(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<DynamicsGraph> {
    check_enumerable(net, schedule, limits)?;
    let n = net.len();
    let total = 1usize << n;
    let compiled = net.compile();
    // Configuration index `x` stores automaton `i` at bit `n - 1 - i`; a
    // chunk covers the 64 indices sharing all bits above the sixth.
    let chunk = |base: usize, out: &mut [u32]| {
        let mut lanes = vec![0u64; n];
        for (i, lane) in lanes.iter_mut().enumerate() {
            let bit = n - 1 - i;
            *lane = if bit < 6 {
                LANE_PATTERNS[bit]
            } else if (base >> bit) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        let mut next = Vec::new();
        let mut scratch = Vec::new();
        for block in schedule.blocks() {
            compiled.apply_block_lanes(block, &mut lanes, &mut next, &mut scratch);
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = lanes.iter().enumerate().fold(0u32, |acc, (i, &w)| {
                acc | ((((w >> j) & 1) as u32) << (n - 1 - i))
            });
        }
    };
    let mut successor = vec![0u32; total];
    if total >= PARALLEL_THRESHOLD {
        successor
            .par_chunks_mut(64)
            .enumerate()
            .for_each(|(c, out)| chunk(c * 64, out));
    } else {
        for (c, out) in successor.chunks_mut(64).enumerate() {
            chunk(c * 64, out);
        }
    }
    Ok(DynamicsGraph { n, successor })
}

/// Sorted multiset of limit-cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        Signature(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn count(&self, k: usize) -> usize {
        self.0.iter().filter(|&&l| l == k).count()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// The limit cycles of a dynamics, each starting at its smallest
/// configuration, ordered by that configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitDynamics {
    n: usize,
    cycles: Vec<Vec<Configuration>>,
}

impl LimitDynamics {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<Configuration>] {
        &self.cycles
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.cycles.iter().map(Vec::len).collect())
    }

    pub fn count(&self, k: usize) -> usize {
        self.cycles.iter().filter(|c| c.len() == k).count()
    }

    pub fn fixed_points(&self) -> Vec<Configuration> {
        self.cycles
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0])
            .collect()
    }
}

impl DynamicsGraph {
    /// Three-colour pointer walk: every configuration is visited once.
    pub fn limit(&self) -> LimitDynamics {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut colour = vec![WHITE; self.successor.len()];
        let mut path = Vec::new();
        let mut cycles = Vec::new();
        for start in 0..self.successor.len() {
            if colour[start] != WHITE {
                continue;
            }
            path.clear();
            let mut x = start;
            while colour[x] == WHITE {
                colour[x] = GREY;
                path.push(x);
                x = self.successor[x] as usize;
            }
            if colour[x] == GREY {
                let from = path
                    .iter()
                    .position(|&p| p == x)
                    .expect("grey nodes are on the path");
                let mut cycle: Vec<usize> = path[from..].to_vec();
                let min = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
                cycle.rotate_left(min);
                cycles.push(cycle);
            }
            for &p in &path {
                colour[p] = BLACK;
            }
        }
        cycles.sort_by_key(|c| c[0]);
        LimitDynamics {
            n: self.n,
            cycles: cycles
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|x| Configuration::from_index(self.n, x as u64))
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn limit_dynamics(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<LimitDynamics> {
    Ok(full_dynamics(net, schedule, limits)?.limit())
}

pub fn limit_isomorphic(a: &LimitDynamics, b: &LimitDynamics) -> bool {
    a.signature() == b.signature()
}

/// Number of limit cycles of length exactly `k`.
pub fn count_limit_cycles(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    k: usize,
    limits: &Limits,
) -> Result<usize> {
    Ok(limit_dynamics(net, schedule, limits)?.count(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlang::{parse_network, parse_schedule};

    fn example() -> AutomataNetwork {
        parse_network("a = !b | c\nb = a\nc = !b").unwrap()
    }

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn parallel_edges_of_example() {
        let net = example();
        let d = full_dynamics(&net, &UpdateSchedule::parallel(3), &Limits::default()).unwrap();
        let want = [
            ("000", "101"),
            ("001", "101"),
            ("010", "000"),
            ("011", "100"),
            ("100", "111"),
            ("101", "111"),
            ("110", "010"),
            ("111", "110"),
        ];
        for (x, y) in want {
            assert_eq!(d.successor(&cfg(x)), cfg(y), "{x}");
        }
    }

    #[test]
    fn limit_cycles_of_example() {
        let net = example();
        let l = limit_dynamics(&net, &UpdateSchedule::parallel(3), &Limits::default()).unwrap();
        let cycle: Vec<String> = l.cycles()[0].iter().map(|c| c.to_string()).collect();
        assert_eq!(cycle, ["000", "101", "111", "110", "010"]);
        assert_eq!(l.signature().to_string(), "{5}");

        let seq = parse_schedule("{a} {b} {c}", net.names()).unwrap();
        let d = full_dynamics(&net, &seq, &Limits::default()).unwrap();
        assert_eq!(d.successor(&cfg("001")), cfg("110"));
        assert_eq!(d.successor(&cfg("110")), cfg("001"));
        let l = d.limit();
        assert_eq!(l.cycles().len(), 1);
        assert_eq!(l.signature().to_string(), "{2}");
    }

    #[test]
    fn constant_network_has_one_fixed_point() {
        let net = parse_network("a = 1\nb = 0\nc = 1").unwrap();
        let l = limit_dynamics(&net, &UpdateSchedule::parallel(3), &Limits::default()).unwrap();
        assert_eq!(l.fixed_points(), vec![cfg("101")]);
        assert_eq!(l.signature(), Signature::new(vec![1]));
    }

    #[test]
    fn identity_network() {
        let net = parse_network("a = a\nb = b").unwrap();
        let d = full_dynamics(&net, &UpdateSchedule::parallel(2), &Limits::default()).unwrap();
        assert_eq!(d.successors(), &[0, 1, 2, 3]);
    }

    #[test]
    fn empty_network() {
        let net = AutomataNetwork::new(vec![], Default::default(), vec![]).unwrap();
        let l = limit_dynamics(&net, &UpdateSchedule::parallel(0), &Limits::default()).unwrap();
        assert_eq!(l.signature().lengths(), &[1]);
    }

    #[test]
    fn wide_networks_use_every_chunk() {
        // A 14-automaton shift register: 2^14 configurations, parallel path.
        let text: String = (0..14)
            .map(|i| {
                let name = crate::network::default_name(i);
                let prev = crate::network::default_name((i + 13) % 14);
                format!("{name} = {prev}\n")
            })
            .collect();
        let net = parse_network(&text).unwrap();
        let pi = UpdateSchedule::parallel(14);
        let d = full_dynamics(&net, &pi, &Limits::default()).unwrap();
        for k in [0u64, 1, 77, 12345, (1 << 14) - 1] {
            let x = Configuration::from_index(14, k);
            assert_eq!(d.successor(&x), net.step(&x).unwrap());
        }
        assert_eq!(d.limit().count(1), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let net = example();
        let limits = Limits {
            max_automata: 2,
            ..Limits::default()
        };
        assert!(matches!(
            full_dynamics(&net, &UpdateSchedule::parallel(3), &limits),
            Err(Error::EnumerationTooLarge { n: 3, cap: 2 })
        ));
    }

    #[test]
    fn signature_comparison() {
        assert_ne!(Signature::new(vec![2]), Signature::new(vec![1, 1]));
        assert_eq!(Signature::new(vec![5, 1]).to_string(), "{1, 5}");
    }
}
