//! Periodic update schedules and the update semantics `F_X` / `F_Δ`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::network::AutomataNetwork;

/// One period of a periodic update schedule over `n` automata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpdateSchedule {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl UpdateSchedule {
    /// Blocks are sorted and deduplicated; they must be non-empty and refer
    /// to automata below `n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptySchedule);
        }
        let mut normalized = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            block.sort_unstable();
            block.dedup();
            if let Some(&bad) = block.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    size: n,
                });
            }
            normalized.push(block);
        }
        Ok(UpdateSchedule {
            n,
            blocks: normalized,
        })
    }

    /// The parallel schedule `π = (S)`. Over zero automata it has no block.
    pub fn parallel(n: usize) -> Self {
        let blocks = if n == 0 {
            vec![]
        } else {
            vec![(0..n).collect()]
        };
        UpdateSchedule { n, blocks }
    }

    /// One automaton per block, in the given order.
    pub fn sequential(n: usize, order: &[usize]) -> Result<Self> {
        Self::new(n, order.iter().map(|&i| vec![i]).collect())
    }

    /// Groups automata by block rank: automaton `i` goes to the block
    /// numbered `ranks[i]`; empty ranks are skipped.
    pub fn from_ranks(ranks: &[usize]) -> Self {
        let n = ranks.len();
        let max = ranks.iter().copied().max().unwrap_or(0);
        let blocks = (0..=max)
            .map(|r| (0..n).filter(|&i| ranks[i] == r).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        UpdateSchedule { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Every automaton is updated exactly once per period.
    pub fn is_block_sequential(&self) -> bool {
        self.block_ranks().is_some()
    }

    pub fn is_parallel(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].len() == self.n
    }

    /// For block-sequential schedules, the position of each automaton's block.
    pub fn block_ranks(&self) -> Option<Vec<usize>> {
        let mut rank = vec![None; self.n];
        for (r, block) in self.blocks.iter().enumerate() {
            for &i in block {
                if rank[i].is_some() {
                    return None;
                }
                rank[i] = Some(r);
            }
        }
        rank.into_iter().collect()
    }

    pub(crate) fn require_block_sequential(&self) -> Result<Vec<usize>> {
        self.block_ranks().ok_or(Error::NotBlockSequential)
    }

    pub(crate) fn check_network(&self, net: &AutomataNetwork) -> Result<()> {
        if self.n == net.len() {
            Ok(())
        } else {
            Err(Error::ScheduleSize {
                schedule: self.n,
                network: net.len(),
            })
        }
    }
}

/// `F_X(x)`: automata in `block` are updated with their local function, all
/// others keep their state.
pub fn apply_block(
    net: &AutomataNetwork,
    block: &[usize],
    x: &Configuration,
) -> Result<Configuration> {
    net.check_configuration(x)?;
    if block.is_empty() {
        return Err(Error::EmptyBlock);
    }
    for &i in block {
        net.check_index(i)?;
    }
    Ok(net.compile().apply_block(block, x))
}

/// `F_Δ(x)`: the blocks of one period applied in order.
pub fn apply_schedule(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    x: &Configuration,
) -> Result<Configuration> {
    schedule.check_network(net)?;
    net.check_configuration(x)?;
    if schedule.blocks().is_empty() && !net.is_empty() {
        return Err(Error::EmptySchedule);
    }
    Ok(net.compile().apply_schedule(schedule, x))
}
