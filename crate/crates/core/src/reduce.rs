//! Size reduction preserving limit dynamics: merging automata whose local
//! functions agree up to identity or negation, and pruning automata that
//! influence nothing.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::circuit::Gate;
use crate::error::{Error, Result};
use crate::graphs::{interaction_digraph, table_over};
use crate::network::AutomataNetwork;
use crate::parallel::parallelize;
use crate::schedule::UpdateSchedule;
use crate::Limits;

/// A bijection of the Boolean alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnaryMap {
    Identity,
    Negation,
}

impl fmt::Display for UnaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnaryMap::Identity => "identity",
            UnaryMap::Negation => "negation",
        })
    }
}

fn joint_support(net: &AutomataNetwork, u: usize, v: usize) -> Vec<usize> {
    let mut vars: BTreeSet<usize> = net.circuit(u).support().into_iter().collect();
    vars.extend(net.circuit(v).support());
    vars.into_iter().collect()
}

/// `Some(g)` when `f_u = g ∘ f_v`, decided over the union of both supports.
pub fn unary_equiv(
    net: &AutomataNetwork,
    u: usize,
    v: usize,
    limits: &Limits,
) -> Result<Option<UnaryMap>> {
    net.check_index(u)?;
    net.check_index(v)?;
    let vars = joint_support(net, u, v);
    let tu = table_over(net, u, &vars, limits)?;
    let tv = table_over(net, v, &vars, limits)?;
    Ok(if tu == tv {
        Some(UnaryMap::Identity)
    } else if tu.is_complement_of(&tv) {
        Some(UnaryMap::Negation)
    } else {
        None
    })
}

fn is_constant(net: &AutomataNetwork, u: usize, limits: &Limits) -> Result<bool> {
    let vars = net.circuit(u).support();
    Ok(table_over(net, u, &vars, limits)?.is_constant())
}

/// Substitutes `x_u ↦ g(x_v)` in every local function. Afterwards `u`
/// influences nothing; it stays in the network until pruned or dropped.
pub fn merge(
    net: &AutomataNetwork,
    u: usize,
    v: usize,
    g: UnaryMap,
    limits: &Limits,
) -> Result<AutomataNetwork> {
    if u == v || unary_equiv(net, u, v, limits)? != Some(g) {
        return Err(Error::MergePrecondition {
            removed: u,
            kept: v,
            map: g,
        });
    }
    Ok(substitute(net, u, v, g))
}

fn substitute(net: &AutomataNetwork, u: usize, v: usize, g: UnaryMap) -> AutomataNetwork {
    let (names, mut pool, outputs) = net.clone().into_parts();
    let targets: Vec<_> = pool
        .reachable(&outputs)
        .into_iter()
        .filter(|&id| matches!(pool.gate(id), Gate::Input(i) if *i == u))
        .collect();
    if !targets.is_empty() {
        let replacement = match g {
            UnaryMap::Identity => Gate::Input(v),
            UnaryMap::Negation => Gate::Not(pool.input(v)),
        };
        for id in targets {
            pool.replace(id, replacement.clone());
        }
    }
    AutomataNetwork::from_parts(names, pool, outputs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Merge {
    pub removed: String,
    pub kept: String,
    pub map: UnaryMap,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionReport {
    pub initial_size: usize,
    pub final_size: usize,
    pub merges: Vec<Merge>,
    pub pruned: Vec<String>,
    /// `<`-edges of the update digraph, when a schedule was parallelized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lt_edges: Option<usize>,
    pub warnings: Vec<String>,
}

impl ReductionReport {
    pub fn removed(&self) -> usize {
        self.merges.len() + self.pruned.len()
    }

    /// What became of each removed automaton.
    pub fn witness(&self) -> Vec<(String, String)> {
        self.merges
            .iter()
            .map(|m| (m.removed.clone(), format!("{} ({})", m.kept, m.map)))
            .chain(
                self.pruned
                    .iter()
                    .map(|p| (p.clone(), "pruned".to_string())),
            )
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReduceOptions {
    /// Repeat the pruning pass until nothing changes, even for the
    /// shape-preserving reduction.
    pub fixpoint_prune: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairRule {
    Any,
    HighInDegree,
}

struct Reducer<'a> {
    net: AutomataNetwork,
    alive: Vec<bool>,
    limits: &'a Limits,
    report: ReductionReport,
}

impl<'a> Reducer<'a> {
    fn new(net: AutomataNetwork, limits: &'a Limits) -> Self {
        let n = net.len();
        Reducer {
            report: ReductionReport {
                initial_size: n,
                ..ReductionReport::default()
            },
            net,
            alive: vec![true; n],
            limits,
        }
    }

    fn in_degrees(&self) -> Result<Vec<usize>> {
        let g = interaction_digraph(&self.net, self.limits)?;
        let mut d = vec![0; self.net.len()];
        for &(u, v) in g.edges() {
            if self.alive[u] && self.alive[v] {
                d[v] += 1;
            }
        }
        Ok(d)
    }

    fn find_pair(&mut self, rule: PairRule) -> Result<Option<(usize, usize, UnaryMap)>> {
        let n = self.net.len();
        let indeg = match rule {
            PairRule::Any => None,
            PairRule::HighInDegree => Some(self.in_degrees()?),
        };
        for v in (0..n).filter(|&v| self.alive[v]) {
            for u in (v + 1..n).filter(|&u| self.alive[u]) {
                if let Some(d) = &indeg {
                    if d[u] <= 1 && d[v] <= 1 {
                        continue;
                    }
                }
                if let Some(g) = unary_equiv(&self.net, u, v, self.limits)? {
                    return Ok(Some((u, v, g)));
                }
            }
        }
        Ok(None)
    }

    fn merge_all(&mut self, rule: PairRule) -> Result<()> {
        while let Some((u, v, g)) = self.find_pair(rule)? {
            self.net = substitute(&self.net, u, v, g);
            self.alive[u] = false;
            self.report.merges.push(Merge {
                removed: self.net.name(u).to_string(),
                kept: self.net.name(v).to_string(),
                map: g,
            });
        }
        for u in (0..self.net.len()).filter(|&u| self.alive[u]) {
            if is_constant(&self.net, u, self.limits)? {
                self.report.warnings.push(format!(
                    "`{}` is constant: it matches every automaton through a constant map, \
                     which is not bijective, so it was not merged on that ground",
                    self.net.name(u)
                ));
            }
        }
        Ok(())
    }

    /// One pass in index order; returns whether anything was removed.
    fn prune_pass(&mut self) -> Result<bool> {
        let mut any = false;
        let g = interaction_digraph(&self.net, self.limits)?;
        for u in 0..self.net.len() {
            if !self.alive[u] {
                continue;
            }
            if !g.out_neighbors(u).iter().any(|&w| self.alive[w]) {
                self.alive[u] = false;
                self.report.pruned.push(self.net.name(u).to_string());
                any = true;
            }
        }
        Ok(any)
    }

    fn finish(mut self) -> (AutomataNetwork, ReductionReport) {
        let keep: Vec<usize> = (0..self.net.len()).filter(|&i| self.alive[i]).collect();
        let net = self.net.restricted_to(&keep);
        self.report.final_size = net.len();
        (net, self.report)
    }
}

/// Removes automata with no out-neighbour until none is left.
pub fn prune_influenceless(
    net: &AutomataNetwork,
    limits: &Limits,
) -> Result<(AutomataNetwork, ReductionReport)> {
    let mut r = Reducer::new(net.clone(), limits);
    while r.prune_pass()? {}
    Ok(r.finish())
}

/// Merges and prunes a network meant to be updated in parallel.
pub fn reduce_parallel(
    net: &AutomataNetwork,
    limits: &Limits,
) -> Result<(AutomataNetwork, ReductionReport)> {
    let mut r = Reducer::new(net.clone(), limits);
    r.merge_all(PairRule::Any)?;
    while r.prune_pass()? {}
    Ok(r.finish())
}

/// Parallelizes `net` under `schedule`, then reduces it fully.
pub fn reduce(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<(AutomataNetwork, ReductionReport)> {
    let lt = crate::graphs::update_digraph(net, schedule, limits)?.lt_count();
    let parallel = parallelize(net, schedule, limits)?;
    let (out, mut report) = reduce_parallel(&parallel, limits)?;
    report.lt_edges = Some(lt);
    Ok((out, report))
}

/// Shape-preserving reduction of tangential cycles: only pairs where one
/// side has several in-neighbours are merged, and pruning is one pass.
pub fn reduce_tc(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
    opts: ReduceOptions,
) -> Result<(AutomataNetwork, ReductionReport)> {
    if crate::families::recognize_tc(net, limits)?.is_none() {
        return Err(Error::NotTangential);
    }
    let lt = crate::graphs::update_digraph(net, schedule, limits)?.lt_count();
    let parallel = parallelize(net, schedule, limits)?;
    let mut r = Reducer::new(parallel, limits);
    r.merge_all(PairRule::HighInDegree)?;
    if opts.fixpoint_prune {
        while r.prune_pass()? {}
    } else {
        r.prune_pass()?;
    }
    let (out, mut report) = r.finish();
    report.lt_edges = Some(lt);
    Ok((out, report))
}
