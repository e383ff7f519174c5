//! Influence, interaction digraphs, update digraphs and edge/cycle signs.
//!
//! Everything here is decided semantically, by tabulating local functions
//! over their input support, so vacuous inputs left behind by rewriting
//! never produce edges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::TruthTable;
use crate::error::{Error, Result};
use crate::network::AutomataNetwork;
use crate::schedule::UpdateSchedule;
use crate::Limits;

/// Truth table of `f_j` over its syntactic support.
pub(crate) fn local_table(net: &AutomataNetwork, j: usize, limits: &Limits) -> Result<TruthTable> {
    net.check_index(j)?;
    table_over(net, j, &net.circuit(j).support(), limits)
}

pub(crate) fn table_over(
    net: &AutomataNetwork,
    j: usize,
    vars: &[usize],
    limits: &Limits,
) -> Result<TruthTable> {
    if vars.len() > limits.max_support {
        return Err(Error::SupportTooLarge {
            support: vars.len(),
            cap: limits.max_support,
        });
    }
    net.circuit(j).truth_table(vars)
}

/// Whether some single-letter change of automaton `i` changes `f_j`.
pub fn influences(net: &AutomataNetwork, i: usize, j: usize, limits: &Limits) -> Result<bool> {
    net.check_index(i)?;
    let table = local_table(net, j, limits)?;
    Ok(match table.vars().iter().position(|&v| v == i) {
        Some(k) => table.depends_on(k),
        None => false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionDigraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl InteractionDigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        assert!(edges.iter().all(|&(u, v)| u < n && v < n));
        InteractionDigraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        self.edges
            .range((u, 0)..(u + 1, 0))
            .map(|&(_, v)| v)
            .collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(_, w)| w == v)
            .map(|&(u, _)| u)
            .collect()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.edges {
            d[u] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.edges {
            d[v] += 1;
        }
        d
    }
}

/// `G_I(F)`: an edge `(i, j)` whenever `i` influences `j`.
pub fn interaction_digraph(net: &AutomataNetwork, limits: &Limits) -> Result<InteractionDigraph> {
    let mut edges = Vec::new();
    for j in 0..net.len() {
        let table = local_table(net, j, limits)?;
        for (k, &i) in table.vars().iter().enumerate() {
            if table.depends_on(k) {
                edges.push((i, j));
            }
        }
    }
    Ok(InteractionDigraph::new(net.len(), edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// The source is updated strictly before the target.
    Lt,
    Ge,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::Lt => "<",
            EdgeLabel::Ge => ">=",
        })
    }
}

/// An interaction digraph annotated by a block-sequential schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateDigraph {
    graph: InteractionDigraph,
    labels: BTreeMap<(usize, usize), EdgeLabel>,
}

impl UpdateDigraph {
    pub fn graph(&self) -> &InteractionDigraph {
        &self.graph
    }

    pub fn labels(&self) -> &BTreeMap<(usize, usize), EdgeLabel> {
        &self.labels
    }

    pub fn label(&self, u: usize, v: usize) -> Option<EdgeLabel> {
        self.labels.get(&(u, v)).copied()
    }

    pub fn lt_edges(&self) -> Vec<(usize, usize)> {
        self.labels
            .iter()
            .filter(|(_, &l)| l == EdgeLabel::Lt)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn lt_count(&self) -> usize {
        self.labels
            .values()
            .filter(|&&l| l == EdgeLabel::Lt)
            .count()
    }
}

fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(u, v) in edges {
        indeg[v] += 1;
        succ[u].push(v);
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = ready.pop() {
        seen += 1;
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(v);
            }
        }
    }
    seen == n
}

/// `G_U(F_Δ)` for a block-sequential `Δ`.
pub fn update_digraph(
    net: &AutomataNetwork,
    schedule: &UpdateSchedule,
    limits: &Limits,
) -> Result<UpdateDigraph> {
    schedule.check_network(net)?;
    let rank = schedule.require_block_sequential()?;
    let graph = interaction_digraph(net, limits)?;
    let labels: BTreeMap<_, _> = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let label = if rank[u] < rank[v] {
                EdgeLabel::Lt
            } else {
                EdgeLabel::Ge
            };
            ((u, v), label)
        })
        .collect();
    let ud = UpdateDigraph { graph, labels };
    assert!(
        is_acyclic(net.len(), &ud.lt_edges()),
        "the <-subgraph of a block-sequential schedule is acyclic"
    );
    Ok(ud)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    /// Sign of a path made of `self` followed by `other`.
    pub fn then(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Parity of negative signs.
    pub fn product(signs: impl IntoIterator<Item = Sign>) -> Sign {
        signs.into_iter().fold(Sign::Positive, Sign::then)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "pos" | "positive" => Ok(Sign::Positive),
            "-" | "neg" | "negative" => Ok(Sign::Negative),
            other => Err(Error::InvalidSpec(format!("`{other}` is not a sign"))),
        }
    }
}

/// Positive when `f_v` is non-decreasing in `x_u`, negative when it is
/// non-increasing.
pub fn edge_sign(net: &AutomataNetwork, u: usize, v: usize, limits: &Limits) -> Result<Sign> {
    net.check_index(u)?;
    let table = local_table(net, v, limits)?;
    let k = match table.vars().iter().position(|&w| w == u) {
        Some(k) if table.depends_on(k) => k,
        _ => return Err(Error::NoEdge { from: u, to: v }),
    };
    if table.non_decreasing_in(k) {
        Ok(Sign::Positive)
    } else if table.non_increasing_in(k) {
        Ok(Sign::Negative)
    } else {
        Err(Error::UnsignedEdge { from: u, to: v })
    }
}

/// Sign of the cycle `cycle[0] -> cycle[1] -> ... -> cycle[0]`.
pub fn cycle_sign(net: &AutomataNetwork, cycle: &[usize], limits: &Limits) -> Result<Sign> {
    if cycle.is_empty() {
        return Err(Error::InvalidSpec("empty cycle".into()));
    }
    let signs = (0..cycle.len())
        .map(|k| edge_sign(net, cycle[k], cycle[(k + 1) % cycle.len()], limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sign::product(signs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlang::{parse_network, parse_schedule};

    fn example() -> AutomataNetwork {
        parse_network("a = !b | c\nb = a\nc = !b").unwrap()
    }

    #[test]
    fn influence_on_example() {
        let net = example();
        let l = Limits::default();
        assert!(influences(&net, 1, 0, &l).unwrap());
        assert!(!influences(&net, 2, 1, &l).unwrap());
        assert!(!influences(&net, 0, 0, &l).unwrap());
    }

    #[test]
    fn constants_have_no_in_edges() {
        let net = parse_network("a = 1\nb = a & !a").unwrap();
        let g = interaction_digraph(&net, &Limits::default()).unwrap();
        assert!(g.edges().is_empty());
        assert!(!influences(&net, 0, 1, &Limits::default()).unwrap());
    }

    #[test]
    fn support_cap() {
        let net = parse_network("a = a | b | c\nb = b\nc = c").unwrap();
        let l = Limits {
            max_support: 2,
            ..Limits::default()
        };
        assert!(matches!(
            influences(&net, 0, 0, &l),
            Err(Error::SupportTooLarge { support: 3, cap: 2 })
        ));
    }

    #[test]
    fn parallel_schedule_labels_everything_ge() {
        let net = example();
        let ud = update_digraph(&net, &UpdateSchedule::parallel(3), &Limits::default()).unwrap();
        assert_eq!(ud.lt_count(), 0);
        assert_eq!(ud.labels().len(), 4);
    }

    #[test]
    fn rejects_non_block_sequential() {
        let net = example();
        let s = parse_schedule("{b,c} {a} {a,b}", net.names()).unwrap();
        assert!(matches!(
            update_digraph(&net, &s, &Limits::default()),
            Err(Error::NotBlockSequential)
        ));
    }

    #[test]
    fn signs_on_example() {
        let net = example();
        let l = Limits::default();
        assert_eq!(edge_sign(&net, 1, 0, &l).unwrap(), Sign::Negative);
        assert_eq!(edge_sign(&net, 2, 0, &l).unwrap(), Sign::Positive);
        assert!(matches!(
            edge_sign(&net, 0, 0, &l),
            Err(Error::NoEdge { .. })
        ));
        // a -> b -> a: positive then negative.
        assert_eq!(cycle_sign(&net, &[0, 1], &l).unwrap(), Sign::Negative);
    }

    #[test]
    fn xor_edges_are_unsigned() {
        let net = parse_network("a = a & !b | !a & b\nb = a").unwrap();
        assert!(matches!(
            edge_sign(&net, 1, 0, &Limits::default()),
            Err(Error::UnsignedEdge { from: 1, to: 0 })
        ));
    }

    #[test]
    fn self_loop_identity_is_positive() {
        let net = parse_network("a = a").unwrap();
        assert_eq!(
            cycle_sign(&net, &[0], &Limits::default()).unwrap(),
            Sign::Positive
        );
    }
}
