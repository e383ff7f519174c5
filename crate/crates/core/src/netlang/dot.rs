use std::fmt::Write;

use super::quote_dot;
use crate::config::Configuration;
use crate::dynamics::{DynamicsGraph, LimitDynamics};
use crate::graphs::{InteractionDigraph, UpdateDigraph};
use crate::network::AutomataNetwork;

fn header(out: &mut String, name: &str) {
    let _ = writeln!(out, "digraph {name} {{");
}

fn nodes(out: &mut String, net: &AutomataNetwork) {
    for name in net.names() {
        let _ = writeln!(out, "  {};", quote_dot(name));
    }
}

/// The interaction digraph, one node per automaton.
pub fn emit_dot(net: &AutomataNetwork, graph: &InteractionDigraph) -> String {
    let mut out = String::new();
    header(&mut out, "interaction");
    nodes(&mut out, net);
    for &(u, v) in graph.edges() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote_dot(net.name(u)),
            quote_dot(net.name(v))
        );
    }
    out.push_str("}\n");
    out
}

/// The update digraph; every edge carries `label="<"` or `label=">="`.
pub fn emit_update_dot(net: &AutomataNetwork, graph: &UpdateDigraph) -> String {
    let mut out = String::new();
    header(&mut out, "update");
    nodes(&mut out, net);
    for (&(u, v), label) in graph.labels() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote_dot(net.name(u)),
            quote_dot(net.name(v)),
            quote_dot(&label.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// The dynamics graph. Edges inside limit cycles are bold, transient edges dashed.
pub fn emit_dynamics_dot(dynamics: &DynamicsGraph, limit: &LimitDynamics) -> String {
    let n = dynamics.n();
    let mut on_cycle = vec![false; dynamics.successors().len()];
    for cycle in limit.cycles() {
        for x in cycle {
            on_cycle[x.index() as usize] = true;
        }
    }
    let label = |i: usize| quote_dot(&Configuration::from_index(n, i as u64).to_string());
    let mut out = String::new();
    header(&mut out, "dynamics");
    for (x, &y) in dynamics.successors().iter().enumerate() {
        let style = if on_cycle[x] { "bold" } else { "dashed" };
        let _ = writeln!(
            out,
            "  {} -> {} [style={style}];",
            label(x),
            label(y as usize)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{full_dynamics, limit_dynamics};
    use crate::graphs::{interaction_digraph, update_digraph};
    use crate::netlang::{parse_network, parse_schedule};
    use crate::schedule::UpdateSchedule;
    use crate::Limits;

    fn example() -> AutomataNetwork {
        parse_network("a = !b | c\nb = a\nc = !b").unwrap()
    }

    #[test]
    fn interaction_edges() {
        let net = example();
        let dot = emit_dot(
            &net,
            &interaction_digraph(&net, &Limits::default()).unwrap(),
        );
        for e in [
            "\"a\" -> \"b\"",
            "\"b\" -> \"c\"",
            "\"c\" -> \"a\"",
            "\"b\" -> \"a\"",
        ] {
            assert!(dot.contains(e), "{e} missing from\n{dot}");
        }
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn update_labels() {
        let net = example();
        let s = parse_schedule("{a} {b} {c}", net.names()).unwrap();
        let ud = update_digraph(&net, &s, &Limits::default()).unwrap();
        let dot = emit_update_dot(&net, &ud);
        assert!(dot.contains("\"a\" -> \"b\" [label=\"<\"]"));
        assert!(dot.contains("\"c\" -> \"a\" [label=\">=\"]"));
    }

    #[test]
    fn dynamics_styles() {
        let net = example();
        let pi = UpdateSchedule::parallel(3);
        let d = full_dynamics(&net, &pi, &Limits::default()).unwrap();
        let l = limit_dynamics(&net, &pi, &Limits::default()).unwrap();
        let dot = emit_dynamics_dot(&d, &l);
        assert!(dot.contains("\"000\" -> \"101\" [style=bold]"));
        assert!(dot.contains("\"001\" -> \"101\" [style=dashed]"));
        assert_eq!(dot.matches("->").count(), 8);
    }
}
