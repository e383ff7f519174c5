//! Interaction and update digraphs of a three-automaton network, one period
//! of a non-block-sequential schedule, and the two limit dynamics.
//!
//! ```text
//! cargo run --example update_digraph
//! ```

use anreduce::dynamics::limit_dynamics;
use anreduce::graphs::{interaction_digraph, update_digraph};
use anreduce::netlang::{emit_update_dot, parse_network, parse_schedule};
use anreduce::{apply_schedule, Limits, UpdateSchedule};

fn main() -> anreduce::Result<()> {
    let limits = Limits::default();
    let net = parse_network("a = !b | c\nb = a\nc = !b")?;

    let g = interaction_digraph(&net, &limits)?;
    for &(u, v) in g.edges() {
        println!("{} -> {}", net.name(u), net.name(v));
    }

    let seq = parse_schedule("{a} {b} {c}", net.names())?;
    print!(
        "{}",
        emit_update_dot(&net, &update_digraph(&net, &seq, &limits)?)
    );

    // Automata may be updated more than once per period.
    let periodic = parse_schedule("{b,c} {a} {a,b}", net.names())?;
    let x = "000".parse()?;
    println!(
        "{x} -> {} under {{b,c}} {{a}} {{a,b}}",
        apply_schedule(&net, &periodic, &x)?
    );

    for (label, s) in [
        ("parallel", UpdateSchedule::parallel(3)),
        ("sequential", seq),
    ] {
        let limit = limit_dynamics(&net, &s, &limits)?;
        println!("{label}: signature {}", limit.signature());
        for cycle in limit.cycles() {
            let words: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            println!("  {}", words.join(" -> "));
        }
    }
    Ok(())
}
