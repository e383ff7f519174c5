//! From a block-sequential network to a smaller parallel one, keeping the
//! limit dynamics.
//!
//! ```text
//! cargo run --example reduction_pipeline
//! ```

use anreduce::dynamics::limit_dynamics;
use anreduce::netlang::{emit_network, parse_network, parse_schedule};
use anreduce::parallel::parallelize;
use anreduce::reduce::{reduce_parallel, reduce_tc, ReduceOptions};
use anreduce::{AutomataNetwork, Limits, UpdateSchedule};

const NETWORK: &str = include_str!("../data/tangential.an");
const SCHEDULE: &str = include_str!("../data/tangential.sched");

fn show(
    title: &str,
    net: &AutomataNetwork,
    s: &UpdateSchedule,
    limits: &Limits,
) -> anreduce::Result<()> {
    let sig = limit_dynamics(net, s, limits)?.signature();
    println!("== {title}: {} automata, signature {sig}", net.len());
    print!("{}", emit_network(net));
    Ok(())
}

fn main() -> anreduce::Result<()> {
    let limits = Limits::default();
    let net = parse_network(NETWORK)?;
    let s = parse_schedule(SCHEDULE, net.names())?;
    show("block-sequential", &net, &s, &limits)?;

    let p = parallelize(&net, &s, &limits)?;
    let pi = |n| UpdateSchedule::parallel(n);
    show("parallel", &p, &pi(p.len()), &limits)?;

    let (tc, report) = reduce_tc(&net, &s, &limits, ReduceOptions::default())?;
    show("shape-preserving", &tc, &pi(tc.len()), &limits)?;
    for (removed, fate) in report.witness() {
        println!("  {removed}: {fate}");
    }

    let (full, report) = reduce_parallel(&p, &limits)?;
    show("fully reduced", &full, &pi(full.len()), &limits)?;
    for (removed, fate) in report.witness() {
        println!("  {removed}: {fate}");
    }
    Ok(())
}
