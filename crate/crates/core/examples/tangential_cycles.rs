//! Build a tangential-cycle network, recognize it back, and compare the
//! predicted shortened shape with the actual reduction.
//!
//! ```text
//! cargo run --example tangential_cycles
//! ```

use anreduce::families::{build_tc, recognize_tc, tc_fast_reduce, TcSpec};
use anreduce::graphs::Sign::{Negative, Positive};
use anreduce::netlang::{emit_network, emit_schedule};
use anreduce::random::random_block_sequential;
use anreduce::reduce::{reduce_parallel, reduce_tc, ReduceOptions};
use anreduce::Limits;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anreduce::Result<()> {
    let limits = Limits::default();
    let spec = TcSpec::new(vec![5, 4, 3], vec![Positive, Negative, Positive], 1)?;
    let net = build_tc(&spec)?;
    print!("{spec}\n{}", emit_network(&net));

    let shape = recognize_tc(&net, &limits)?.expect("built networks are recognized");
    println!(
        "central {}, tangent {:?}",
        net.name(shape.central),
        shape.tangent
    );

    let (zipped, _) = reduce_parallel(&net, &limits)?;
    println!(
        "parallel: {} automata, largest cycle {}",
        zipped.len(),
        spec.largest_cycle()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let d = random_block_sequential(&mut rng, net.len());
        let predicted = tc_fast_reduce(&spec, &d, &net, &limits);
        let (out, report) = reduce_tc(&net, &d, &limits, ReduceOptions::default())?;
        let found = recognize_tc(&out, &limits)?.map(|s| s.spec.to_string());
        println!(
            "{}\n  predicted {}, reduced to {} ({} removed for {} <-edges), shape {}",
            emit_schedule(&d, net.names()),
            predicted.map_or_else(|e| e.to_string(), |p| p.canonical().to_string()),
            out.len(),
            report.removed(),
            report.lt_edges.unwrap_or(0),
            found.as_deref().unwrap_or("not a TC"),
        );
    }
    Ok(())
}
