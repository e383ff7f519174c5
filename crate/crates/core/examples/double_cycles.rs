//! Double cycles under random block-sequential schedules: each schedule
//! behaves like the parallel double cycle shortened by its `<`-edges.
//!
//! ```text
//! cargo run --example double_cycles -- 5 4
//! ```

use anreduce::dynamics::limit_dynamics;
use anreduce::families::{build_double_cycle, dc_reduce, DcSpec};
use anreduce::graphs::Sign;
use anreduce::netlang::emit_schedule;
use anreduce::random::random_block_sequential;
use anreduce::{Limits, UpdateSchedule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anreduce::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (a, b) = match args[..] {
        [a, b, ..] => (a, b),
        _ => (5, 4),
    };
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (s, s2) in [
        (Sign::Positive, Sign::Positive),
        (Sign::Positive, Sign::Negative),
        (Sign::Negative, Sign::Negative),
    ] {
        let spec = DcSpec::new(s, s2, a, b)?;
        let net = build_double_cycle(&spec)?;
        println!(
            "{spec}: {}",
            limit_dynamics(&net, &UpdateSchedule::parallel(net.len()), &limits)?.signature()
        );
        for _ in 0..4 {
            let d = random_block_sequential(&mut rng, net.len());
            let here = limit_dynamics(&net, &d, &limits)?.signature();
            match dc_reduce(&spec, &d, &limits) {
                Ok(small) => {
                    let m = build_double_cycle(&small)?;
                    let there = limit_dynamics(&m, &UpdateSchedule::parallel(m.len()), &limits)?
                        .signature();
                    println!(
                        "  {:<28} {here:<16} {small} {there}",
                        emit_schedule(&d, net.names())
                    );
                }
                Err(e) => println!("  {:<28} {here:<16} {e}", emit_schedule(&d, net.names())),
            }
        }
    }
    Ok(())
}
