//! How much random networks shrink once their schedule is folded in.
//!
//! ```text
//! cargo run --release --example random_census -- 500
//! ```

use std::collections::BTreeMap;

use anreduce::dynamics::limit_dynamics;
use anreduce::random::{random_block_sequential, random_network};
use anreduce::reduce::reduce;
use anreduce::{Limits, UpdateSchedule};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> anreduce::Result<()> {
    let samples: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(200);
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // removed automata -> (networks, <-edges in total)
    let mut census: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for k in 0..samples {
        let n = 2 + k % 9;
        let net = random_network(&mut rng, n, 3);
        let s = random_block_sequential(&mut rng, n);
        let (out, report) = reduce(&net, &s, &limits)?;
        let before = limit_dynamics(&net, &s, &limits)?.signature();
        let after =
            limit_dynamics(&out, &UpdateSchedule::parallel(out.len()), &limits)?.signature();
        assert_eq!(before, after);
        let e = census.entry(report.removed()).or_default();
        e.0 += 1;
        e.1 += report.lt_edges.unwrap_or(0);
    }
    println!("removed  networks  mean <-edges");
    for (removed, (count, lt)) in census {
        println!(
            "{removed:>7}  {count:>8}  {:>12.2}",
            lt as f64 / count as f64
        );
    }
    Ok(())
}
