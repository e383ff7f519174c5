//! The DSL, its JSON mirror and DOT export.
//!
//! ```text
//! cargo run --example formats
//! ```

use anreduce::graphs::interaction_digraph;
use anreduce::netlang::{emit_dot, emit_json, parse_document, parse_schedule, NetworkDocument};
use anreduce::Limits;

fn main() -> anreduce::Result<()> {
    let doc = parse_document("# feedback\nx = y & !z\ny = x | z\nz = !x\n")?;
    let net = doc.network.clone();
    let with_schedule = NetworkDocument {
        schedule: Some(parse_schedule("{x} {y,z}", net.names())?),
        ..doc
    };
    let json = emit_json(&with_schedule);
    println!("{json}");
    assert_eq!(parse_document(&json)?, with_schedule);
    print!(
        "{}",
        emit_dot(&net, &interaction_digraph(&net, &Limits::default())?)
    );

    match parse_document("a = b & !") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
