use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use anreduce::dynamics::{full_dynamics, limit_dynamics, LimitDynamics};
use anreduce::families::{build_double_cycle, build_tc, DcSpec, TcSpec};
use anreduce::graphs::{interaction_digraph, update_digraph, Sign};
use anreduce::netlang::{
    emit_dot, emit_dynamics_dot, emit_json, emit_network, emit_schedule, emit_update_dot,
    parse_document, parse_schedule, NetworkDocument,
};
use anreduce::parallel::{parallelize_with, ParallelizeOptions};
use anreduce::random::{random_block_sequential, random_tc_spec};
use anreduce::reduce::{reduce, reduce_tc, ReduceOptions, ReductionReport};
use anreduce::{AutomataNetwork, Error, ErrorClass, Limits, UpdateSchedule};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Boolean automata networks: parallelize block-sequential schedules,
/// reduce network size, enumerate limit dynamics.
#[derive(Parser)]
#[command(name = "anreduce", version)]
struct Cli {
    /// Largest network whose configurations are enumerated.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    cap_n: u64,
    /// Largest circuit support checked by truth table.
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    cap_support: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for dynamics enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// A network file (DSL or JSON, `-` for stdin) and an optional schedule,
/// given as a file or inline (`"{a} {b,c}"`). Without one, the schedule
/// embedded in a JSON document is used, then the parallel schedule.
#[derive(Args)]
struct Input {
    network: String,
    schedule: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite the network so one parallel step equals one period.
    Parallelize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        hash_cons: bool,
    },
    /// Parallelize, then merge and prune automata.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduce: ReduceFlags,
    },
    /// Shape-preserving reduction of a tangential-cycle network.
    ReduceTc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        reduce: ReduceFlags,
    },
    /// Compare the limit dynamics of two networks.
    Verify {
        left: String,
        right: String,
        #[arg(long)]
        left_schedule: Option<String>,
        #[arg(long)]
        right_schedule: Option<String>,
    },
    /// Limit cycles.
    Limit {
        #[command(flatten)]
        input: Input,
    },
    /// Full transition table.
    Dynamics {
        #[command(flatten)]
        input: Input,
    },
    /// Number of limit cycles of a given length.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        length: usize,
    },
    /// Generate a network or schedule.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Interaction digraph, or update digraph when a schedule is given.
    Dot {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct ReduceFlags {
    /// Check that the limit signature is unchanged.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    fixpoint_prune: bool,
}

#[derive(Subcommand)]
enum Family {
    /// Tangential cycles.
    Tc {
        /// Cycle lengths, e.g. `4,3,1`.
        #[arg(long, value_delimiter = ',', required_unless_present = "random")]
        cycles: Vec<usize>,
        /// One sign per cycle, e.g. `-,-,+` (default: all positive).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        signs: Vec<Sign>,
        #[arg(long, default_value_t = 0)]
        tangent: usize,
        /// Draw a spec from `--seed` with this many cycles at most.
        #[arg(long, conflicts_with = "cycles")]
        random: Option<usize>,
    },
    /// Disjunctive double cycle.
    Dc {
        /// The two cycle lengths, e.g. `3,4`.
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        sizes: Vec<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "+,+"
        )]
        signs: Vec<Sign>,
    },
    /// A block-sequential schedule drawn from `--seed` for a network.
    Schedule { network: String },
}

enum Failure {
    Io(String),
    Lib(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

fn read(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
    }
}

fn load(network: &str, schedule: Option<&str>) -> Res<(AutomataNetwork, UpdateSchedule)> {
    let doc = parse_document(&read(network)?)?;
    let schedule = match schedule {
        Some(s) if s.trim_start().starts_with('{') && !Path::new(s).exists() => {
            parse_schedule(s, doc.network.names())?
        }
        Some(s) => parse_schedule(&read(s)?, doc.network.names())?,
        None => doc
            .schedule
            .unwrap_or_else(|| UpdateSchedule::parallel(doc.network.len())),
    };
    Ok((doc.network, schedule))
}

fn network_text(net: &AutomataNetwork, format: Format) -> String {
    match format {
        Format::Json => {
            emit_json(&NetworkDocument {
                network: net.clone(),
                schedule: None,
            }) + "\n"
        }
        _ => emit_network(net),
    }
}

fn json_value(net: &AutomataNetwork) -> serde_json::Value {
    serde_json::from_str(&network_text(net, Format::Json)).expect("emitted JSON parses")
}

fn print_report(report: &ReductionReport) {
    let lt = report
        .lt_edges
        .map(|l| format!(", {l} <-edges"))
        .unwrap_or_default();
    eprintln!(
        "# {} -> {} automata, {} merged, {} pruned{lt}",
        report.initial_size,
        report.final_size,
        report.merges.len(),
        report.pruned.len()
    );
    for (removed, fate) in report.witness() {
        eprintln!("#   {removed}: {fate}");
    }
    for w in &report.warnings {
        eprintln!("# warning: {w}");
    }
}

fn run_reduce(cli: &Cli, input: &Input, flags: &ReduceFlags, tc: bool, limits: &Limits) -> Res<()> {
    let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
    let opts = ReduceOptions {
        fixpoint_prune: flags.fixpoint_prune,
    };
    let (out, report) = if tc {
        reduce_tc(&net, &schedule, limits, opts)?
    } else {
        reduce(&net, &schedule, limits)?
    };
    let check = if flags.verify {
        let before = limit_dynamics(&net, &schedule, limits)?.signature();
        let after = limit_dynamics(&out, &UpdateSchedule::parallel(out.len()), limits)?.signature();
        Some((before, after))
    } else {
        None
    };
    if cli.format == Format::Json {
        let mut v = serde_json::json!({
            "network": json_value(&out),
            "report": report,
        });
        if let Some((before, after)) = &check {
            v["verify"] =
                serde_json::json!({ "before": before, "after": after, "match": before == after });
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    } else {
        print!("{}", network_text(&out, cli.format));
        print_report(&report);
    }
    match check {
        Some((before, after)) if before != after => Err(Failure::Mismatch(format!(
            "signature mismatch: {before} before, {after} after"
        ))),
        Some((before, _)) => {
            eprintln!("signature match: {before}");
            Ok(())
        }
        None => Ok(()),
    }
}

fn describe(limit: &LimitDynamics) -> String {
    let sig = limit.signature();
    let lengths: Vec<String> = sig.lengths().iter().map(|l| l.to_string()).collect();
    match lengths.len() {
        1 => format!("1 cycle: length {}", lengths[0]),
        k => format!("{k} cycles: lengths {}", lengths.join(", ")),
    }
}

fn run(cli: &Cli) -> Res<()> {
    let limits = Limits {
        max_support: cli.cap_support as usize,
        max_automata: cli.cap_n as usize,
    };
    match &cli.command {
        Command::Parallelize { input, hash_cons } => {
            let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
            let out = parallelize_with(
                &net,
                &schedule,
                &limits,
                ParallelizeOptions {
                    hash_cons: *hash_cons,
                },
            )?;
            if cli.format == Format::Json {
                let v = serde_json::json!({
                    "network": json_value(&out.network),
                    "report": out.report,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                print!("{}", emit_network(&out.network));
            }
        }
        Command::Reduce { input, reduce } => run_reduce(cli, input, reduce, false, &limits)?,
        Command::ReduceTc { input, reduce } => run_reduce(cli, input, reduce, true, &limits)?,
        Command::Verify {
            left,
            right,
            left_schedule,
            right_schedule,
        } => {
            let (a, sa) = load(left, left_schedule.as_deref())?;
            let (b, sb) = load(right, right_schedule.as_deref())?;
            let (la, lb) = (
                limit_dynamics(&a, &sa, &limits)?,
                limit_dynamics(&b, &sb, &limits)?,
            );
            let same_automata = a.names() == b.names();
            let identical = same_automata
                && full_dynamics(&a, &sa, &limits)? == full_dynamics(&b, &sb, &limits)?;
            let (x, y) = (la.signature(), lb.signature());
            if cli.format == Format::Json {
                let mut v = serde_json::json!({
                    "limit_isomorphic": x == y,
                    "left": x,
                    "right": y,
                });
                if same_automata {
                    v["dynamics_equal"] = identical.into();
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                if same_automata {
                    println!("dynamics equal: {}", if identical { "yes" } else { "no" });
                }
                if x == y {
                    println!("limit-isomorphic: yes, signature {x}");
                } else {
                    println!("limit-isomorphic: no, signatures {x} vs {y}");
                }
            }
        }
        Command::Limit { input } => {
            let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
            let limit = limit_dynamics(&net, &schedule, &limits)?;
            let cycles: Vec<Vec<String>> = limit
                .cycles()
                .iter()
                .map(|c| c.iter().map(|x| x.to_string()).collect())
                .collect();
            if cli.format == Format::Json {
                let v = serde_json::json!({ "signature": limit.signature(), "cycles": cycles });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("serializable")
                );
            } else {
                println!("{}", describe(&limit));
                for c in cycles {
                    println!("  {}", c.join(" -> "));
                }
            }
        }
        Command::Dynamics { input } => {
            let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
            let d = full_dynamics(&net, &schedule, &limits)?;
            let n = net.len();
            let word = |k: u64| anreduce::Configuration::from_index(n, k).to_string();
            match cli.format {
                Format::Dot => print!("{}", emit_dynamics_dot(&d, &d.limit())),
                Format::Json => {
                    let table: serde_json::Map<String, serde_json::Value> = d
                        .successors()
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| (word(x as u64), word(y as u64).into()))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&table).expect("serializable")
                    );
                }
                Format::Text => {
                    for (x, &y) in d.successors().iter().enumerate() {
                        println!("{} -> {}", word(x as u64), word(y as u64));
                    }
                }
            }
        }
        Command::Count { input, length } => {
            let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
            println!(
                "{}",
                limit_dynamics(&net, &schedule, &limits)?.count(*length)
            );
        }
        Command::Gen { family } => {
            let net = match family {
                Family::Tc {
                    cycles,
                    signs,
                    tangent,
                    random,
                } => {
                    let spec = match random {
                        Some(k) => {
                            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                            random_tc_spec(&mut rng, (*k).max(1), 6, 2)
                        }
                        None => {
                            let signs = if signs.is_empty() {
                                vec![Sign::Positive; cycles.len()]
                            } else {
                                signs.clone()
                            };
                            TcSpec::new(cycles.clone(), signs, *tangent)?
                        }
                    };
                    eprintln!("# {spec}");
                    build_tc(&spec)?
                }
                Family::Dc { sizes, signs } => {
                    if sizes.len() != 2 || signs.len() != 2 {
                        return Err(Error::InvalidSpec(
                            "a double cycle takes two sizes and two signs".into(),
                        )
                        .into());
                    }
                    build_double_cycle(&DcSpec::new(signs[0], signs[1], sizes[0], sizes[1])?)?
                }
                Family::Schedule { network } => {
                    let doc = parse_document(&read(network)?)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    let s = random_block_sequential(&mut rng, doc.network.len());
                    println!("{}", emit_schedule(&s, doc.network.names()));
                    return Ok(());
                }
            };
            print!("{}", network_text(&net, cli.format));
        }
        Command::Dot { input } => {
            let doc = parse_document(&read(&input.network)?)?;
            if input.schedule.is_some() || doc.schedule.is_some() {
                let (net, schedule) = load(&input.network, input.schedule.as_deref())?;
                print!(
                    "{}",
                    emit_update_dot(&net, &update_digraph(&net, &schedule, &limits)?)
                );
            } else {
                let net = doc.network;
                print!("{}", emit_dot(&net, &interaction_digraph(&net, &limits)?));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) | Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Parse => 2,
                ErrorClass::Precondition => 3,
                ErrorClass::CapExceeded => 4,
            })
        }
    }
}
