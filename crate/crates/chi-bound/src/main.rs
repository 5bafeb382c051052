//! Command-line interface.
//!
//! Exit codes: 0 success / no violations; 1 a bound violation or structure
//! claim failure was found; 2 invalid input; 3 internal consistency failure
//! (chromatic engine disagreement).

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use chi_bound::codec::{dimacs_read, graph6_decode, graph6_encode};
use chi_bound::error::Error;
use chi_bound::generate::{self, GeneratorSpec};
use chi_bound::graph::Graph;
use chi_bound::invariants::invariant_report;
use chi_bound::recognition::classify_membership;
use chi_bound::structure::{check_structure, lemma1_partition, proof_decomposition};
use chi_bound::verify::{remark_experiment, run_campaign, CampaignConfig, CampaignMode};

#[derive(Parser)]
#[command(name = "chi-bound", version, about = "Verification toolkit for {3K1, K1+C4}-free graphs")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide class membership; prints a witness when excluded
    Check(InputArgs),
    /// Exact invariants: n, m, Delta, alpha, omega, chi, with certificates
    Invariants(InputArgs),
    /// Clique partition, neighborhood decomposition, and claim checks
    Decompose(InputArgs),
    /// Run a bound-verification campaign
    VerifyBound(VerifyArgs),
    /// Construct a graph and print its graph6 string
    Generate {
        #[command(subcommand)]
        spec: GenerateCommand,
    },
    /// Join-power experiment over C5 and both wheel readings
    Remark {
        /// Largest copy count per family
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Inline graph6 string
    #[arg(long)]
    g6: Option<String>,
    /// Input file: DIMACS .col, or graph6 lines otherwise
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Every labeled graph on min-n..=max-n vertices
    #[arg(long, conflicts_with = "random")]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    min_n: usize,
    #[arg(long)]
    max_n: Option<usize>,
    /// Random G(n, p) sampling mode
    #[arg(long)]
    random: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSONL stream of violation/extremal/summary records
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip structure-claim checks
    #[arg(long)]
    skip_structure: bool,
    /// Skip the clique-cover check
    #[arg(long)]
    skip_clique_cover: bool,
}

#[derive(Subcommand)]
enum GenerateCommand {
    Cycle {
        #[arg(long)]
        len: usize,
    },
    Complete {
        #[arg(long)]
        size: usize,
    },
    /// Hub joined to a cycle on `rim` vertices
    Wheel {
        #[arg(long)]
        rim: usize,
    },
    /// k-fold join of a base graph with itself
    JoinPower {
        /// Base graph as graph6
        #[arg(long)]
        g6: String,
        #[arg(long)]
        copies: usize,
    },
    /// One G(n, p) sample
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rejection-sample until a class member appears
    Member {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10000)]
        max_tries: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EngineDisagreement { .. } => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check(input) => {
            for g in read_graphs(&input)? {
                let verdict = classify_membership(&g);
                let mut record = serde_json::to_value(&verdict).expect("serializable");
                annotate(&mut record, "graph6", graph6_encode(&g).into());
                emit(&record, cli.format);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariants(input) => {
            for g in read_graphs(&input)? {
                let report = invariant_report(&g)?;
                let mut record = serde_json::to_value(&report).expect("serializable");
                annotate(&mut record, "graph6", graph6_encode(&g).into());
                emit(&record, cli.format);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose(input) => {
            let mut any_failure = false;
            for g in read_graphs(&input)? {
                let partition = lemma1_partition(&g)?;
                let mut record = serde_json::json!({
                    "graph6": graph6_encode(&g),
                    "partition": serde_json::to_value(&partition).expect("serializable"),
                });
                if !g.is_complete() {
                    let d = proof_decomposition(&g)?;
                    let claims = check_structure(&g, &d)?;
                    any_failure |= !claims.all_hold();
                    annotate(
                        &mut record,
                        "decomposition",
                        serde_json::to_value(&d).expect("serializable"),
                    );
                    annotate(
                        &mut record,
                        "structure",
                        serde_json::to_value(&claims).expect("serializable"),
                    );
                }
                emit(&record, cli.format);
            }
            Ok(if any_failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::VerifyBound(args) => {
            let cfg = campaign_config(&args)?;
            let started = std::time::Instant::now();
            let report = match &args.out {
                Some(path) => {
                    let mut file = fs::File::create(path)?;
                    run_campaign(&cfg, Some(&mut file))?
                }
                None => run_campaign(&cfg, None)?,
            };
            eprintln!(
                "scanned {} graphs ({} members) in {:.2?}",
                report.graphs_scanned,
                report.members_found,
                started.elapsed()
            );
            let record = serde_json::to_value(&report).expect("serializable");
            emit(&record, cli.format);
            Ok(if report.has_internal_failure() {
                ExitCode::from(3)
            } else if report.has_violations() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Generate { spec } => {
            let g = build_graph(spec)?;
            println!("{}", graph6_encode(&g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Remark { k_max } => {
            let rows = remark_experiment(k_max)?;
            for row in &rows {
                let mut record = serde_json::to_value(row).expect("serializable");
                annotate(&mut record, "type", "remark_row".into());
                emit(&record, cli.format);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn campaign_config(args: &VerifyArgs) -> Result<CampaignConfig, Error> {
    let mode = if args.exhaustive {
        let max_n = args
            .max_n
            .ok_or_else(|| Error::InvalidGenerator("--exhaustive requires --max-n".into()))?;
        CampaignMode::Exhaustive {
            min_n: args.min_n,
            max_n,
        }
    } else if args.random {
        let n = args
            .n
            .ok_or_else(|| Error::InvalidGenerator("--random requires --n".into()))?;
        CampaignMode::Random {
            n,
            count: args.count,
            p: args.p,
            seed: args.seed,
        }
    } else {
        return Err(Error::InvalidGenerator(
            "choose --exhaustive or --random".into(),
        ));
    };
    Ok(CampaignConfig {
        mode,
        check_bound: true,
        check_structure: !args.skip_structure,
        check_clique_cover: !args.skip_clique_cover,
    })
}

fn build_graph(spec: GenerateCommand) -> Result<Graph, Error> {
    match spec {
        GenerateCommand::Cycle { len } => generate::generate(&GeneratorSpec::Cycle { len }),
        GenerateCommand::Complete { size } => {
            generate::generate(&GeneratorSpec::Complete { size })
        }
        GenerateCommand::Wheel { rim } => generate::generate(&GeneratorSpec::Wheel { rim }),
        GenerateCommand::JoinPower { g6, copies } => {
            let base = graph6_decode(&g6)?;
            generate::join_power(&base, copies)
        }
        GenerateCommand::Random { n, p, seed } => {
            generate::generate(&GeneratorSpec::Random { n, p, seed })
        }
        GenerateCommand::Member { n, p, seed, max_tries } => {
            generate::random_member(n, p, seed, max_tries)
        }
    }
}

/// Graphs from --g6, --file, or stdin (one graph6 line per graph).
fn read_graphs(input: &InputArgs) -> Result<Vec<Graph>, Error> {
    match (&input.g6, &input.file) {
        (Some(_), Some(_)) => Err(Error::InvalidGenerator(
            "--g6 and --file are mutually exclusive".into(),
        )),
        (Some(g6), None) => Ok(vec![graph6_decode(g6)?]),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let is_dimacs = path
                .extension()
                .is_some_and(|e| e == "col" || e == "dimacs");
            if is_dimacs {
                Ok(vec![dimacs_read(&text)?])
            } else {
                parse_graph6_lines(text.lines())
            }
        }
        (None, None) => {
            let stdin = io::stdin();
            let lines: Vec<String> = stdin.lock().lines().collect::<Result<_, _>>()?;
            if lines.iter().all(|l| l.trim().is_empty()) {
                return Err(Error::InvalidGenerator(
                    "no input: pass --g6, --file, or graph6 lines on stdin".into(),
                ));
            }
            parse_graph6_lines(lines.iter().map(|s| s.as_str()))
        }
    }
}

fn parse_graph6_lines<'a>(lines: impl Iterator<Item = &'a str>) -> Result<Vec<Graph>, Error> {
    lines
        .filter(|l| !l.trim().is_empty())
        .map(graph6_decode)
        .collect()
}

fn annotate(record: &mut Value, key: &str, value: Value) {
    if let Some(obj) = record.as_object_mut() {
        obj.insert(key.to_string(), value);
    }
}

/// Print one record; text output is rendered from the same JSON value.
fn emit(record: &Value, format: Format) {
    match format {
        Format::Json => println!("{record}"),
        Format::Text => {
            let mut out = String::new();
            render_text(record, 0, &mut out);
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(out.as_bytes()).expect("stdout");
        }
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{value}\n")),
    }
}
