use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use oriented_pursuit::equilibria::detect_equilibria;
use oriented_pursuit::io::read_graph_file;
use oriented_pursuit::pure::compute_pure_structure;
use oriented_pursuit::report::{analyze, characterize_report, equilibria_report, pure_report, value_csv, value_report, SCHEMA_VERSION};
use oriented_pursuit::solver::{gamma, value_iteration, DEFAULT_EPSILON};
use oriented_pursuit::verify::{enumerate_connected_oriented_graphs, run_sweep, sample_graphs, VerificationRecord};
use oriented_pursuit::{GameConfig, Result};

#[derive(Parser)]
#[command(name = "pursuit", version, about = "Discounted pursuit games on oriented graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of a graph file.
    Analyze { file: PathBuf },
    /// Value of every state.
    Solve {
        file: PathBuf,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Structural verdicts for one pair of positions next to the solver value.
    Characterize {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        delta: f64,
    },
    /// Pure-strategy structure: the losing set and move labels.
    Pure { file: PathBuf },
    /// Static, walking-together and 2-chase equilibria.
    Equilibria {
        file: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// Positive root of g^(a-2) + g - 1.
    Gamma {
        #[arg(long)]
        a: u32,
    },
    /// Compare structural predicates with the solver.
    Verify {
        /// Enumerate every connected oriented graph up to this size.
        #[arg(long, default_value_t = 4)]
        exhaustive_n: usize,
        /// Random graphs on 6 to 8 vertices.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, num_args = 1.., required = true)]
        delta: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    schema_version: u32,
    graphs: usize,
    records: usize,
    mismatched_records: usize,
    mismatches: Vec<&'a VerificationRecord>,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze { file } => {
            let doc = read_graph_file(&file)?;
            print_json(&analyze(&doc.name, &doc.graph));
        }
        Command::Solve { file, delta, epsilon, format } => {
            let doc = read_graph_file(&file)?;
            let cfg = GameConfig::new(doc.graph, delta)?;
            let report = value_report(&cfg, &value_iteration(&cfg, epsilon)?);
            match format {
                Format::Json => print_json(&report),
                Format::Csv => print!("{}", value_csv(&report)),
            }
        }
        Command::Characterize { file, x, y, delta } => {
            let doc = read_graph_file(&file)?;
            let cfg = GameConfig::new(doc.graph, delta)?;
            let s = cfg.state_by_name(&x, &y)?;
            let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
            print_json(&characterize_report(&cfg, &vt, s));
        }
        Command::Pure { file } => {
            let doc = read_graph_file(&file)?;
            print_json(&pure_report(&doc.graph, &compute_pure_structure(&doc.graph)));
        }
        Command::Equilibria { file, delta } => {
            let doc = read_graph_file(&file)?;
            let cfg = GameConfig::new(doc.graph, delta)?;
            let vt = value_iteration(&cfg, DEFAULT_EPSILON)?;
            print_json(&equilibria_report(&cfg, &detect_equilibria(&cfg, &vt)));
        }
        Command::Gamma { a } => println!("{:.12}", gamma(a)?),
        Command::Verify { exhaustive_n, samples, seed, delta } => {
            if exhaustive_n > 5 {
                return Err(oriented_pursuit::Error::SizeCap { op: "verify", size: exhaustive_n, cap: 5 });
            }
            let mut graphs: Vec<_> = (1..=exhaustive_n).flat_map(enumerate_connected_oriented_graphs).collect();
            graphs.extend(sample_graphs(seed, samples, 6, 8));
            let records = run_sweep(&graphs, &delta);
            let mismatches: Vec<&VerificationRecord> = records.iter().filter(|r| !r.matched).collect();
            let ok = mismatches.is_empty();
            print_json(&VerifySummary {
                schema_version: SCHEMA_VERSION,
                graphs: graphs.len(),
                records: records.len(),
                mismatched_records: mismatches.len(),
                mismatches,
            });
            if !ok {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
