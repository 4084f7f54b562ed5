use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qminor::commutation::{commute, Relation};
use qminor::fixtures;
use qminor::minors::MinorSpec;
use qminor::rewrite::Normalizer;
use qminor::verify::{sweep, verify_relation, SweepConfig};

#[derive(Parser)]
#[command(
    name = "qminor",
    version,
    about = "Commutation relations between quantum minors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate and verify the relation between two minors.
    Commute {
        #[arg(long)]
        n: u32,
        /// Left minor, e.g. "[3 4|1 3]".
        #[arg(long)]
        lhs: MinorSpec,
        /// Right minor, e.g. "[1 2|2 4]".
        #[arg(long)]
        rhs: MinorSpec,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check a relation stored as JSON against the normal-form oracle.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Generate and check relations for every ordered pair of minors.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_size: usize,
        #[arg(long, env = "QMINOR_JOBS")]
        jobs: Option<usize>,
        /// Keep only records with this case tag.
        #[arg(long)]
        case: Option<String>,
        /// Write one JSON line per pair plus a summary line.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check that every relation of a sweep collapses to commutativity at q = 1.
    Q1Check {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, env = "QMINOR_JOBS")]
        jobs: Option<usize>,
    },
    /// Compare the generator against the built-in golden relations.
    Examples,
}

fn print_relation(rel: &Relation, format: Format) {
    match format {
        Format::Plain => {
            println!("{rel}");
            println!("case: {}", rel.case);
            if rel.swapped {
                println!("note: inputs were swapped so the larger minor comes first");
            }
            println!("verified: {}", rel.verified);
        }
        Format::Latex => println!("{}", rel.to_latex()),
        Format::Json => println!("{}", rel.to_json()),
    }
}

fn run(cli: Cli) -> qminor::Result<bool> {
    match cli.command {
        Command::Commute {
            n,
            lhs,
            rhs,
            format,
        } => {
            let rel = commute(&lhs, &rhs, n)?;
            print_relation(&rel, format);
            Ok(true)
        }
        Command::Verify { file } => {
            let rel = Relation::from_json(&std::fs::read_to_string(file)?)?;
            let report = verify_relation(&rel, rel.n);
            if report.is_zero() {
                println!("verified: true");
            } else {
                println!("verified: false");
                println!("residual: {}", report.residual);
            }
            Ok(report.is_zero())
        }
        Command::Sweep {
            n,
            max_size,
            jobs,
            case,
            output,
        } => {
            let cfg = SweepConfig {
                n,
                max_size,
                case_filter: case,
                jobs,
                output,
            };
            let summary = sweep(&cfg)?;
            for r in summary.records.iter().filter(|r| !r.passed()) {
                eprintln!("FAIL {}", serde_json::to_string(r)?);
            }
            println!("{}", serde_json::to_string(&summary)?);
            Ok(summary.ok())
        }
        Command::Q1Check { n, max_size, jobs } => {
            let summary = sweep(&SweepConfig {
                jobs,
                ..SweepConfig::new(n, max_size)
            })?;
            let bad: Vec<_> = summary
                .records
                .iter()
                .filter(|r| !r.q1 || !r.verified)
                .collect();
            for r in &bad {
                eprintln!("FAIL {} {}", r.lhs, r.rhs);
            }
            println!(
                "q=1 specialization: {}/{} relations collapse",
                summary.total - bad.len(),
                summary.total
            );
            Ok(bad.is_empty())
        }
        Command::Examples => {
            let mut norm = Normalizer::new();
            let outcomes: Vec<_> = fixtures::builtin()
                .iter()
                .map(|f| fixtures::check(f, &mut norm))
                .collect();
            println!(
                "{:<26} {:>8} {:>10} {:>6}",
                "fixture", "golden", "generated", "diffs"
            );
            for o in &outcomes {
                println!(
                    "{:<26} {:>8} {:>10} {:>6}",
                    o.name,
                    o.golden_verified,
                    o.generated_verified,
                    o.diffs.len()
                );
                for d in &o.diffs {
                    println!(
                        "    {}: expected {}, got {}",
                        d.product, d.expected, d.actual
                    );
                }
                if let Some(e) = &o.error {
                    println!("    error: {e}");
                }
            }
            let passed = outcomes.iter().filter(|o| o.passed()).count();
            println!("{passed}/{} pass", outcomes.len());
            Ok(passed == outcomes.len())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
