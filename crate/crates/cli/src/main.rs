use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pmr::config::{verify_plan, RejectReason, Verification};
use pmr::feasibility::{decide, Instance};
use pmr::io::{gen_instance, parse_instance, parse_plan, serialize_instance, serialize_plan, GenKind};
use pmr::oracle::{group_stats, oracle_decide_with, GeneratorMode, Limits, MoveSet};
use pmr::planner::{plan, PlanError};

#[derive(Parser)]
#[command(name = "pmr", version, about = "Pebble motion with rotations: feasibility and plans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility of an instance file.
    Decide { file: PathBuf },
    /// Synthesize and verify a plan.
    Plan {
        file: PathBuf,
        /// Write the plan here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a plan file against an instance file.
    Verify { instance: PathBuf, plan: PathBuf },
    /// Brute-force ground truth for small instances.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Write a seeded random instance.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        p: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time `decide` on generated instances and print CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = Kind::Cactus)]
        kind: Kind,
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000, 100000])]
        sizes: Vec<usize>,
        /// Number of empty vertices (p = n - holes).
        #[arg(long, default_value_t = 1)]
        holes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Decide by exhaustive search.
    Decide {
        file: PathBuf,
        /// Forbid rotations.
        #[arg(long)]
        simple_only: bool,
        #[arg(long, default_value_t = Limits::default().max_states)]
        max_states: usize,
    },
    /// Order, classification and diameter of the rotation group.
    Stats {
        file: PathBuf,
        /// Count each single-cycle rotation as one step instead of compound ones.
        #[arg(long)]
        serialized: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Cactus,
    Grid,
    Random,
}

impl From<Kind> for GenKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cycle => GenKind::Cycle,
            Kind::Cactus => GenKind::Cactus,
            Kind::Grid => GenKind::Grid,
            Kind::Random => GenKind::Random,
        }
    }
}

/// Anything that aborts a command with exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(feasible: bool) -> ExitCode {
    ExitCode::from(if feasible { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Decide { file } => {
            let d = decide(&load_instance(&file)?);
            match d.reason() {
                None => println!("FEASIBLE"),
                Some(r) => println!("INFEASIBLE {r}"),
            }
            Ok(verdict(d.is_feasible()))
        }
        Command::Plan { file, output } => match plan(&load_instance(&file)?) {
            Ok(p) => {
                emit(&serialize_plan(&p), output.as_deref())?;
                Ok(ExitCode::SUCCESS)
            }
            Err(PlanError::NotFeasible(r)) => {
                println!("INFEASIBLE {r}");
                Ok(verdict(false))
            }
            Err(e) => Err(e.into()),
        },
        Command::Verify { instance, plan } => {
            let inst = load_instance(&instance)?;
            let p = parse_plan(&read(&plan)?).map_err(|e| Failure(format!("{}: {e}", plan.display())))?;
            match verify_plan(&inst.graph, &inst.start, &inst.goal, &p) {
                Verification::Verified => {
                    println!("VERIFIED");
                    Ok(verdict(true))
                }
                Verification::Rejected { step, reason } => {
                    let why = match reason {
                        RejectReason::Illegal(e) => format!("illegal move: {e}"),
                        RejectReason::WrongFinal => "final configuration differs from the goal".to_string(),
                        RejectReason::PebbleCountMismatch => "pebble counts differ".to_string(),
                    };
                    println!("REJECTED step {step}: {why}");
                    Ok(verdict(false))
                }
            }
        }
        Command::Oracle(OracleCommand::Decide {
            file,
            simple_only,
            max_states,
        }) => {
            let inst = load_instance(&file)?;
            let moves = if simple_only {
                MoveSet::SimpleOnly
            } else {
                MoveSet::WithRotations
            };
            let limits = Limits {
                max_states,
                ..Limits::default()
            };
            let feasible = oracle_decide_with(&inst, moves, &limits)?;
            println!("{}", if feasible { "FEASIBLE" } else { "INFEASIBLE" });
            Ok(verdict(feasible))
        }
        Command::Oracle(OracleCommand::Stats { file, serialized }) => {
            let inst = load_instance(&file)?;
            let mode = if serialized {
                GeneratorMode::SimpleSerialized
            } else {
                GeneratorMode::Compound
            };
            let st = group_stats(&inst.graph, mode, &Limits::default())?;
            println!("order={} class={} diam={}", st.order, st.classification, st.diameter);
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            kind,
            n,
            p,
            seed,
            output,
        } => {
            let inst = gen_instance(kind.into(), n, p, seed)?;
            emit(&serialize_instance(&inst), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            kind,
            sizes,
            holes,
            seed,
        } => {
            println!("n,decide_seconds");
            for n in sizes {
                let p = n
                    .checked_sub(holes)
                    .filter(|&p| p > 0)
                    .ok_or_else(|| Failure(format!("n={n} leaves no pebbles")))?;
                let inst = gen_instance(kind.into(), n, p, seed)?;
                let t = Instant::now();
                let d = decide(&inst);
                let secs = t.elapsed().as_secs_f64();
                std::hint::black_box(d);
                println!("{n},{secs:.6}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
