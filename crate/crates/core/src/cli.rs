//! Command-line front end. `run` takes the arguments after the program name
//! and returns the exit status with whatever would go to stdout and stderr.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::asymptotics::gap_sequence;
use crate::error::{Error, Result};
use crate::instance::{parse_instance, symmetrize, Instance};
use crate::interventions::{clone, recover_ordered_matching, stabilize_by_removal};
use crate::report::{
    DiagnosisReport, FractionalReport, OptimumReport, OrderedReport, Provenance, RemovalReport, Report, SeriesReport,
};
use crate::roommate::{brute_force_optimum, maximal_matchings, solve_integer_optimum, ORACLE_LIMIT};
use crate::stability::{decide_stability, diagnose_matching};
use crate::transport::half_integral_optimum;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "roommate", version, about = "Exact solver for transferable-utility roommate markets")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit the provenance block.
    #[arg(long, global = true)]
    no_provenance: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer and fractional optima.
    Solve {
        /// Use exhaustive enumeration (small populations only).
        #[arg(long)]
        oracle: bool,
        file: PathBuf,
    },
    /// Stability verdict, stable outcome or explanation, dual certificate.
    Stability { file: PathBuf },
    /// Multiply every count by K and decide stability of the result.
    Clone {
        #[arg(long, value_name = "K")]
        factor: u64,
        file: PathBuf,
    },
    /// Remove one individual of each odd type and price the removals.
    Stabilize { file: PathBuf },
    /// Solve an ordered-role market through its symmetric version.
    Symmetrize { file: PathBuf },
    /// Per-capita gap and removal cost along k = 1..K.
    Asymptotics {
        #[arg(long, value_name = "K")]
        kmax: u64,
        file: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_status(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::NodeLimit(_) => EXIT_RESOURCE,
        _ => EXIT_VALIDATION,
    }
}

pub fn run<S: AsRef<str>>(argv: &[S]) -> Execution {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(std::iter::once("roommate".to_string()).chain(argv.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { status: EXIT_VALIDATION, stdout: String::new(), stderr: text }
            } else {
                Execution { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let artifact = match execute(&cli, &argv) {
        Ok(a) => a,
        Err(e) => return Execution { status: exit_status(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    match &cli.global.out {
        Some(path) => match fs::write(path, &artifact) {
            Ok(()) => Execution { status: EXIT_OK, stdout: String::new(), stderr: String::new() },
            Err(e) => Execution {
                status: EXIT_IO,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Execution { status: EXIT_OK, stdout: artifact, stderr: String::new() },
    }
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    parse_instance(&text)
}

fn execute(cli: &Cli, argv: &[String]) -> Result<String> {
    let g = &cli.global;
    let is_series = matches!(cli.command, Command::Asymptotics { .. });
    let format = g.format.unwrap_or(if is_series { Format::Csv } else { Format::Json });
    if format == Format::Csv && !is_series {
        return Err(Error::Malformed("--format csv is only available for asymptotics".into()));
    }

    let mut report = match &cli.command {
        Command::Solve { oracle, file } => {
            let inst = load(file)?;
            inst.ensure_exchangeable()?;
            let (matching, value, engine) = if *oracle {
                let (m, v) = brute_force_optimum(&inst)?;
                (m, v, "brute-force")
            } else {
                let (m, v) = solve_integer_optimum(&inst)?;
                (m, v, "branch-and-bound")
            };
            let frac = half_integral_optimum(&inst)?;
            let mut r = Report::new("solve", &inst);
            r.optimum = Some(OptimumReport::new(engine, &matching, &value));
            r.fractional = Some(FractionalReport::from(&frac));
            r
        }
        Command::Stability { file } => {
            let inst = load(file)?;
            let verdict = decide_stability(&inst)?;
            let mut r = Report::new("stability", &inst).with_verdict(&verdict);
            if !verdict.stable {
                let candidates = if inst.population() <= ORACLE_LIMIT {
                    maximal_matchings(&inst)
                } else {
                    vec![verdict.optimum.clone()]
                };
                let diagnoses = candidates
                    .iter()
                    .map(|m| diagnose_matching(&inst, m).map(|d| DiagnosisReport::from(&d)))
                    .collect::<Result<Vec<_>>>()?;
                r.explanations = Some(diagnoses);
            }
            r
        }
        Command::Clone { factor, file } => {
            let cloned = clone(&load(file)?, *factor)?;
            let verdict = decide_stability(&cloned)?;
            let mut r = Report::new("clone", &cloned).with_verdict(&verdict);
            r.factor = Some(*factor);
            r
        }
        Command::Stabilize { file } => {
            let inst = load(file)?;
            let plan = stabilize_by_removal(&inst)?;
            let verdict = decide_stability(&inst)?;
            let mut r = Report::new("stabilize", &inst).with_verdict(&verdict);
            r.removal = Some(RemovalReport::from(&plan));
            r
        }
        Command::Symmetrize { file } => {
            let inst = load(file)?;
            let (om, verdict) = recover_ordered_matching(&inst)?;
            let (sym, pref) = symmetrize(&inst);
            let mut r = Report::new("symmetrize", &inst).with_verdict(&verdict);
            r.ordered = Some(OrderedReport::new(&sym, &pref, &om));
            r
        }
        Command::Asymptotics { kmax, file } => {
            let inst = load(file)?;
            let series = gap_sequence(&inst, *kmax)?;
            if format == Format::Csv {
                return Ok(series.to_csv());
            }
            let mut r = Report::new("asymptotics", &inst);
            r.series = Some(SeriesReport::from(&series));
            r
        }
    };
    if !g.no_provenance {
        report.provenance = Some(Provenance::new(argv));
    }
    Ok(report.to_json())
}
