use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use parke_taylor::formats;
use parke_taylor::suites::{self, Suite, SuiteOptions};
use parke_taylor_core::plucker::{open_pt_parts, ChoicePolicy};
use parke_taylor_core::pt::{build_matrix, SigmaRing};
use parke_taylor_core::{Budget, Error};

#[derive(Parser)]
#[command(name = "ptvar", version, about = "Exact constructions and checks for Parke-Taylor varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the adjacency matrix A_n in sparse text form.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow the long-running tiers.
        #[arg(long)]
        opt_in_long: bool,
    },
    /// Export an object in canonical text or as a Macaulay2 script.
    Export {
        #[arg(value_enum)]
        object: Object,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "canonical")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Wall-clock limit for the whole run.
    #[arg(long, default_value_t = 600)]
    budget_seconds: u64,
    /// Resident-memory limit; 0 disables it.
    #[arg(long, default_value_t = 4 << 30)]
    budget_bytes: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Canonical,
    CasScript,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Ideal,
    Lifts,
    Matrix,
}

/// Resident set size from `/proc/self/statm`; `None` off Linux.
fn resident_bytes() -> Option<u64> {
    let s = fs::read_to_string("/proc/self/statm").ok()?;
    let pages: u64 = s.split_whitespace().nth(1)?.parse().ok()?;
    Some(pages * 4096)
}

fn budget(args: &BudgetArgs) -> Budget {
    let deadline = Instant::now() + Duration::from_secs(args.budget_seconds);
    let bytes = args.budget_bytes;
    Budget::default().with_stop(move || {
        Instant::now() >= deadline || (bytes > 0 && resident_bytes().is_some_and(|r| r > bytes))
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), ExitCode> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(1)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::InvalidArgument(_) | Error::Unsupported(_) => 2,
        Error::BudgetExceeded(_) => 3,
        _ => 1,
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.cmd {
        Cmd::Matrix { n, out } => {
            if !(4..=10).contains(&n) {
                return Err(fail(Error::InvalidArgument(format!("matrix needs 4 <= n <= 10, got {n}"))));
            }
            let m = build_matrix(n).map_err(fail)?;
            emit(&out, &formats::matrix_text(&m, n))?;
        }
        Cmd::Verify { suite, n, budget: b, format, out, opt_in_long } => {
            let opts = SuiteOptions { budget: budget(&b), opt_in_long };
            let mut rep = suites::run(suite, n, &opts).map_err(fail)?;
            rep.param("budget_seconds", b.budget_seconds).param("budget_bytes", b.budget_bytes);
            if let Some(p) = &out {
                rep.artifacts.push(p.display().to_string());
            }
            let text = match format {
                ReportFormat::Text => rep.to_text(),
                ReportFormat::Json => rep.to_json(),
            };
            emit(&out, &text)?;
            return Ok(ExitCode::from(rep.exit_code() as u8));
        }
        Cmd::Export { object, n, format, out } => {
            let text = export(object, n, format).map_err(fail)?;
            emit(&out, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn export(object: Object, n: usize, format: ExportFormat) -> parke_taylor_core::Result<String> {
    match object {
        Object::Matrix => {
            if !(4..=10).contains(&n) {
                return Err(Error::InvalidArgument(format!("matrix needs 4 <= n <= 10, got {n}")));
            }
            let m = build_matrix(n)?;
            Ok(match format {
                ExportFormat::Canonical => formats::matrix_text(&m, n),
                ExportFormat::CasScript => formats::matrix_script(&m, n),
            })
        }
        Object::Ideal | Object::Lifts => {
            if !(5..=8).contains(&n) {
                return Err(Error::InvalidArgument(format!("generators are exported for 5 <= n <= 8, got {n}")));
            }
            let g = open_pt_parts(n, &ChoicePolicy::default())?;
            let ring = SigmaRing::new(n)?;
            match (object, format) {
                (Object::Ideal, ExportFormat::Canonical) => formats::ideal_text(&g),
                (Object::Ideal, ExportFormat::CasScript) => formats::ideal_script(&g),
                (_, ExportFormat::Canonical) => Ok(formats::lifts_text(&g.lifts, &ring)),
                (_, ExportFormat::CasScript) => Ok(formats::lifts_script(&g.lifts, &ring)),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|c| c)
}
