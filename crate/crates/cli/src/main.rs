//! `verify`: run the osp(1|2n) verification suites from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails or an input
//! is rejected, 2 on usage errors.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use osp_core::algebra::build_osp;
use osp_core::dump::{self, DumpKind};
use osp_core::pbw::UeContext;
use osp_core::suite::{run_suite, Options, Suite};
use osp_core::Error;

/// Longest word accepted by `normal-form`.
const MAX_WORD: usize = 32;

#[derive(Parser, Debug)]
#[command(name = "verify", version, about = "Exact verification of osp(1|2n) r-matrices, twists and R-operators")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Suite to run: algebra, cybe, contraction, twist, quantum or all.
    suite: Option<String>,

    /// Suite to run (same as the positional argument).
    #[arg(long = "suite", value_name = "NAME")]
    suite_flag: Option<String>,

    /// Rank n of osp(1|2n).
    #[arg(long, default_value_t = 2)]
    n: usize,

    /// PBW truncation degree for universal checks.
    #[arg(long, default_value_t = 6)]
    degree: i32,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Print a canonical JSON dump instead of running checks.
    #[arg(long, value_name = "algebra|rep|rmatrix")]
    dump: Option<String>,

    /// Report 0 ms for every check, making the output byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// PBW normal form of a word such as `-1/2*X+ v+ H`.
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Drop terms of grade above this bound.
        #[arg(long)]
        degree: Option<i32>,
    },
    /// Re-verify an algebra dump (`-` reads standard input).
    CheckDump { path: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownSuite(_) | Error::InvalidOption(_) => Failure::Usage(e.to_string()),
            e => Failure::Rejected(e.to_string()),
        }
    }
}

fn suite_name(cli: &Cli) -> Result<Suite, Failure> {
    let name = match (&cli.suite, &cli.suite_flag) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Usage(format!("conflicting suites `{a}` and `{b}`"))),
        (Some(a), _) | (None, Some(a)) => a.as_str(),
        (None, None) => "all",
    };
    Ok(Suite::parse(name)?)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match &cli.command {
        Some(Command::NormalForm { word, n, degree }) => return normal_form(word, *n, *degree).map(|_| true),
        Some(Command::CheckDump { path }) => return check_dump(path),
        None => {}
    }
    if let Some(kind) = &cli.dump {
        emit(&format!("{}\n", dump::write(DumpKind::parse(kind)?, cli.n)?));
        return Ok(true);
    }
    let suite = suite_name(&cli)?;
    let opts = Options { n: cli.n, degree: cli.degree, timing: !cli.no_timing };
    let report = run_suite(suite, &opts)?;
    match cli.format {
        Format::Text => emit(&report.to_text()),
        Format::Json => emit(&format!("{}\n", report.to_json())),
    }
    Ok(report.passed())
}

fn normal_form(word: &str, n: usize, degree: Option<i32>) -> Result<(), Failure> {
    if n == 0 || n > dump::MAX_RANK {
        return Err(Failure::Usage(format!("--n {n} outside 1..={}", dump::MAX_RANK)));
    }
    let w = osp_core::parse::word(word)?;
    if w.labels.len() > MAX_WORD {
        return Err(Failure::Usage(format!("word longer than {MAX_WORD} generators")));
    }
    let (alg, _) = build_osp(n);
    let ctx = UeContext::new(Arc::new(alg));
    let labels: Vec<&str> = w.labels.iter().map(String::as_str).collect();
    emit(&format!("{}\n", ctx.normal_form(&labels, w.coeff, degree)?));
    Ok(())
}

fn check_dump(path: &str) -> Result<bool, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let alg = dump::read_algebra(&text).map_err(|e| Failure::Rejected(e.to_string()))?;
    let report = dump::check(&alg);
    emit(&format!(
        "rank {} dimension {}\njacobi violations: {}\nantisymmetry violations: {}\nmatches construction: {}\nstatus: {}\n",
        alg.rank(),
        alg.dim(),
        report.jacobi_violations,
        report.antisymmetry_violations,
        report.matches_construction,
        if report.ok() { "pass" } else { "fail" }
    ));
    Ok(report.ok())
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Rejected(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
