//! Command-line front end: argument parsing, job dispatch, batch execution
//! and report rendering.

mod commands;
mod input;

use std::path::PathBuf;
use std::time::Duration;

use bialg_core::Budget;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{Map, Value};

pub use input::{parse_duration, parse_list, parse_rational_arg, InputError};

#[derive(Debug, Parser)]
#[command(name = "bialg", version, about = "Exact verification and construction of Lie bialgebra cocycles")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Largest height tried by norm-equation searches.
    #[arg(long, global = true, default_value_t = 64)]
    pub budget_height: u32,

    /// Wall-clock limit per search, in seconds ("10" or "10s").
    #[arg(long, global = true, alias = "budget", value_parser = parse_duration, default_value = "10")]
    pub budget_time: Duration,

    /// Write the JSON report here and print a summary instead.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

impl CommonArgs {
    pub fn budget(&self) -> Budget {
        Budget {
            max_height: self.budget_height,
            max_time: self.budget_time,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// CYB and r + r21 = Ω for a Belavin–Drinfeld r-matrix.
    VerifyRmatrix(commands::RmatrixArgs),
    /// Cobracket axioms for δ = ∂r, optionally for (Ad_X ⊗ Ad_X)(√d·r).
    VerifyBialgebra(commands::BialgebraArgs),
    /// Isotropy, duality and r-matrix recovery for the su(n) Manin triple.
    ManinCheck(commands::ManinArgs),
    /// Builds X with X*X = diag(...) over Q(√d).
    ConstructCocycle(commands::ConstructArgs),
    /// Decides whether two diagonal cocycles are cohomologous.
    Cohomologous(commands::CohomologousArgs),
    /// Norm-class vector and quaternion tuple of a diagonal cocycle.
    Classify(commands::ClassifyArgs),
    /// Checks and normalizes an anti-diagonal cocycle.
    Antidiag(commands::AntidiagArgs),
    /// Twisted-cocycle predicate, or a bounded search for n = 2.
    Twisted(commands::TwistedArgs),
    /// Quaternion algebras and norm equations.
    #[command(subcommand)]
    Quat(commands::QuatCommand),
    /// Runs a JSON array of argument vectors in parallel.
    Batch(BatchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BatchArgs {
    /// File holding `[["construct-cocycle", "--d", "-1", ...], ...]`.
    pub file: PathBuf,
}

/// Outcome class of a job, ordered by severity for batch aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Undecided,
    Failed,
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Invalid => 2,
            Status::Undecided => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Invalid => "invalid",
            Status::Undecided => "undecided",
        }
    }

    fn severity(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Undecided => 1,
            Status::Failed => 2,
            Status::Invalid => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub fields: Map<String, Value>,
    pub summary: String,
}

impl Report {
    pub fn new(command: &str, status: Status, summary: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            status,
            fields: Map::new(),
            summary: summary.into(),
        }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    pub fn invalid(command: &str, msg: impl std::fmt::Display) -> Self {
        Report::new(command, Status::Invalid, format!("invalid input: {msg}")).with("error", msg.to_string())
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("status".into(), Value::String(self.status.as_str().into()));
        Value::Object(m)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Report {
    let budget = cli.common.budget();
    match &cli.command {
        Command::VerifyRmatrix(a) => commands::verify_rmatrix(a),
        Command::VerifyBialgebra(a) => commands::verify_bialgebra(a),
        Command::ManinCheck(a) => commands::manin_check(a),
        Command::ConstructCocycle(a) => commands::construct(a, &budget),
        Command::Cohomologous(a) => commands::cohomologous(a),
        Command::Classify(a) => commands::classify(a, &budget),
        Command::Antidiag(a) => commands::antidiag(a, &budget),
        Command::Twisted(a) => commands::twisted(a),
        Command::Quat(q) => commands::quat(q, &budget),
        Command::Batch(b) => run_batch(b, &cli.common),
    }
}

fn run_batch(b: &BatchArgs, common: &CommonArgs) -> Report {
    let text = match std::fs::read_to_string(&b.file) {
        Ok(t) => t,
        Err(e) => return Report::invalid("batch", format!("{}: {e}", b.file.display())),
    };
    let jobs: Vec<Vec<String>> = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return Report::invalid("batch", format!("expected an array of argument arrays: {e}")),
    };
    let reports: Vec<Report> = jobs.par_iter().map(|argv| run_job(argv, common)).collect();
    let worst = reports
        .iter()
        .map(|r| r.status)
        .max_by_key(|s| s.severity())
        .unwrap_or(Status::Ok);
    let counts = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = format!(
        "{} jobs: {} ok, {} failed, {} invalid, {} undecided",
        reports.len(),
        counts(Status::Ok),
        counts(Status::Failed),
        counts(Status::Invalid),
        counts(Status::Undecided)
    );
    Report::new("batch", worst, summary).with("jobs", reports.iter().map(Report::to_json).collect::<Vec<_>>())
}

/// Parses and runs one batch entry. Budget flags absent from the entry
/// inherit the batch's values; nested batches are rejected.
fn run_job(argv: &[String], common: &CommonArgs) -> Report {
    let mut full = vec!["bialg".to_string()];
    if !argv.iter().any(|a| a.starts_with("--budget-height")) {
        full.push(format!("--budget-height={}", common.budget_height));
    }
    if !argv.iter().any(|a| a.starts_with("--budget-time") || a.starts_with("--budget=") || a == "--budget") {
        full.push(format!("--budget-time={}", common.budget_time.as_secs_f64()));
    }
    full.extend(argv.iter().cloned());
    let name = argv.first().cloned().unwrap_or_default();
    match Cli::try_parse_from(&full) {
        Ok(cli) if matches!(cli.command, Command::Batch(_)) => Report::invalid(&name, "nested batch"),
        Ok(cli) => run(&cli),
        Err(e) => Report::invalid(&name, e.to_string().lines().next().unwrap_or("unparsable arguments")),
    }
}
