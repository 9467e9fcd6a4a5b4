use std::io::{self, Write};

use clap::{Parser, Subcommand};
use qhecke::catalog;
use qhecke::{Error, VerificationReport};

use crate::eval::eval;
use crate::syntax::parse;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

/// Terms shown by the human-readable series printer.
pub const DISPLAY_TERMS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "qhecke", version, about = "Exact q-series expansion and identity verification")]
pub struct Cli {
    /// Working order: series are reported through q^ORDER.
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(i64).range(0..=100_000))]
    pub order: i64,

    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for `verify --all` (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand an expression as a q-series.
    Expand {
        /// Expression, e.g. "J(1)^2 * chi0()".
        expr: String,
    },
    /// Check a registered identity coefficient by coefficient.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        /// Check every registered identity.
        #[arg(long)]
        all: bool,
    },
    /// Print the residual series of the open conjecture.
    Residual,
    /// List registered identities.
    List,
}

/// Runs the command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match &cli.command {
        Command::Expand { expr } => expand(cli, expr, out, err),
        Command::Verify { name: Some(name), .. } => match catalog::verify(name, cli.order) {
            Ok(report) => {
                print_report(cli, &report, out)?;
                Ok(if report.passed { EXIT_PASS } else { EXIT_FAIL })
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(match e.root() {
                    Error::UnknownIdentity(_) => EXIT_USAGE,
                    _ => EXIT_EVAL,
                })
            }
        },
        Command::Verify { name: None, .. } => verify_all(cli, out, err),
        Command::Residual => match catalog::conjecture_residual(cli.order) {
            Ok(s) => {
                if cli.json {
                    writeln!(out, "{}", s.to_json())?;
                } else {
                    writeln!(out, "{}", s.display_terms(DISPLAY_TERMS))?;
                }
                Ok(EXIT_PASS)
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(EXIT_EVAL)
            }
        },
        Command::List => {
            for (name, statement) in catalog::list() {
                if cli.json {
                    let line = serde_json::json!({ "name": name, "statement": statement });
                    writeln!(out, "{line}")?;
                } else {
                    writeln!(out, "{name:<32} {statement}")?;
                }
            }
            Ok(EXIT_PASS)
        }
    }
}

fn expand(cli: &Cli, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let expr = match parse(text) {
        Ok(e) => e,
        Err(e) => {
            writeln!(err, "{e}")?;
            writeln!(err, "  {text}")?;
            writeln!(err, "  {}^", " ".repeat(text[..e.offset].chars().count()))?;
            return Ok(EXIT_USAGE);
        }
    };
    match eval(&expr, cli.order) {
        Ok(s) => {
            if cli.json {
                writeln!(out, "{}", s.to_json())?;
            } else {
                writeln!(out, "{}", s.display_terms(DISPLAY_TERMS))?;
            }
            Ok(EXIT_PASS)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_EVAL)
        }
    }
}

fn print_report(cli: &Cli, r: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    if cli.json {
        return writeln!(out, "{}", r.to_json_line());
    }
    let status = if r.passed { "PASS" } else { "FAIL" };
    write!(
        out,
        "{status} {} ({} cases through q^{}, {:.3}s)",
        r.name, r.cases, r.order_checked, r.wall_time
    )?;
    if let Some(m) = &r.first_mismatch {
        let case = if m.case.is_empty() { String::new() } else { format!(" in case {}", m.case) };
        write!(out, ": first mismatch{case} at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs)?;
    }
    writeln!(out)
}

fn verify_all(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let mut code = EXIT_PASS;
    let (mut passed, mut total) = (0, 0);
    for result in catalog::verify_all(cli.order, cli.jobs) {
        total += 1;
        match result {
            Ok(report) => {
                print_report(cli, &report, out)?;
                if report.passed {
                    passed += 1;
                } else if code == EXIT_PASS {
                    code = EXIT_FAIL;
                }
            }
            Err(e) => {
                writeln!(err, "error: {e}")?;
                code = EXIT_EVAL;
            }
        }
    }
    if !cli.json {
        writeln!(out, "{passed}/{total} identities passed")?;
    }
    Ok(code)
}
