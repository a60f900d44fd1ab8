//! Command-line front end: `pi1 generate` prints formulas, `pi1 verify`
//! runs the named checks and streams one JSON report per line.
//!
//! Exit codes: 0 when every report passes, 1 when any fails, 2 on a usage
//! or configuration error.

pub mod checks;
pub mod generate;
pub mod report;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::checks::Check;
use crate::generate::{Params, Target};
use crate::report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Genus ceilings without `PI1_MAX_G`.
pub const MAX_G_SUITE: usize = 4;
pub const MAX_G_POINT: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "pi1", version, about = "Exact checks of the Painleve I hierarchy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print formulas: lenard, U, Ag, oper-L, hatL, hamiltonians, dictionary.
    Generate {
        what: String,
        #[arg(long, default_value_t = 1)]
        g: usize,
        /// Lenard polynomials R_1 .. R_(2 lmax + 1).
        #[arg(long, default_value_t = 3)]
        lmax: usize,
        /// Print U_(2n+1) instead of the series U.
        #[arg(long)]
        n: Option<usize>,
        /// Negative powers of lambda kept in the series U.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks by name, or `all`.
    Verify {
        checks: Vec<String>,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-run the failures recorded in a report file.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Fill in elapsed_ms; reports are then no longer reproducible.
        #[arg(long)]
        timing: bool,
    },
}

/// A usage or configuration error, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// The genus ceiling, from `PI1_MAX_G` if set.
pub fn max_g(suite: bool) -> Result<usize, UsageError> {
    match std::env::var("PI1_MAX_G") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("PI1_MAX_G must be a positive integer, got {v:?}"))),
        Err(_) => Ok(if suite { MAX_G_SUITE } else { MAX_G_POINT }),
    }
}

fn check_genus(g: usize, suite: bool) -> Result<(), UsageError> {
    let max = max_g(suite)?;
    if g < 1 || g > max {
        return Err(usage(format!("--g must be in 1..={max}, got {g}")));
    }
    Ok(())
}

fn open_out(out: &Option<PathBuf>) -> Result<Box<dyn Write>, UsageError> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Resolve check names; `all` expands to the full suite.
pub fn resolve(names: &[String]) -> Result<Vec<&'static Check>, UsageError> {
    if names.is_empty() {
        return Err(usage("name at least one check, or `all`"));
    }
    let mut out: Vec<&'static Check> = Vec::new();
    for n in names {
        let add: Vec<&'static Check> = if n == "all" {
            checks::all().collect()
        } else {
            vec![checks::find(n).ok_or_else(|| usage(format!("unknown check {n:?}")))?]
        };
        for c in add {
            if !out.iter().any(|o| o.name == c.name) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn emit(w: &mut dyn Write, r: &Report, format: FormatArg) -> io::Result<()> {
    match format {
        FormatArg::Text => writeln!(w, "{}", r.to_text())?,
        _ => writeln!(w, "{}", r.to_json_line())?,
    }
    w.flush()
}

fn read_reports(path: &PathBuf) -> Result<Vec<Report>, UsageError> {
    let f = File::open(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    BufReader::new(f)
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|(i, l)| {
            let l = l.map_err(|e| usage(e.to_string()))?;
            serde_json::from_str(&l).map_err(|e| usage(format!("{}:{}: not a report: {e}", path.display(), i + 1)))
        })
        .collect()
}

/// Run a parsed command; returns the exit code.
pub fn execute(cli: Cli) -> Result<i32, UsageError> {
    match cli.command {
        Command::Generate { what, g, lmax, n, depth, format, out } => {
            let target = Target::parse(&what)
                .ok_or_else(|| usage(format!("unknown target {what:?}; expected one of {}", Target::NAMES.join(", "))))?;
            check_genus(g, false)?;
            let format = match format {
                FormatArg::Json => generate::Format::Json,
                FormatArg::Latex => generate::Format::Latex,
                FormatArg::Text => generate::Format::Text,
            };
            let text = generate::render(target, &Params { g, lmax, n, depth }, format).map_err(usage)?;
            let mut w = open_out(&out)?;
            writeln!(w, "{text}").map_err(|e| usage(e.to_string()))?;
            Ok(EXIT_PASS)
        }
        Command::Verify { checks: names, g, seed, trials, format, out, replay, timing } => {
            if format == FormatArg::Latex {
                return Err(usage("verify reports are json or text"));
            }
            let mut all_pass = true;
            if let Some(path) = replay {
                let recorded = read_reports(&path)?;
                let mut w = open_out(&out)?;
                for r in recorded.iter().filter(|r| !r.passed()) {
                    let again = report::replay(r, timing).map_err(usage)?;
                    all_pass &= again.passed();
                    emit(&mut w, &again, format).map_err(|e| usage(e.to_string()))?;
                }
                return Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL });
            }
            let list = resolve(&names)?;
            check_genus(g, names.iter().any(|n| n == "all"))?;
            let mut w = open_out(&out)?;
            for c in list {
                let r = report::run(c, g, seed, trials, timing);
                all_pass &= r.passed();
                emit(&mut w, &r, format).map_err(|e| usage(e.to_string()))?;
            }
            Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}
