//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven in-process by tests.

pub mod compute;
pub mod envelope;
pub mod golden;
pub mod verify;

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::closedform::f_histogram;
use crate::density::{density_survey, survey_csv, survey_violations};
use crate::exactnum::{format_rat, rat_to_int};
use crate::quasipoly::{delta_det, interp_constituents};
use crate::waves::waves_from_constituents;
use crate::{Error, Which};

pub use compute::{compute_value, Method};
pub use envelope::{int_value, rat_string, rat_value, Envelope};
pub use golden::GoldenDoc;
pub use verify::{verify, Module, VerifyOptions, VerifyReport};

#[derive(Debug, Parser)]
#[command(
    name = "kparts",
    version,
    about = "Exact partitions of n into k parts, by several independent methods"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GoldenKind {
    Constituents,
    Delta,
    Waves,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p(n,k) or q(n,k) by one method.
    Compute {
        #[arg(long, default_value = "p")]
        which: Which,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "dp")]
        method: Method,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-method agreement grid and invariants; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        #[arg(long, default_value_t = 300)]
        nmax: u64,
        #[arg(long, value_enum, default_value = "all")]
        modules: Module,
    },
    /// Waves W_j of p_(1..k) at n, and their sum.
    Waves {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The Bernoulli determinant Δ(k).
    Delta {
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Residue-density survey as CSV.
    Density {
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        mods: Vec<u64>,
        #[arg(long = "N", default_value_t = 20_000)]
        window: u64,
        #[arg(long, default_value = "p")]
        which: Which,
    },
    /// Tuple histogram f(n,k) as CSV.
    Fhist {
        #[arg(long)]
        k: u64,
    },
    /// Versioned golden document (JSON).
    Golden {
        #[arg(long, value_enum)]
        kind: GoldenKind,
        #[arg(long)]
        k: u64,
    },
}

/// Exit status for a library error: 3 for an unresolved convention, 1 for
/// internal inconsistencies, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ConventionUnresolved { .. } => 3,
        Error::Irrational { .. }
        | Error::NonIntegerResult { .. }
        | Error::SingularSystem { .. } => 1,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let first = e.to_string();
            let _ = writeln!(err, "error: {}", first.lines().next().unwrap_or_default());
            if let Error::ConventionUnresolved { table } = &e {
                let _ = writeln!(err, "{table}");
            }
            exit_code(&e)
        }
    }
}

fn small_k(k: u64, cap: u64) -> crate::Result<()> {
    if k == 0 || k > cap {
        return Err(Error::Domain(format!("k must lie in 1..={cap}, got {k}")));
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> crate::Result<i32> {
    let start = Instant::now();
    let elapsed = |e: &mut Envelope| e.timing_ms = start.elapsed().as_millis() as u64;
    let io = |r: std::io::Result<()>| r.map_err(|e| Error::Domain(format!("write failed: {e}")));
    match command {
        Command::Compute {
            which,
            n,
            k,
            method,
            format,
        } => {
            let value = compute_value(which, n, k, method)?;
            let shown = match rat_to_int(&value) {
                Some(i) if method != Method::Polypart => (int_value(&i), i.to_string()),
                _ => (rat_value(&value), format_rat(&value)),
            };
            match format {
                Format::Text => io(writeln!(out, "{}", shown.1))?,
                Format::Csv => io(writeln!(
                    out,
                    "which,n,k,method,value\n{which},{n},{k},{},{}",
                    method.name(),
                    rat_string(&value)
                ))?,
                Format::Json => {
                    let mut e = Envelope::new("compute", method.name())
                        .input("which", which.as_str())
                        .input("n", n)
                        .input("k", k);
                    e.output("value", shown.0);
                    elapsed(&mut e);
                    io(writeln!(out, "{}", e.to_json()))?;
                }
            }
            Ok(0)
        }
        Command::Verify {
            kmax,
            nmax,
            modules,
        } => {
            let report = verify(VerifyOptions {
                k_max: kmax,
                n_max: nmax,
                module: modules,
            });
            io(out.write_all(report.render().as_bytes()))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Waves { k, n, format } => {
            small_k(k, 8)?;
            let decomp = waves_from_constituents(k)?;
            let values: Vec<_> = (1..=k).map(|j| (j, decomp.value(j, n))).collect();
            let sum = decomp.sum_at(n);
            match format {
                Format::Text => {
                    for (j, v) in &values {
                        io(writeln!(out, "W_{j} = {}", format_rat(v)))?;
                    }
                    io(writeln!(out, "sum = {}", format_rat(&sum)))?;
                }
                Format::Csv => {
                    io(writeln!(out, "j,value"))?;
                    for (j, v) in &values {
                        io(writeln!(out, "{j},{}", rat_string(v)))?;
                    }
                }
                Format::Json => {
                    let mut e = Envelope::new("waves", "fourier")
                        .input("k", k)
                        .input("n", n);
                    let waves = values
                        .iter()
                        .map(|(j, v)| (j.to_string(), rat_value(v)))
                        .collect();
                    e.output("waves", Value::Object(waves));
                    e.output("sum", rat_value(&sum));
                    elapsed(&mut e);
                    io(writeln!(out, "{}", e.to_json()))?;
                }
            }
            Ok(0)
        }
        Command::Delta { k, format } => {
            small_k(k, 4)?;
            let d = delta_det(k);
            match format {
                Format::Text => io(writeln!(out, "{}", format_rat(&d)))?,
                Format::Csv => io(writeln!(out, "k,delta\n{k},{}", rat_string(&d)))?,
                Format::Json => {
                    let mut e = Envelope::new("delta", "bareiss").input("k", k);
                    e.output("delta", rat_value(&d));
                    elapsed(&mut e);
                    io(writeln!(out, "{}", e.to_json()))?;
                }
            }
            Ok(0)
        }
        Command::Density {
            kmax,
            mods,
            window,
            which,
        } => {
            if let Some(m) = mods.iter().find(|&&m| m < 2) {
                return Err(Error::Domain(format!("modulus {m} must be at least 2")));
            }
            let reports = density_survey(kmax, &mods, which, window)?;
            io(out.write_all(survey_csv(&reports).as_bytes()))?;
            let violations = survey_violations(&reports);
            for (k, m) in &violations {
                let _ = writeln!(
                    err,
                    "VIOLATION: nonzero-residue density below 1/C(k+1,2) at k={k}, m={m}"
                );
            }
            for r in reports.iter().filter(|r| !r.certified && r.residue == 0) {
                let _ = writeln!(
                    err,
                    "warning: k={} m={} not certified within N={}; density is empirical",
                    r.k, r.m, r.window
                );
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Fhist { k } => {
            small_k(k, 10)?;
            let h = f_histogram(k);
            io(writeln!(out, "n,f"))?;
            for (n, f) in h.values().iter().enumerate() {
                io(writeln!(out, "{n},{f}"))?;
            }
            Ok(0)
        }
        Command::Golden { kind, k } => {
            let doc = match kind {
                GoldenKind::Constituents => {
                    small_k(k, 6)?;
                    GoldenDoc::constituents(&interp_constituents(k))
                }
                GoldenKind::Delta => {
                    small_k(k, 4)?;
                    GoldenDoc::delta(k, &delta_det(k))
                }
                GoldenKind::Waves => {
                    small_k(k, 6)?;
                    GoldenDoc::waves(&waves_from_constituents(k)?)
                }
            };
            io(writeln!(out, "{}", doc.to_json()))?;
            Ok(0)
        }
    }
}
