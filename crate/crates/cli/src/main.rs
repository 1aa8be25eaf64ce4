//! `satake`: exact computation of bounded partition counts, symmetric-power
//! plethysm multiplicities, verification suites, and truncated basic
//! functions for GL(2).
//!
//! Exit codes: 0 success, 1 failed checks or exceeded caps (structured
//! one-line JSON on stderr), 2 malformed invocations (usage text on
//! stderr). Stdout is byte-deterministic for identical invocations; the
//! only varying field is `elapsed_ms`, which golden comparisons skip.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, Zero};
use serde::Serialize;

use satake_core::basic::{
    basic_function, euler_factor_series, trace_series, ExponentConvention, SatakeParams,
    SymTarget,
};
use satake_core::hecke::to_cartan;
use satake_core::partition::{count_partitions, gaussian_coefficients};
use satake_core::plethysm::{
    multiplicity_generic, multiplicity_k3_closed, multiplicity_k3_residue,
    multiplicity_k4_closed, multiplicity_k4_recursive, oracle_multiplicities, signed_sequence,
};
use satake_core::verify::{run_all, run_suite, Suite, SuiteParams, SuiteReport};

const MAX_ELL_CAP: u32 = 1000;
const MAX_J_CAP: u32 = 200;

#[derive(Parser)]
#[command(name = "satake", version, about = "Exact partition counts, plethysm multiplicities, and GL(2) basic functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count partitions of n with at most k parts, each at most j.
    Count {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Print the Gaussian binomial coefficient list for (j, k).
    Gauss {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        /// Print the (1-q)-scaled signed sequence instead.
        #[arg(long)]
        signed: bool,
    },
    /// Print one plethysm multiplicity N(j, k, n).
    Multiplicity {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::Generic)]
        method: Method,
    },
    /// Emit the full multiplicity table for one symmetric power.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        k: u32,
        #[arg(long = "max-j")]
        max_j: u32,
        #[arg(long, value_enum)]
        format: TableFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named verification suite and print its report as JSON.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long = "max-ell")]
        max_ell: Option<u32>,
        #[arg(long = "max-j")]
        max_j: Option<u32>,
    },
    /// Print the truncated basic function for Sym^3 or Sym^4.
    BasicFn {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        sym: u32,
        #[arg(long = "max-j")]
        max_j: u32,
        #[arg(long, value_enum, default_value_t = ConventionArg::Consistent)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = BasisArg::SymDet)]
        basis: BasisArg,
        #[arg(long, value_enum)]
        format: SeriesFormat,
    },
    /// Compare traces of the basic function against the Euler-factor expansion.
    TraceCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
        sym: u32,
        /// Rational P/Q with optional sign, no whitespace.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Rational P/Q with optional sign, no whitespace.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long = "max-j")]
        max_j: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Generic,
    Closed,
    Residue,
    Recursive,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Consistent,
    Printed,
}

impl ConventionArg {
    fn convention(self) -> ExponentConvention {
        match self {
            ConventionArg::Consistent => ExponentConvention::DegreeConsistent,
            ConventionArg::Printed => ExponentConvention::AsPrinted,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    SymDet,
    Cartan,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Thm1,
    Thm2,
    Lem1,
    Lem2,
    Thm3,
    Cor3,
    Thm4,
    Cor4,
    Hecke,
    Basicfn,
    All,
}

impl SuiteArg {
    fn suite(self) -> Option<Suite> {
        match self {
            SuiteArg::All => None,
            SuiteArg::Thm1 => Some(Suite::Thm1),
            SuiteArg::Thm2 => Some(Suite::Thm2),
            SuiteArg::Lem1 => Some(Suite::Lem1),
            SuiteArg::Lem2 => Some(Suite::Lem2),
            SuiteArg::Thm3 => Some(Suite::Thm3),
            SuiteArg::Cor3 => Some(Suite::Cor3),
            SuiteArg::Thm4 => Some(Suite::Thm4),
            SuiteArg::Cor4 => Some(Suite::Cor4),
            SuiteArg::Hecke => Some(Suite::Hecke),
            SuiteArg::Basicfn => Some(Suite::BasicFn),
        }
    }
}

enum AppError {
    /// Malformed input beyond what clap catches; printed as usage text, exit 2.
    Usage(String),
    /// Computational refusal (caps, ranges, io); printed as one-line JSON, exit 1.
    Structured(String),
}

fn usage(msg: impl Into<String>) -> AppError {
    AppError::Usage(msg.into())
}

fn structured(msg: impl std::fmt::Display) -> AppError {
    AppError::Structured(msg.to_string())
}

#[derive(Serialize)]
struct ErrorLine<'a> {
    schema: &'static str,
    error: &'a str,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Structured(msg)) => {
            let line = ErrorLine {
                schema: "v1",
                error: &msg,
            };
            eprintln!("{}", serde_json::to_string(&line).expect("error serializes"));
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, AppError> {
    match command {
        Command::Count { j, k, n } => {
            println!("{}", count_partitions(j, k, n));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gauss { j, k, signed } => {
            let coeffs = if signed {
                signed_sequence(j, k)
            } else {
                gaussian_coefficients(j, k)
            };
            let rendered: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
            println!("{}", rendered.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Multiplicity { j, k, n, method } => {
            let value = match method {
                Method::Generic => multiplicity_generic(j, k, n).map_err(structured)?,
                Method::Closed => match k {
                    3 => multiplicity_k3_closed(j, n).map_err(structured)?,
                    4 => multiplicity_k4_closed(j, n).map_err(structured)?,
                    _ => return Err(usage(format!("method unsupported: closed needs k = 3 or 4, got k = {k}"))),
                },
                Method::Residue => match k {
                    3 => multiplicity_k3_residue(j, n).map_err(structured)?,
                    _ => return Err(usage(format!("method unsupported: residue needs k = 3, got k = {k}"))),
                },
                Method::Recursive => match k {
                    4 => multiplicity_k4_recursive(j, n).map_err(structured)?,
                    _ => return Err(usage(format!("method unsupported: recursive needs k = 4, got k = {k}"))),
                },
                Method::Oracle => {
                    let table = oracle_multiplicities(j, k).map_err(structured)?;
                    let idx = usize::try_from(n)
                        .ok()
                        .filter(|idx| *idx < table.len())
                        .ok_or_else(|| {
                            structured(format!(
                                "out of range: n = {n} outside 0..={} for the oracle at j = {j}, k = {k}",
                                table.len().saturating_sub(1)
                            ))
                        })?;
                    BigInt::from(table[idx].clone())
                }
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            k,
            max_j,
            format,
            out,
        } => {
            check_j_cap(max_j)?;
            let payload = match format {
                TableFormat::Json => render_table_json(k, max_j)?,
                TableFormat::Csv => render_table_csv(k, max_j)?,
            };
            std::fs::write(&out, payload)
                .map_err(|e| structured(format!("cannot write {}: {e}", out.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            max_ell,
            max_j,
        } => {
            if let Some(l) = max_ell {
                if l > MAX_ELL_CAP {
                    return Err(structured(format!(
                        "cap exceeded: max-ell = {l} above the limit {MAX_ELL_CAP}"
                    )));
                }
            }
            if let Some(j) = max_j {
                check_j_cap(j)?;
            }
            let params = SuiteParams { max_ell, max_j };
            let (passed, line) = match suite.suite() {
                Some(single) => {
                    let report = run_suite(single, &params);
                    let out = SingleVerifyOut {
                        schema: "v1",
                        report: &report,
                    };
                    (
                        report.passed(),
                        serde_json::to_string(&out).expect("report serializes"),
                    )
                }
                None => {
                    let reports = run_all(&params);
                    let passed = reports.iter().all(SuiteReport::passed);
                    let out = AllVerifyOut {
                        schema: "v1",
                        suite: "all",
                        reports: &reports,
                    };
                    (passed, serde_json::to_string(&out).expect("report serializes"))
                }
            };
            println!("{line}");
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::BasicFn {
            sym,
            max_j,
            convention,
            basis,
            format,
        } => {
            check_j_cap(max_j)?;
            let series = basic_function(target_for(sym), max_j, convention.convention());
            match format {
                SeriesFormat::Json => {
                    let record = match basis {
                        BasisArg::SymDet => series.to_record(),
                        BasisArg::Cartan => series.to_cartan_record(),
                    };
                    println!("{}", serde_json::to_string(&record).expect("record serializes"));
                }
                SeriesFormat::Text => {
                    let mut out = String::new();
                    for (j, term) in series.terms().iter().enumerate() {
                        match basis {
                            BasisArg::SymDet => writeln!(out, "j={j}: {term}"),
                            BasisArg::Cartan => writeln!(out, "j={j}: {}", to_cartan(term)),
                        }
                        .expect("string write");
                    }
                    print!("{out}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::TraceCheck {
            sym,
            alpha,
            beta,
            max_j,
        } => {
            check_j_cap(max_j)?;
            let alpha = parse_rational(&alpha).map_err(|e| usage(format!("--alpha: {e}")))?;
            let beta = parse_rational(&beta).map_err(|e| usage(format!("--beta: {e}")))?;
            let params = SatakeParams::new(alpha, beta)
                .map_err(|e| usage(e.to_string()))?;
            let target = target_for(sym);
            let series = basic_function(target, max_j, ExponentConvention::DegreeConsistent);
            let traces = trace_series(&series, &params).map_err(structured)?;
            let euler = euler_factor_series(target, &params, max_j);
            let entries: Vec<TraceEntry> = traces
                .iter()
                .zip(euler.iter())
                .enumerate()
                .map(|(j, (t, e))| TraceEntry {
                    j: j as u32,
                    trace: t.to_string(),
                    euler: e.to_string(),
                    agree: t == e,
                })
                .collect();
            let all_match = entries.iter().all(|e| e.agree);
            let out = TraceOut {
                schema: "v1",
                k: target.k(),
                max_j,
                alpha: params.alpha().to_string(),
                beta: params.beta().to_string(),
                entries,
                verdict: if all_match { "match" } else { "mismatch" },
            };
            println!("{}", serde_json::to_string(&out).expect("trace output serializes"));
            Ok(if all_match {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn target_for(sym: u32) -> SymTarget {
    match sym {
        3 => SymTarget::Sym3,
        _ => SymTarget::Sym4,
    }
}

fn check_j_cap(max_j: u32) -> Result<(), AppError> {
    if max_j > MAX_J_CAP {
        return Err(structured(format!(
            "cap exceeded: max-j = {max_j} above the limit {MAX_J_CAP}"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SingleVerifyOut<'a> {
    schema: &'static str,
    #[serde(flatten)]
    report: &'a SuiteReport,
}

#[derive(Serialize)]
struct AllVerifyOut<'a> {
    schema: &'static str,
    suite: &'static str,
    reports: &'a [SuiteReport],
}

#[derive(Serialize)]
struct TableRow {
    j: u32,
    n: u32,
    #[serde(rename = "N")]
    value: String,
}

#[derive(Serialize)]
struct TableOut {
    schema: &'static str,
    k: u32,
    #[serde(rename = "maxJ")]
    max_j: u32,
    rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct TraceEntry {
    j: u32,
    trace: String,
    euler: String,
    #[serde(rename = "match")]
    agree: bool,
}

#[derive(Serialize)]
struct TraceOut {
    schema: &'static str,
    k: u32,
    #[serde(rename = "maxJ")]
    max_j: u32,
    alpha: String,
    beta: String,
    entries: Vec<TraceEntry>,
    verdict: &'static str,
}

fn table_rows(k: u32, max_j: u32) -> Result<Vec<TableRow>, AppError> {
    let mut rows = Vec::new();
    for j in 0..=max_j {
        for n in 0..=j * k / 2 {
            let value = match k {
                3 => multiplicity_k3_closed(j, i64::from(n)),
                _ => multiplicity_k4_recursive(j, i64::from(n)),
            }
            .map_err(structured)?;
            rows.push(TableRow {
                j,
                n,
                value: value.to_string(),
            });
        }
    }
    Ok(rows)
}

fn render_table_json(k: u32, max_j: u32) -> Result<String, AppError> {
    let out = TableOut {
        schema: "v1",
        k,
        max_j,
        rows: table_rows(k, max_j)?,
    };
    let mut payload = serde_json::to_string(&out).expect("table serializes");
    payload.push('\n');
    Ok(payload)
}

fn render_table_csv(k: u32, max_j: u32) -> Result<String, AppError> {
    let mut payload = String::from("j,n,N\n");
    for row in table_rows(k, max_j)? {
        writeln!(payload, "{},{},{}", row.j, row.n, row.value).expect("string write");
    }
    Ok(payload)
}

/// Parse `P` or `P/Q` with an optional leading sign and no whitespace.
fn parse_rational(s: &str) -> Result<BigRational, String> {
    if s.chars().any(char::is_whitespace) {
        return Err("whitespace is not allowed".to_string());
    }
    let (num_text, den_text) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_text
        .parse()
        .map_err(|_| format!("invalid numerator {num_text:?}"))?;
    let den: BigInt = den_text
        .parse()
        .map_err(|_| format!("invalid denominator {den_text:?}"))?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(num, den))
}
