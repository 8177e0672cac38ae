//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 internal invariant violation, 2 usage or parse error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{classical_hessian, log_gauss_point, log_hessian, log_hessian_symmetric};
use crate::corpus::CorpusSpec;
use crate::fuzz::{default_checks, fuzz_with, Check};
use crate::laurent::{LaurentPolynomial, Rational};
use crate::parse::{parse_laurent, parse_rational};
use crate::report::analyze;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "logtorus",
    version,
    about = "Logarithmic Hessians and torus variable elimination for Laurent polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide vanishing of the logarithmic Hessian and eliminate variables.
    #[command(visible_alias = "reduce")]
    Analyze(AnalyzeArgs),
    /// Print a Hessian matrix and its determinant.
    Hessian(HessianArgs),
    /// Run the randomized property corpus.
    Fuzz(FuzzArgs),
    /// Print the logarithmic Gauss map at a torus point.
    Gauss(GaussArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Number of torus variables.
    #[arg(long = "vars", value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    vars: u32,
    /// Expression, or `@path` to read it from a file.
    #[arg(value_name = "EXPR", allow_hyphen_values = true)]
    expr: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
#[group(id = "kind", multiple = false)]
struct HessianArgs {
    #[command(flatten)]
    input: Input,
    /// Classical Hessian f_{x_i x_j}.
    #[arg(long, group = "kind")]
    classical: bool,
    /// Logarithmic Hessian d/dx_j (x_i f_{x_i}) (default).
    #[arg(long, group = "kind")]
    log: bool,
    /// Symmetric logarithmic Hessian theta_j theta_i f.
    #[arg(long, group = "kind")]
    symmetric: bool,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long = "vars", value_name = "N")]
    vars: usize,
    #[arg(long)]
    rank: usize,
    #[arg(long, default_value_t = 8)]
    terms: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    exponent_bound: i64,
    #[arg(long, default_value_t = 9)]
    coefficient_bound: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Add a check that always fails (harness self-test).
    #[arg(long, hide = true)]
    inject_failure: bool,
}

#[derive(Args, Debug)]
struct GaussArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated coordinates, integers or p/q.
    #[arg(long, value_name = "P1,...,PN", allow_hyphen_values = true)]
    at: String,
}

/// Run the CLI on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn read_input(input: &Input) -> Result<LaurentPolynomial, Failure> {
    let text = match input.expr.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => input.expr.clone(),
    };
    parse_laurent(text.trim_end(), input.vars as usize).map_err(usage)
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_VIOLATION, e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Analyze(a) => {
            let f = read_input(&a.input)?;
            let (report, _, failures) =
                analyze(&f).map_err(|e| Failure(EXIT_VIOLATION, e.to_string()))?;
            match a.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Text => writeln!(out, "{report}"),
            }
            .map_err(io)?;
            if failures.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(Failure(
                    EXIT_VIOLATION,
                    format!("verification failed: {failures:?}"),
                ))
            }
        }
        Command::Hessian(h) => {
            let f = read_input(&h.input)?;
            let m = if h.classical {
                classical_hessian(&f)
            } else if h.symmetric {
                log_hessian_symmetric(&f)
            } else {
                log_hessian(&f)
            };
            write!(out, "{m}").map_err(io)?;
            writeln!(out, "det = {}", m.det()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Gauss(g) => {
            let f = read_input(&g.input)?;
            let point: Vec<Rational> =
                g.at.split(',')
                    .map(|s| parse_rational(s.trim()))
                    .collect::<Result<_, _>>()
                    .map_err(|e| usage(format!("--at: {e}")))?;
            let q = log_gauss_point(&f, &point).map_err(usage)?;
            let cells: Vec<String> = q.iter().map(ToString::to_string).collect();
            writeln!(out, "({})", cells.join(" : ")).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Fuzz(z) => {
            let spec = CorpusSpec {
                nvars: z.vars,
                rank: z.rank,
                max_terms: z.terms,
                exponent_bound: z.exponent_bound,
                coefficient_bound: z.coefficient_bound,
                seed: z.seed,
                instance_count: z.count,
            };
            fn injected(
                _: &LaurentPolynomial,
                _: &mut rand_chacha::ChaCha8Rng,
            ) -> Result<(), String> {
                Err("injected failure".into())
            }
            let mut checks: Vec<(&'static str, Check)> = default_checks();
            if z.inject_failure {
                checks.push(("injected", injected));
            }
            let summary = fuzz_with(&spec, &checks).map_err(usage)?;
            match z.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&summary).expect("summary serializes")
                ),
                Format::Text => writeln!(
                    out,
                    "fuzz n={} r={} terms<={} seed={}: {}/{} passed, {} failed",
                    spec.nvars,
                    spec.rank,
                    spec.max_terms,
                    spec.seed,
                    summary.passed,
                    summary.total,
                    summary.failed
                ),
            }
            .map_err(io)?;
            match summary.first_failure {
                None => Ok(EXIT_OK),
                Some(f) => Err(Failure(
                    EXIT_VIOLATION,
                    format!(
                        "check {} failed at seed {} index {}: {} (f = {})",
                        f.check, f.seed, f.index, f.detail, f.polynomial
                    ),
                )),
            }
        }
    }
}
