//! Command-line front end.
//!
//! Exit codes: 0 for a certified contradiction or a successful query, 1 for a
//! valid run with no contradiction (or a SAT system), 2 for usage and input
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    classify, classify_plane, method1, method2, method3, verify_construction, witness_construction, Construction,
    ConstructionJson, Method, MethodOutcome, VerifyOptions,
};
use crate::error::Error;
use crate::hv::{invariance_demo, HvSystem, DEFAULT_BRUTE_CAP};
use crate::ops::DEFAULT_DENSE_CAP;
use crate::phase::RationalPhase;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ghz-covariance", version, about = "Construct and certify GHZ contradictions for qudits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    Dense,
    None,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a construction and write it as JSON.
    Construct {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Method 1 factor; defaults to the smallest one that works.
        #[arg(long)]
        f: Option<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify a construction read from JSON.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dense")]
        oracle: OracleArg,
        #[arg(long, default_value_t = DEFAULT_BRUTE_CAP)]
        brute_cap: u64,
    },
    /// Regime grid for `2 <= d <= d_max`, `3 <= N <= n_max`.
    Classify {
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Certify every cell's witness before printing.
        #[arg(long)]
        verify: bool,
    },
    /// Solve a hidden-variable system read from JSON.
    HvSolve {
        #[arg(long)]
        input: PathBuf,
    },
    /// Relations forced by counter-rotated operators.
    InvarianceDemo {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        angle: RationalPhase,
        /// `n1:n2` with `n1 < n2` and `n1 + n2 = n`.
        #[arg(long, value_parser = parse_partition)]
        partition: Option<(usize, usize)>,
    },
    /// The special points `ν/d` on the circle.
    Circle {
        #[arg(long)]
        d: u32,
    },
}

fn parse_partition(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected n1:n2, got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

#[derive(Serialize)]
struct NoContradictionJson<'a> {
    status: &'static str,
    d: u32,
    n: usize,
    method: Method,
    reason: &'a str,
}

#[derive(Serialize)]
struct CirclePoint {
    nu: u32,
    angle: RationalPhase,
    eigenvalue_exponent: RationalPhase,
}

/// A failed command: exit code plus a message for standard error.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure(EXIT_USAGE, format!("write failed: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Construct { d, n, method, f, output } => construct(d, n, method, f, output, out),
        Command::Verify { input, oracle, brute_cap } => verify(&input, oracle, brute_cap, out, err),
        Command::Classify { d_max, n_max, format, verify } => classify_cmd(d_max, n_max, format, verify, out),
        Command::HvSolve { input } => {
            let system: HvSystem = read_json(&input)?;
            let verdict = system.solve();
            emit(out, &to_json(&verdict))?;
            Ok(if verdict.is_sat() { EXIT_NONE } else { EXIT_OK })
        }
        Command::InvarianceDemo { d, n, angle, partition } => {
            let report = invariance_demo(d, n, &angle, partition)?;
            emit(out, &to_json(&report))?;
            Ok(if report.all_forced_zero() { EXIT_OK } else { EXIT_NONE })
        }
        Command::Circle { d } => {
            crate::ops::check_dim(d)?;
            let points: Vec<CirclePoint> = (0..d)
                .map(|nu| {
                    let a = RationalPhase::new(nu, d);
                    CirclePoint { nu, angle: a.clone(), eigenvalue_exponent: a }
                })
                .collect();
            emit(out, &to_json(&points))?;
            Ok(EXIT_OK)
        }
    }
}

/// Method 1 factor when none is given: the smallest that contradicts, else
/// the smallest admissible one (which reports no contradiction).
fn default_factor(d: u32, n: usize) -> Option<u32> {
    crate::constructions::smallest_method1_factor(d, n)
        .or_else(|| (2..=d).find(|&f| d.is_multiple_of(f) && (f as usize) < n))
}

fn construct(
    d: u32,
    n: usize,
    method: MethodArg,
    f: Option<u32>,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let outcome = match method {
        MethodArg::Auto => {
            let cell = classify(d, n)?;
            MethodOutcome::Contradiction(Box::new(witness_construction(&cell)?))
        }
        MethodArg::One => {
            let f = f
                .or_else(|| default_factor(d, n))
                .ok_or_else(|| Failure(EXIT_USAGE, format!("d = {d} has no factor f with 1 < f < {n}")))?;
            method1(d, n, f)?
        }
        MethodArg::Two => method2(d, n)?,
        MethodArg::Three => MethodOutcome::Contradiction(Box::new(method3(d, n)?)),
    };
    let (text, code) = match &outcome {
        MethodOutcome::Contradiction(c) => (to_json(&c.to_json()), EXIT_OK),
        MethodOutcome::NoContradiction { d, n, method, reason } => (
            to_json(&NoContradictionJson { status: "NoContradiction", d: *d, n: *n, method: *method, reason }),
            EXIT_NONE,
        ),
    };
    match output {
        Some(path) => fs::write(&path, text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))?,
        None => emit(out, &text)?,
    }
    Ok(code)
}

fn verify(input: &PathBuf, oracle: OracleArg, brute_cap: u64, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let json: ConstructionJson = read_json(input)?;
    let c = Construction::try_from(json)?;
    let opts = VerifyOptions { oracle: matches!(oracle, OracleArg::Dense), dense_cap: DEFAULT_DENSE_CAP, brute_cap };
    let cert = verify_construction(&c, &opts);
    for w in &cert.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    emit(out, &to_json(&cert))?;
    Ok(if cert.valid { EXIT_OK } else { EXIT_NONE })
}

fn classify_cmd(d_max: u32, n_max: usize, format: Format, verify: bool, out: &mut dyn Write) -> CmdResult {
    let cells = classify_plane(d_max, n_max, verify).map_err(|e| match e {
        Error::VerificationFailed { .. } | Error::Construction(_) => Failure(EXIT_NONE, e.to_string()),
        other => Failure(EXIT_USAGE, other.to_string()),
    })?;
    let text = match format {
        Format::Json => to_json(&cells),
        Format::Csv => {
            let mut s = String::from("d,N,regime,witness_method\n");
            for c in &cells {
                s.push_str(&c.csv_row());
                s.push('\n');
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ghz-covariance").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn construct_exit_codes() {
        let (code, out, _) = run_str(&["construct", "--d", "5", "--n", "3"]);
        assert_eq!(code, 0);
        let c: ConstructionJson = serde_json::from_str(&out).unwrap();
        assert_eq!(c.operators.len() + 1, 8);
        assert_eq!(run_str(&["construct", "--d", "3", "--n", "6", "--method", "1"]).0, 1);
        assert_eq!(run_str(&["construct", "--d", "3", "--n", "3", "--method", "2"]).0, 0);
        assert_eq!(run_str(&["construct", "--d", "5", "--n", "3", "--method", "2"]).0, 1);
        assert_eq!(run_str(&["construct", "--d", "1", "--n", "3"]).0, 2);
        assert_eq!(run_str(&["construct", "--d", "5", "--n", "2"]).0, 2);
        assert_eq!(run_str(&["construct", "--d", "5"]).0, 2);
        assert_eq!(run_str(&["construct", "--d", "5", "--n", "6", "--method", "3"]).0, 2);
    }

    #[test]
    fn construct_is_deterministic() {
        let a = run_str(&["construct", "--d", "7", "--n", "3"]).1;
        let b = run_str(&["construct", "--d", "7", "--n", "3"]).1;
        assert_eq!(a, b);
    }

    #[test]
    fn partition_parser() {
        assert_eq!(parse_partition("1:2"), Ok((1, 2)));
        assert!(parse_partition("12").is_err());
        assert!(parse_partition("a:2").is_err());
    }

    #[test]
    fn circle_points() {
        let (code, out, _) = run_str(&["circle", "--d", "4"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[2]["angle"], "1/2");
    }
}
