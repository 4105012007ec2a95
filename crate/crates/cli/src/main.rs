//! `logpoisson`: checks and cohomology of polynomial Poisson brackets
//! with logarithmic singularities.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or usage,
//! 3 internal error.

use std::io::Write;
use std::panic;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use logpoisson::complex::ComplexKind;
use logpoisson::problem::{
    parse_k_range, read_spec, render_table, run_check, run_cohomology, run_compare, run_prequantize,
    ProblemError, WindowOverride,
};
use logpoisson::selftest::{run_selftest, SelftestOptions};

#[derive(Parser, Debug)]
#[command(name = "logpoisson", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the Jacobi identity and the log-principal condition.
    Check {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Per-degree dimensions of H^k for one complex.
    Cohomology {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, value_parser = parse_kind, default_value = "log-poisson")]
        complex: ComplexKind,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Cohomology tables of several complexes and where they differ.
    Compare {
        #[command(flatten)]
        io: IoArgs,
        /// Repeat or comma-separate; defaults to all three complexes.
        #[arg(long, value_parser = parse_kind, value_delimiter = ',')]
        complex: Vec<ComplexKind>,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Search for a log 1-cochain whose differential is π.
    Prequantize {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        buffer: Option<u32>,
    },
    /// Randomized identity checks on built-in brackets.
    Selftest {
        #[arg(long, default_value_t = SelftestOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SelftestOptions::default().cases)]
        cases: usize,
        /// Corrupt the log complexes; the run is then expected to fail.
        #[arg(long)]
        mutate: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Problem document (JSON).
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// Cochain degrees: `k`, `a..b` or `a-b`. Defaults to all.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    buffer: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn parse_kind(s: &str) -> Result<ComplexKind, String> {
    ComplexKind::parse(s).ok_or_else(|| format!("unknown complex {s:?}; expected poisson, log-poisson or log-derham"))
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: &str) -> Result<(), ProblemError> {
    let written = match format {
        Format::Table => write!(out, "{text}"),
        Format::Json => serde_json::to_writer_pretty(&mut *out, value)
            .map_err(std::io::Error::from)
            .and_then(|()| writeln!(out)),
    };
    written.map_err(|e| ProblemError::Io {
        path: "<stdout>".into(),
        source: e,
    })
}

fn degrees(window: &WindowArgs, rank: usize) -> Result<Vec<usize>, ProblemError> {
    match &window.k {
        Some(k) => parse_k_range(k, rank),
        None => Ok((0..=rank).collect()),
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Runs one command, writing its report to `out`. Returns the exit code.
fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, ProblemError> {
    match cli.command {
        Command::Check { io } => {
            let spec = read_spec(&io.input)?;
            let report = run_check(&spec)?;
            emit(out, io.format, &report, &ensure_newline(report.to_string()))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Cohomology { io, complex, window } => {
            let spec = read_spec(&io.input)?;
            let ks = degrees(&window, spec.nvars())?;
            let over = WindowOverride {
                max_degree: window.max_degree,
                buffer: window.buffer,
            };
            let report = run_cohomology(&spec, complex, &ks, over)?;
            emit(out, io.format, &report, &ensure_newline(render_table(&report.table)))?;
            Ok(0)
        }
        Command::Compare { io, complex, window } => {
            let spec = read_spec(&io.input)?;
            let kinds = if complex.is_empty() { ComplexKind::ALL.to_vec() } else { complex };
            let ks = degrees(&window, spec.nvars())?;
            let over = WindowOverride {
                max_degree: window.max_degree,
                buffer: window.buffer,
            };
            let report = run_compare(&spec, &kinds, &ks, over)?;
            emit(out, io.format, &report, &ensure_newline(report.to_string()))?;
            Ok(0)
        }
        Command::Prequantize { io, max_degree, buffer } => {
            let spec = read_spec(&io.input)?;
            let report = run_prequantize(&spec, WindowOverride { max_degree, buffer })?;
            emit(out, io.format, &report, &ensure_newline(report.to_string()))?;
            Ok(0)
        }
        Command::Selftest {
            seed,
            cases,
            mutate,
            format,
        } => {
            let report = run_selftest(SelftestOptions { seed, cases, mutate });
            emit(out, format, &report, &ensure_newline(report.to_string()))?;
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| eprintln!("logpoisson: internal error: {info}")));
    let stdout = std::io::stdout();
    let result = panic::catch_unwind(|| run(cli, &mut stdout.lock()));
    match result {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("logpoisson: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("logpoisson").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ComplexKind::ALL {
            assert_eq!(parse_kind(k.name()).unwrap(), k);
        }
        assert!(parse_kind("derham").is_err());
    }

    #[test]
    fn compare_accepts_comma_lists() {
        let cli = parse(&["compare", "--input", "f.json", "--complex", "poisson,log-derham"]);
        match cli.command {
            Command::Compare { complex, .. } => {
                assert_eq!(complex, vec![ComplexKind::Poisson, ComplexKind::LogDeRham])
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_input_is_a_usage_error() {
        let err = Cli::try_parse_from(["logpoisson", "check"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unreadable_input_maps_to_exit_2() {
        let cli = parse(&["check", "--input", "/nonexistent/problem.json"]);
        let err = run(cli, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    fn problem(document: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(document.as_bytes()).unwrap();
        f
    }

    /// Exit code (or error code) and captured stdout.
    fn invoke(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = match run(parse(args), &mut out) {
            Ok(c) => c as i32,
            Err(e) => e.exit_code(),
        };
        (code, String::from_utf8(out).unwrap())
    }

    fn json(args: &[&str]) -> serde_json::Value {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let (code, out) = invoke(&full);
        assert_eq!(code, 0, "{out}");
        serde_json::from_str(&out).unwrap()
    }

    const EX1: &str = r#"{"variables": ["x", "y"], "bracket": {"x,y": "x"}, "log_generators": ["x"], "max_degree": 4}"#;
    const NOT_JACOBI: &str = r#"{"variables": ["x", "y", "z"], "bracket": {"x,y": "z", "y,z": "x*y", "x,z": "y"}, "max_degree": 2}"#;

    #[test]
    fn check_reports_pass_as_json() {
        let f = problem(EX1);
        let v = json(&["check", "--input", f.path().to_str().unwrap()]);
        assert_eq!(v["passed"], true);
        assert_eq!(v["log_symplectic"]["logsymplectic"], true);
    }

    #[test]
    fn failing_jacobi_exits_1() {
        let f = problem(NOT_JACOBI);
        let path = f.path().to_str().unwrap();
        let (code, out) = invoke(&["check", "--input", path]);
        assert_eq!(code, 1, "{out}");
        let (code, _) = invoke(&["cohomology", "--input", path, "--complex", "poisson"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn malformed_documents_exit_2() {
        for doc in [
            "{\"variables\": [\"x\"",
            r#"{"variables": ["x"], "max_degree": 2, "extra": 1}"#,
            r#"{"variables": ["x", "y"], "bracket": {"x,q": "1"}, "max_degree": 2}"#,
            r#"{"variables": ["x", "y"], "bracket": {"x,y": "x^"}, "max_degree": 2}"#,
        ] {
            let f = problem(doc);
            let (code, _) = invoke(&["check", "--input", f.path().to_str().unwrap()]);
            assert_eq!(code, 2, "{doc}");
        }
    }

    #[test]
    fn out_of_range_k_exits_2() {
        let f = problem(EX1);
        let (code, _) = invoke(&["cohomology", "--input", f.path().to_str().unwrap(), "--k", "3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn cohomology_json_has_per_degree_rows() {
        let f = problem(EX1);
        let v = json(&["cohomology", "--input", f.path().to_str().unwrap(), "--k", "0..1"]);
        let rows = &v["table"]["rows"];
        assert_eq!(rows["0"][0]["dim"], 1);
        assert_eq!(rows["1"][0]["dim"], 1);
        assert_eq!(rows["1"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn compare_defaults_to_all_complexes() {
        let f = problem(EX1);
        let v = json(&["compare", "--input", f.path().to_str().unwrap(), "--max-degree", "3"]);
        assert_eq!(v["tables"].as_array().unwrap().len(), 3);
        assert!(v["comparisons"].as_array().unwrap().iter().all(|c| c["equal"] == true));
    }

    #[test]
    fn prequantize_reports_witness() {
        let f = problem(EX1);
        let v = json(&["prequantize", "--input", f.path().to_str().unwrap()]);
        assert_eq!(v["outcome"]["status"], "prequantizable");
    }

    #[test]
    fn table_output_marks_window() {
        let f = problem(EX1);
        let (code, out) = invoke(&["cohomology", "--input", f.path().to_str().unwrap(), "--buffer", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("buffer 5"), "{out}");
    }

    #[test]
    fn selftest_exit_codes() {
        assert_eq!(invoke(&["selftest", "--cases", "3"]).0, 0);
        assert_eq!(invoke(&["selftest", "--cases", "3", "--mutate"]).0, 1);
    }
}
