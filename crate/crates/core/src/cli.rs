//! Command-line front end. `run` takes explicit output streams and a
//! registry so that tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use crate::algorithms::AlgorithmConfig;
use crate::backend::{BundledSolver, SolveStatus};
use crate::driver::MetaSolver;
use crate::io::{parse_instance, write_results, OutputFormat};

pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_OTHER_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_UNBOUNDED: i32 = 3;
pub const EXIT_TIME_LIMIT: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "multiobj",
    version,
    about = "Solve multi-objective linear and integer programs"
)]
struct Args {
    /// Instance file in the JSON instance format.
    #[arg(long, value_name = "PATH")]
    instance: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    algorithm: Option<String>,
    /// Step for strict objective bounds. Defaults to 1 for integral objectives.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Overall limit in seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
    #[arg(long, value_name = "N")]
    solution_limit: Option<usize>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Comma-separated objective weights.
    #[arg(long, value_delimiter = ',', value_name = "CSV")]
    weights: Option<Vec<f64>>,
    /// Comma-separated integer priorities; higher is optimized first.
    #[arg(
        long,
        value_delimiter = ',',
        value_name = "CSV",
        allow_hyphen_values = true
    )]
    priorities: Option<Vec<i64>>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    list_algorithms: bool,
    /// Include wall-clock time in JSON stats (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

pub fn exit_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Optimal => EXIT_OPTIMAL,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
        SolveStatus::Unbounded => EXIT_UNBOUNDED,
        SolveStatus::TimeLimit => EXIT_TIME_LIMIT,
        SolveStatus::OtherError => EXIT_OTHER_ERROR,
    }
}

/// Runs the CLI with `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I, driver: &MetaSolver, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OPTIMAL
            };
        }
    };
    let usage = |err: &mut dyn Write, message: &str| {
        let _ = writeln!(err, "error: {message}");
        EXIT_USAGE
    };

    if args.list_algorithms {
        for name in driver.algorithm_names() {
            let _ = writeln!(out, "{name}");
        }
        return EXIT_OPTIMAL;
    }
    let Some(name) = args.algorithm.as_deref() else {
        return usage(err, "--algorithm is required");
    };
    let algorithm = match driver.algorithm(name) {
        Ok(a) => a,
        Err(e) => return usage(err, &e.to_string()),
    };
    let Some(path) = args.instance.as_ref() else {
        return usage(err, "--instance is required");
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage(err, &format!("cannot read {}: {e}", path.display())),
    };
    let problem = match parse_instance(&text) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_DATA;
        }
    };

    let mut config = AlgorithmConfig::default();
    match args.epsilon {
        Some(eps) => config.epsilon = eps,
        None if algorithm.uses_epsilon() && !problem.has_integral_objectives() => {
            return usage(
                err,
                &format!("{name} needs --epsilon when objective values may be fractional"),
            );
        }
        None => {}
    }
    if let Some(secs) = args.time_limit {
        match Duration::try_from_secs_f64(secs) {
            Ok(d) => config.time_limit = Some(d),
            Err(_) => return usage(err, &format!("invalid --time-limit {secs}")),
        }
    }
    config.solution_limit = args.solution_limit;
    config.seed = args.seed.unwrap_or(0);
    config.weights = args.weights;
    config.priorities = args.priorities;

    let result = match driver.optimize(&problem, name, &config, &mut BundledSolver) {
        Ok(r) => r,
        Err(e) => return usage(err, &e.to_string()),
    };
    let format = match args.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    let rendered = write_results(&result, &problem, format, args.timing);
    let written = match &args.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => out.write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_OTHER_ERROR;
    }
    exit_code(result.status)
}
