#![allow(dead_code)]

use std::path::{Path, PathBuf};

use multiobj::cli;
use multiobj::driver::MetaSolver;
use multiobj::model::Problem;
use multiobj::oracle::fixtures;

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_path(name: &str) -> PathBuf {
    crate_dir().join("fixtures").join(format!("{name}.json"))
}

pub fn golden_path(fixture: &str, algorithm: &str) -> PathBuf {
    crate_dir()
        .join("golden")
        .join(format!("{fixture}.{algorithm}.json"))
}

/// Shipped instance files and the problems they encode.
pub fn shipped_fixtures() -> Vec<(&'static str, Problem)> {
    vec![
        ("k1", fixtures::k1()),
        ("k2", fixtures::k2()),
        ("k3", fixtures::k3()),
        ("k4", fixtures::k4()),
    ]
}

/// Extra CLI flags an algorithm needs on the shipped fixtures.
pub fn algorithm_flags(algorithm: &str, objectives: usize) -> Vec<String> {
    match algorithm {
        "hierarchical" => {
            let priorities: Vec<String> = (1..=objectives).rev().map(|p| p.to_string()).collect();
            vec![
                "--priorities".into(),
                priorities.join(","),
                "--weights".into(),
                vec!["1"; objectives].join(","),
            ]
        }
        "random-weighting" => vec!["--seed".into(), "0".into()],
        _ => vec![],
    }
}

pub fn bi_objective_only(algorithm: &str) -> bool {
    matches!(algorithm, "chalmet" | "dichotomy" | "epsilon-constraint")
}

/// `(fixture, algorithm, flags)` for every golden file.
pub fn golden_cases() -> Vec<(&'static str, String, Vec<String>)> {
    let names = MetaSolver::with_builtin().algorithm_names();
    let mut cases = Vec::new();
    for (fixture, problem) in shipped_fixtures() {
        let o = problem.num_objectives();
        for name in &names {
            if o > 2 && bi_objective_only(name) {
                continue;
            }
            cases.push((fixture, name.clone(), algorithm_flags(name, o)));
        }
    }
    cases
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(driver: &MetaSolver, args: &[String]) -> CliRun {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multiobj".to_string()).chain(args.iter().cloned());
    let code = cli::run(argv, driver, &mut out, &mut err);
    CliRun {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn golden_args(fixture: &str, algorithm: &str, flags: &[String]) -> Vec<String> {
    let mut args = vec![
        "--instance".to_string(),
        fixture_path(fixture).display().to_string(),
        "--algorithm".to_string(),
        algorithm.to_string(),
    ];
    args.extend(flags.iter().cloned());
    args
}
