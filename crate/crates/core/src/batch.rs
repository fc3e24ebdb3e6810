//! Solving many independent instances, optionally across threads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algorithms::AlgorithmConfig;
use crate::backend::BundledSolver;
use crate::driver::{DriverError, MetaSolver, ResultSet};
use crate::model::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon work-stealing when the `parallel` feature is on; sequential
    /// otherwise.
    #[default]
    Parallel,
}

/// Runs `algorithm` on every problem with a fresh bundled solver each.
/// Results are in input order regardless of execution mode.
pub fn solve_many(
    driver: &MetaSolver,
    problems: &[Problem],
    algorithm: &str,
    config: &AlgorithmConfig,
    execution: Execution,
) -> Vec<Result<ResultSet, DriverError>> {
    let one = |p: &Problem| driver.optimize(p, algorithm, config, &mut BundledSolver);
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => problems.par_iter().map(one).collect(),
        _ => problems.iter().map(one).collect(),
    }
}
