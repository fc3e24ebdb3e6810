//! Scalarization algorithms.
//!
//! Every algorithm takes a validated MIN-sense [`Problem`] and repeatedly
//! builds [`ScalarSubproblem`]s, handing each to the solver behind a
//! [`SolveContext`]. The result is a status plus a list of mutually
//! nondominated [`SolutionPoint`]s.

mod chalmet;
mod dichotomy;
mod dominguez_rios;
mod epsilon_constraint;
mod hierarchical;
mod hull;
mod kirlik_sayin;
mod lexicographic;
mod random_weighting;
mod regions;
mod sandwiching;
mod tamby_vanderpooten;

use std::time::{Duration, Instant};

use crate::backend::{build_subproblem, ScalarResult, ScalarSubproblem, SolveStatus, Solver};
use crate::dominance::{filter_nondominated, SolutionPoint};
use crate::model::{evaluate_objective, LinearRow, Problem, RowSense};

pub use chalmet::Chalmet;
pub use dichotomy::Dichotomy;
pub use dominguez_rios::DominguezRios;
pub use epsilon_constraint::EpsilonConstraint;
pub use hierarchical::Hierarchical;
pub use kirlik_sayin::KirlikSayin;
pub use lexicographic::Lexicographic;
pub use random_weighting::RandomWeighting;
pub use regions::SearchRegion;
pub use sandwiching::Sandwiching;
pub use tamby_vanderpooten::TambyVanderpooten;

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    /// Step used to emulate strict objective inequalities `f < u` as
    /// `f <= u - epsilon`.
    pub epsilon: f64,
    pub time_limit: Option<Duration>,
    pub solution_limit: Option<usize>,
    pub seed: u64,
    pub weights: Option<Vec<f64>>,
    pub priorities: Option<Vec<i64>>,
    pub relative_tolerances: Option<Vec<f64>>,
    pub all_permutations: bool,
    pub sandwich_gap: f64,
    /// Augmentation weight of the Tchebychev scalarization.
    pub tchebychev_rho: f64,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            time_limit: None,
            solution_limit: None,
            seed: 0,
            weights: None,
            priorities: None,
            relative_tolerances: None,
            all_permutations: true,
            sandwich_gap: 1e-6,
            tchebychev_rho: 1e-4,
        }
    }
}

impl AlgorithmConfig {
    pub fn validate(&self, objectives: usize) -> Result<(), String> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.sandwich_gap.is_nan() || self.sandwich_gap <= 0.0 {
            return Err(format!(
                "sandwich gap must be positive, got {}",
                self.sandwich_gap
            ));
        }
        if self.tchebychev_rho.is_nan() || self.tchebychev_rho <= 0.0 {
            return Err(format!("rho must be positive, got {}", self.tchebychev_rho));
        }
        if let Some(w) = &self.weights {
            if w.len() != objectives {
                return Err(format!("{} weights for {objectives} objectives", w.len()));
            }
            if w.iter().any(|v| v.is_nan() || *v <= 0.0) {
                return Err("weights must be strictly positive".into());
            }
        }
        if let Some(p) = &self.priorities {
            if p.len() != objectives {
                return Err(format!(
                    "{} priorities for {objectives} objectives",
                    p.len()
                ));
            }
        }
        if let Some(t) = &self.relative_tolerances {
            if t.len() != objectives {
                return Err(format!(
                    "{} relative tolerances for {objectives} objectives",
                    t.len()
                ));
            }
            if t.iter().any(|v| v.is_nan() || *v < 0.0) {
                return Err("relative tolerances must be nonnegative".into());
            }
        }
        Ok(())
    }

    fn relative_tolerance(&self, k: usize) -> f64 {
        self.relative_tolerances.as_ref().map_or(0.0, |t| t[k])
    }
}

/// Objective counts an algorithm accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Exactly(usize),
    AtLeastTwo,
}

impl Dimension {
    pub fn accepts(self, objectives: usize) -> bool {
        match self {
            Dimension::Exactly(d) => objectives == d,
            Dimension::AtLeastTwo => objectives >= 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: SolveStatus,
    pub points: Vec<SolutionPoint>,
}

impl Outcome {
    pub fn new(status: SolveStatus, points: Vec<SolutionPoint>) -> Self {
        Self { status, points }
    }

    pub fn empty(status: SolveStatus) -> Self {
        Self::new(status, Vec::new())
    }

    /// Nondominated filter of `points` under `status`.
    pub(crate) fn filtered(status: SolveStatus, points: Vec<SolutionPoint>) -> Self {
        let frontier = filter_nondominated(points).expect("points share the objective dimension");
        Self::new(status, frontier.into_points())
    }
}

/// A solution algorithm for MIN-sense multi-objective problems.
pub trait Algorithm: Send + Sync {
    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome;

    fn dimension(&self) -> Dimension {
        Dimension::AtLeastTwo
    }

    /// Whether the algorithm emulates strict inequalities with `epsilon`.
    fn uses_epsilon(&self) -> bool {
        false
    }

    /// Algorithm-specific configuration requirements.
    fn check_config(&self, _problem: &Problem, _config: &AlgorithmConfig) -> Result<(), String> {
        Ok(())
    }
}

/// Owns the solver for one algorithm run, enforces the overall deadline and
/// counts solver invocations.
pub struct SolveContext<'s> {
    solver: &'s mut dyn Solver,
    deadline: Option<Instant>,
    solves: usize,
}

impl<'s> SolveContext<'s> {
    pub fn new(solver: &'s mut dyn Solver, time_limit: Option<Duration>) -> Self {
        let deadline = time_limit.and_then(|t| Instant::now().checked_add(t));
        Self {
            solver,
            deadline,
            solves: 0,
        }
    }

    pub fn subproblem_count(&self) -> usize {
        self.solves
    }

    pub fn solve(&mut self, sub: &ScalarSubproblem<'_>) -> ScalarResult {
        let remaining = match self.deadline {
            Some(d) => match d.checked_duration_since(Instant::now()) {
                Some(r) if !r.is_zero() => Some(r),
                _ => return ScalarResult::with_status(SolveStatus::TimeLimit),
            },
            None => None,
        };
        self.solves += 1;
        self.solver.solve(sub, remaining)
    }
}

/// Convenience wrapper running `algorithm` with a fresh context.
pub fn run(
    algorithm: &dyn Algorithm,
    problem: &Problem,
    config: &AlgorithmConfig,
    solver: &mut dyn Solver,
) -> Outcome {
    let mut ctx = SolveContext::new(solver, config.time_limit);
    algorithm.minimize(problem, config, &mut ctx)
}

/// A non-optimal, non-infeasible solve status that ends an algorithm.
pub(crate) type Halt = SolveStatus;

#[derive(Debug, Clone)]
pub(crate) struct Staged {
    pub point: SolutionPoint,
    /// Optimal value of each stage, in order.
    pub values: Vec<f64>,
}

/// One level of a lexicographic solve: minimize `weights·f0` and, before the
/// next level, bound it by its optimum plus `relative_slack * |optimum|`.
#[derive(Debug, Clone)]
pub(crate) struct Stage {
    pub weights: Vec<f64>,
    pub relative_slack: f64,
}

impl Stage {
    pub fn new(weights: Vec<f64>) -> Self {
        Self {
            weights,
            relative_slack: 0.0,
        }
    }

    pub fn unit(o: usize, k: usize) -> Self {
        let mut w = vec![0.0; o];
        w[k] = 1.0;
        Self::new(w)
    }

    pub fn sum(o: usize) -> Self {
        Self::new(vec![1.0; o])
    }
}

pub(crate) fn unbounded(o: usize) -> Vec<f64> {
    vec![f64::INFINITY; o]
}

/// `u_j - epsilon` on finite entries.
pub(crate) fn strict_bounds(u: &[f64], epsilon: f64) -> Vec<f64> {
    u.iter()
        .map(|v| if v.is_finite() { v - epsilon } else { *v })
        .collect()
}

/// Row `weights·f0(x) <= bound`.
pub(crate) fn objective_row(problem: &Problem, weights: &[f64], bound: f64) -> LinearRow {
    let objective = problem.objective();
    let mut coeffs = vec![0.0; problem.num_variables()];
    let mut constant = 0.0;
    for (k, w) in weights.iter().enumerate() {
        if *w != 0.0 {
            for (c, a) in coeffs.iter_mut().zip(&objective.matrix[k]) {
                *c += w * a;
            }
            constant += w * objective.offsets[k];
        }
    }
    LinearRow::from_dense(&coeffs, RowSense::Le, bound - constant)
}

pub(crate) fn point_from(problem: &Problem, x: Vec<f64>) -> SolutionPoint {
    let y = evaluate_objective(problem, &x).expect("solver returns full-length points");
    SolutionPoint::new(x, y)
}

/// Solves the stages in order under objective bounds `u` and `extra` rows.
/// `Ok(None)` when the first stage is infeasible.
pub(crate) fn solve_staged(
    ctx: &mut SolveContext<'_>,
    problem: &Problem,
    stages: &[Stage],
    u: &[f64],
    extra: &[LinearRow],
) -> Result<Option<Staged>, Halt> {
    let mut rows = extra.to_vec();
    let mut best: Option<Staged> = None;
    for stage in stages {
        let sub = build_subproblem(problem, &stage.weights, u, rows.clone())
            .expect("stage weights match the objective dimension");
        let result = ctx.solve(&sub);
        match result.status {
            SolveStatus::Optimal => {}
            SolveStatus::Infeasible if best.is_none() => return Ok(None),
            // A later stage only adds a bound met by the previous optimum, so
            // infeasibility here is numerical; keep the previous point.
            SolveStatus::Infeasible => break,
            other => return Err(other),
        }
        let value = result.value.expect("optimal results carry a value");
        let point = point_from(problem, result.x.expect("optimal results carry a point"));
        let mut values = best.map(|b| b.values).unwrap_or_default();
        values.push(value);
        rows.push(objective_row(
            problem,
            &stage.weights,
            value + stage.relative_slack * value.abs(),
        ));
        best = Some(Staged { point, values });
    }
    Ok(best)
}

/// Lexicographic minimum under the objective order `order`.
pub(crate) fn lexmin(
    ctx: &mut SolveContext<'_>,
    problem: &Problem,
    order: &[usize],
    u: &[f64],
) -> Result<Option<SolutionPoint>, Halt> {
    let o = problem.num_objectives();
    let stages: Vec<Stage> = order.iter().map(|&k| Stage::unit(o, k)).collect();
    Ok(solve_staged(ctx, problem, &stages, u, &[])?.map(|s| s.point))
}

/// Per-objective minima. Fails with the first non-optimal status.
pub fn compute_ideal_point(
    problem: &Problem,
    ctx: &mut SolveContext<'_>,
) -> Result<Vec<f64>, SolveStatus> {
    let o = problem.num_objectives();
    let u = unbounded(o);
    (0..o)
        .map(
            |k| match solve_staged(ctx, problem, &[Stage::unit(o, k)], &u, &[]) {
                Ok(Some(s)) => Ok(s.values[0]),
                Ok(None) => Err(SolveStatus::Infeasible),
                Err(status) => Err(status),
            },
        )
        .collect()
}

/// Per-objective maxima over the feasible set, `+inf` where unbounded.
pub(crate) fn compute_anti_ideal(
    problem: &Problem,
    ctx: &mut SolveContext<'_>,
) -> Result<Vec<f64>, SolveStatus> {
    let o = problem.num_objectives();
    let u = unbounded(o);
    (0..o)
        .map(|k| {
            let mut w = vec![0.0; o];
            w[k] = -1.0;
            match solve_staged(ctx, problem, &[Stage::new(w)], &u, &[]) {
                Ok(Some(s)) => Ok(-s.values[0]),
                Ok(None) => Err(SolveStatus::Infeasible),
                Err(SolveStatus::Unbounded) => Ok(f64::INFINITY),
                Err(status) => Err(status),
            }
        })
        .collect()
}

/// Ideal point and padded anti-ideal point enclosing every feasible image.
pub(crate) fn enclosing_box(
    problem: &Problem,
    config: &AlgorithmConfig,
    ctx: &mut SolveContext<'_>,
) -> Result<(Vec<f64>, Vec<f64>), SolveStatus> {
    let ideal = compute_ideal_point(problem, ctx)?;
    let anti = compute_anti_ideal(problem, ctx)?;
    let upper = anti.iter().map(|v| v + config.epsilon).collect();
    Ok((ideal, upper))
}
