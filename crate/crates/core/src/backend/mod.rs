//! Scalarized single-objective subproblems and the solver contract.
//!
//! Every algorithm reduces the vector objective to
//! `min w·f0(x)` subject to the base rows, `f0(x) <= u` for the finite
//! entries of `u`, and any temporary rows the algorithm adds. A [`Solver`]
//! solves one such subproblem per call; [`BundledSolver`] does so with the
//! dense simplex and best-first branch-and-bound in this module.

mod branch_bound;
pub(crate) mod simplex;

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{LinearRow, ObjectiveSense, Problem, RowSense};

pub use branch_bound::INTEGRALITY_TOL;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubproblemError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("weight vector is all zeros")]
    AllZeroWeights,
    #[error("subproblems are built from MIN-sense problems only")]
    NotMinimization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    TimeLimit,
    OtherError,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "OPTIMAL",
            SolveStatus::Infeasible => "INFEASIBLE",
            SolveStatus::Unbounded => "UNBOUNDED",
            SolveStatus::TimeLimit => "TIME_LIMIT",
            SolveStatus::OtherError => "OTHER_ERROR",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one single-objective solve. `x` and `value` are present iff
/// the status is [`SolveStatus::Optimal`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarResult {
    pub status: SolveStatus,
    pub x: Option<Vec<f64>>,
    pub value: Option<f64>,
}

impl ScalarResult {
    pub fn optimal(x: Vec<f64>, value: f64) -> Self {
        Self {
            status: SolveStatus::Optimal,
            x: Some(x),
            value: Some(value),
        }
    }

    pub fn with_status(status: SolveStatus) -> Self {
        debug_assert_ne!(status, SolveStatus::Optimal);
        Self {
            status,
            x: None,
            value: None,
        }
    }
}

/// Immutable snapshot of `min w·f0(x)` over the base problem, with
/// objective upper bounds `u` and temporary rows.
#[derive(Debug, Clone)]
pub struct ScalarSubproblem<'a> {
    base: &'a Problem,
    weights: Vec<f64>,
    upper_bounds: Vec<f64>,
    extra_rows: Vec<LinearRow>,
    cost: Vec<f64>,
    constant: f64,
    bound_rows: Vec<LinearRow>,
}

pub fn build_subproblem<'a>(
    p: &'a Problem,
    w: &[f64],
    u: &[f64],
    extra: Vec<LinearRow>,
) -> Result<ScalarSubproblem<'a>, SubproblemError> {
    if p.sense() != ObjectiveSense::Min {
        return Err(SubproblemError::NotMinimization);
    }
    let (n, o) = (p.num_variables(), p.num_objectives());
    if w.len() != o || u.len() != o {
        return Err(SubproblemError::DimensionMismatch(format!(
            "{o} objectives but {} weights and {} upper bounds",
            w.len(),
            u.len()
        )));
    }
    if w.iter().all(|v| *v == 0.0) {
        return Err(SubproblemError::AllZeroWeights);
    }
    if let Some(j) = extra
        .iter()
        .flat_map(|r| r.coefficients.keys())
        .find(|j| **j >= n)
    {
        return Err(SubproblemError::DimensionMismatch(format!(
            "extra row references variable {j} of {n}"
        )));
    }
    let objective = p.objective();
    let mut cost = vec![0.0; n];
    for (wk, row) in w.iter().zip(&objective.matrix) {
        if *wk != 0.0 {
            for (c, a) in cost.iter_mut().zip(row) {
                *c += wk * a;
            }
        }
    }
    let constant = w.iter().zip(&objective.offsets).map(|(a, b)| a * b).sum();
    let bound_rows = u
        .iter()
        .enumerate()
        .filter(|(_, uk)| uk.is_finite())
        .map(|(k, uk)| {
            LinearRow::from_dense(
                &objective.matrix[k],
                RowSense::Le,
                uk - objective.offsets[k],
            )
        })
        .collect();
    Ok(ScalarSubproblem {
        base: p,
        weights: w.to_vec(),
        upper_bounds: u.to_vec(),
        extra_rows: extra,
        cost,
        constant,
        bound_rows,
    })
}

impl<'a> ScalarSubproblem<'a> {
    pub fn base(&self) -> &'a Problem {
        self.base
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn upper_bounds(&self) -> &[f64] {
        &self.upper_bounds
    }

    pub fn extra_rows(&self) -> &[LinearRow] {
        &self.extra_rows
    }

    /// `w^T * matrix`.
    pub fn objective_coefficients(&self) -> &[f64] {
        &self.cost
    }

    /// `w^T * offsets`.
    pub fn objective_constant(&self) -> f64 {
        self.constant
    }

    /// Rows induced by the finite entries of `u`.
    pub fn bound_rows(&self) -> &[LinearRow] {
        &self.bound_rows
    }

    /// Base rows, then bound rows, then extra rows.
    pub fn rows(&self) -> impl Iterator<Item = &LinearRow> {
        self.base
            .rows()
            .iter()
            .chain(&self.bound_rows)
            .chain(&self.extra_rows)
    }

    /// Scalar objective value `w·f0(x)`.
    pub fn value_at(&self, x: &[f64]) -> f64 {
        self.cost.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + self.constant
    }

    fn relaxation(&self) -> simplex::LinearProgram {
        let vars = self.base.variables();
        simplex::LinearProgram {
            cost: self.cost.clone(),
            lower: vars.iter().map(|v| v.lower).collect(),
            upper: vars.iter().map(|v| v.upper).collect(),
            rows: self.rows().cloned().collect(),
        }
    }
}

/// Solves one scalar subproblem per call. Implementations may wrap external
/// engines but keep no state between calls.
pub trait Solver {
    fn solve(&mut self, sub: &ScalarSubproblem<'_>, time_limit: Option<Duration>) -> ScalarResult;
}

impl<S: Solver + ?Sized> Solver for &mut S {
    fn solve(&mut self, sub: &ScalarSubproblem<'_>, time_limit: Option<Duration>) -> ScalarResult {
        (**self).solve(sub, time_limit)
    }
}

/// Dense simplex plus branch-and-bound, no external dependencies.
#[derive(Debug, Clone, Copy, Default)]
pub struct BundledSolver;

impl Solver for BundledSolver {
    fn solve(&mut self, sub: &ScalarSubproblem<'_>, time_limit: Option<Duration>) -> ScalarResult {
        solve_milp(sub, time_limit)
    }
}

fn deadline(time_limit: Option<Duration>) -> Option<Instant> {
    time_limit.map(|t| {
        Instant::now()
            .checked_add(t)
            .unwrap_or_else(|| Instant::now() + Duration::from_secs(86_400 * 365))
    })
}

/// Solves the continuous relaxation (integrality ignored).
pub fn solve_lp(sub: &ScalarSubproblem<'_>, time_limit: Option<Duration>) -> ScalarResult {
    match simplex::solve(&sub.relaxation(), deadline(time_limit)) {
        simplex::LpOutcome::Optimal { x, value } => ScalarResult::optimal(x, value + sub.constant),
        simplex::LpOutcome::Infeasible => ScalarResult::with_status(SolveStatus::Infeasible),
        simplex::LpOutcome::Unbounded => ScalarResult::with_status(SolveStatus::Unbounded),
        simplex::LpOutcome::TimeLimit => ScalarResult::with_status(SolveStatus::TimeLimit),
        simplex::LpOutcome::Failed => ScalarResult::with_status(SolveStatus::OtherError),
    }
}

/// Globally optimal integer-feasible solution by best-first branch-and-bound.
pub fn solve_milp(sub: &ScalarSubproblem<'_>, time_limit: Option<Duration>) -> ScalarResult {
    branch_bound::solve(sub, deadline(time_limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{negate_objective, VariableSpec, VectorObjective};

    const INF: f64 = f64::INFINITY;

    fn k1_min() -> Problem {
        let p = Problem::new(
            vec![
                VariableSpec::binary("a"),
                VariableSpec::binary("b"),
                VariableSpec::binary("c"),
            ],
            vec![LinearRow::from_dense(&[3.0, 4.0, 5.0], RowSense::Le, 8.0)],
            VectorObjective::linear(
                vec![vec![5.0, 4.0, 3.0], vec![3.0, 4.0, 5.0]],
                ObjectiveSense::Max,
            ),
        )
        .unwrap();
        negate_objective(&p).unwrap()
    }

    fn two_var_lp(cost: [f64; 2], bounds: (f64, f64), rows: Vec<LinearRow>) -> Problem {
        Problem::new(
            vec![
                VariableSpec::continuous("x1", bounds.0, bounds.1),
                VariableSpec::continuous("x2", bounds.0, bounds.1),
            ],
            rows,
            VectorObjective::linear(vec![cost.to_vec(), vec![0.0, 0.0]], ObjectiveSense::Min),
        )
        .unwrap()
    }

    #[test]
    fn unit_weight_selects_one_objective() {
        let p = k1_min();
        let sub = build_subproblem(&p, &[1.0, 0.0], &[INF, INF], vec![]).unwrap();
        assert_eq!(sub.objective_coefficients(), &[-5.0, -4.0, -3.0]);
        assert_eq!(sub.objective_constant(), 0.0);
        assert!(sub.bound_rows().is_empty());
        assert_eq!(sub.rows().count(), 1);
    }

    #[test]
    fn finite_upper_bound_adds_objective_row() {
        let p = k1_min();
        let sub = build_subproblem(&p, &[1.0, 1.0], &[INF, -8.0], vec![]).unwrap();
        assert_eq!(sub.objective_coefficients(), &[-8.0, -8.0, -8.0]);
        let row = &sub.bound_rows()[0];
        assert_eq!(
            row.coefficients.values().copied().collect::<Vec<_>>(),
            vec![-3.0, -4.0, -5.0]
        );
        assert_eq!((row.sense, row.rhs), (RowSense::Le, -8.0));
    }

    #[test]
    fn bound_rows_account_for_offsets() {
        let p = Problem::new(
            vec![VariableSpec::binary("a")],
            vec![],
            VectorObjective::new(
                vec![vec![1.0], vec![2.0]],
                vec![10.0, -1.0],
                ObjectiveSense::Min,
            ),
        )
        .unwrap();
        let sub = build_subproblem(&p, &[2.0, 1.0], &[10.5, INF], vec![]).unwrap();
        assert_eq!(sub.objective_constant(), 19.0);
        assert_eq!(sub.bound_rows()[0].rhs, 0.5);
    }

    #[test]
    fn subproblem_errors() {
        let p = k1_min();
        assert_eq!(
            build_subproblem(&p, &[0.0, 0.0], &[INF, INF], vec![]).unwrap_err(),
            SubproblemError::AllZeroWeights
        );
        assert!(matches!(
            build_subproblem(&p, &[1.0], &[INF, INF], vec![]),
            Err(SubproblemError::DimensionMismatch(_))
        ));
        let max = Problem::new(
            p.variables().to_vec(),
            vec![],
            VectorObjective::linear(p.objective().matrix.clone(), ObjectiveSense::Max),
        )
        .unwrap();
        assert_eq!(
            build_subproblem(&max, &[1.0, 0.0], &[INF, INF], vec![]).unwrap_err(),
            SubproblemError::NotMinimization
        );
    }

    #[test]
    fn lp_box_maximum() {
        let p = two_var_lp([-1.0, -1.0], (0.0, 1.0), vec![]);
        let r = solve_lp(
            &build_subproblem(&p, &[1.0, 0.0], &[INF, INF], vec![]).unwrap(),
            None,
        );
        assert_eq!(r, ScalarResult::optimal(vec![1.0, 1.0], -2.0));
    }

    #[test]
    fn lp_infeasible_and_unbounded() {
        let p = two_var_lp(
            [1.0, 0.0],
            (0.0, INF),
            vec![
                LinearRow::new([(0, 1.0)], RowSense::Ge, 2.0),
                LinearRow::new([(0, 1.0)], RowSense::Le, 1.0),
            ],
        );
        let sub = build_subproblem(&p, &[1.0, 0.0], &[INF, INF], vec![]).unwrap();
        assert_eq!(solve_lp(&sub, None).status, SolveStatus::Infeasible);

        let p = two_var_lp([-1.0, 0.0], (0.0, INF), vec![]);
        let sub = build_subproblem(&p, &[1.0, 0.0], &[INF, INF], vec![]).unwrap();
        assert_eq!(solve_lp(&sub, None).status, SolveStatus::Unbounded);
    }

    #[test]
    fn milp_knapsack_examples() {
        let p = k1_min();
        let r = solve_milp(
            &build_subproblem(&p, &[1.0, 0.0], &[INF, INF], vec![]).unwrap(),
            None,
        );
        assert_eq!(r, ScalarResult::optimal(vec![1.0, 1.0, 0.0], -9.0));

        let r = solve_milp(
            &build_subproblem(&p, &[1.0, 1.0], &[INF, -8.0], vec![]).unwrap(),
            None,
        );
        assert_eq!(r, ScalarResult::optimal(vec![1.0, 0.0, 1.0], -16.0));

        let r = solve_milp(
            &build_subproblem(&p, &[1.0, 1.0], &[-100.0, INF], vec![]).unwrap(),
            None,
        );
        assert_eq!(r.status, SolveStatus::Infeasible);
        assert!(r.x.is_none() && r.value.is_none());
    }

    #[test]
    fn milp_equal_weights_prefers_first_branch() {
        let p = k1_min();
        let r = solve_milp(
            &build_subproblem(&p, &[1.0, 1.0], &[INF, INF], vec![]).unwrap(),
            None,
        );
        assert_eq!(r, ScalarResult::optimal(vec![1.0, 1.0, 0.0], -16.0));
    }

    #[test]
    fn relaxation_bounds_integer_optimum() {
        let p = k1_min();
        let sub = build_subproblem(&p, &[1.0, 2.0], &[INF, INF], vec![]).unwrap();
        let lp = solve_lp(&sub, None).value.unwrap();
        let ip = solve_milp(&sub, None).value.unwrap();
        assert!(lp <= ip + 1e-9);
    }

    #[test]
    fn zero_time_limit_stops_branching() {
        let p = k1_min();
        let sub = build_subproblem(&p, &[1.0, 2.0], &[INF, INF], vec![]).unwrap();
        let r = solve_milp(&sub, Some(Duration::ZERO));
        assert_eq!(r.status, SolveStatus::TimeLimit);
    }
}
