//! Brute-force ground truth for small bounded-integer problems.
//!
//! The lattice enumeration shares nothing with the simplex backend. The
//! supported-point check for three or more objectives is the exception: it
//! certifies each point with a small LP solved by the bundled simplex.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::backend::simplex::{self, LinearProgram, LpOutcome};
use crate::batch::Execution;
use crate::dominance::{filter_nondominated, Frontier, SolutionPoint};
use crate::model::{evaluate_objective, LinearRow, ObjectiveSense, Problem, RowSense};

/// Largest lattice the oracle will walk.
pub const MAX_LATTICE: u64 = 1 << 22;

const FEASIBILITY_TOL: f64 = 1e-9;
const CERTIFICATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("lattice has {size} points, limit is {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("variable `{0}` is continuous or unbounded")]
    ContinuousUnsupported(String),
}

/// Integer ranges `(lower, count)` per variable.
fn lattice(p: &Problem) -> Result<(Vec<(i64, u64)>, u64), OracleError> {
    let mut ranges = Vec::with_capacity(p.num_variables());
    let mut size: u64 = 1;
    for v in p.variables() {
        if !v.is_integer() || !v.lower.is_finite() || !v.upper.is_finite() {
            return Err(OracleError::ContinuousUnsupported(v.name.clone()));
        }
        let lo = v.lower.ceil() as i64;
        let hi = v.upper.floor() as i64;
        let count = (hi - lo + 1).max(0) as u64;
        size = size.saturating_mul(count);
        if size > MAX_LATTICE {
            return Err(OracleError::TooLarge {
                size,
                limit: MAX_LATTICE,
            });
        }
        ranges.push((lo, count));
    }
    Ok((ranges, size))
}

fn decode(mut index: u64, ranges: &[(i64, u64)]) -> Vec<f64> {
    ranges
        .iter()
        .map(|&(lo, count)| {
            let digit = index % count;
            index /= count;
            (lo + digit as i64) as f64
        })
        .collect()
}

fn feasible_point(p: &Problem, ranges: &[(i64, u64)], index: u64) -> Option<SolutionPoint> {
    let x = decode(index, ranges);
    if p.rows().iter().any(|r| r.violation(&x) > FEASIBILITY_TOL) {
        return None;
    }
    let mut y = evaluate_objective(p, &x).expect("lattice point has n entries");
    if p.sense() == ObjectiveSense::Max {
        y.iter_mut().for_each(|v| *v = -*v);
    }
    Some(SolutionPoint::new(x, y))
}

/// Nondominated set of `p` in MIN convention (MAX objectives negated).
pub fn enumerate_frontier(p: &Problem) -> Result<Frontier, OracleError> {
    enumerate_frontier_with(p, Execution::default())
}

/// As [`enumerate_frontier`] with an explicit execution mode. The result
/// does not depend on the mode.
pub fn enumerate_frontier_with(p: &Problem, execution: Execution) -> Result<Frontier, OracleError> {
    let (ranges, size) = lattice(p)?;
    if size == 0 {
        return Ok(Frontier::new());
    }
    let points: Vec<SolutionPoint> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..size)
            .into_par_iter()
            .filter_map(|i| feasible_point(p, &ranges, i))
            .collect(),
        _ => (0..size)
            .filter_map(|i| feasible_point(p, &ranges, i))
            .collect(),
    };
    Ok(filter_nondominated(points).expect("all points share the objective count"))
}

/// Frontier members that are vertices of the dominated convex hull.
pub fn enumerate_supported(p: &Problem) -> Result<Frontier, OracleError> {
    let frontier = enumerate_frontier(p)?;
    let keep = if p.num_objectives() == 2 {
        lower_hull(&frontier.ys())
    } else {
        let ys = frontier.ys();
        (0..ys.len()).map(|i| certified_vertex(&ys, i)).collect()
    };
    let points = frontier
        .into_points()
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    Ok(filter_nondominated(points).expect("subset of a frontier"))
}

/// Marks the vertices of the lower-left convex chain of a bi-objective
/// frontier sorted by the first objective. Collinear points are dropped.
fn lower_hull(ys: &[Vec<f64>]) -> Vec<bool> {
    let cross = |o: &[f64], a: &[f64], b: &[f64]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut chain: Vec<usize> = Vec::new();
    for i in 0..ys.len() {
        while chain.len() >= 2 {
            let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            let scale = ys[a]
                .iter()
                .chain(&ys[i])
                .fold(1.0f64, |m, v| m.max(v.abs()));
            if cross(&ys[a], &ys[b], &ys[i]) <= CERTIFICATE_TOL * scale * scale {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(i);
    }
    let mut keep = vec![false; ys.len()];
    chain.into_iter().for_each(|i| keep[i] = true);
    keep
}

/// Solves `max s` subject to `w·(y' - y) >= s` for every other frontier
/// point, `sum w = 1`, `w >= 0`. A positive margin certifies that `y` is the
/// unique minimizer of some weighted sum, and a small perturbation makes the
/// weights strictly positive.
fn certified_vertex(ys: &[Vec<f64>], i: usize) -> bool {
    let o = ys[i].len();
    if ys.len() == 1 {
        return true;
    }
    // Columns: w_0..w_{o-1}, s. Minimize -s.
    let mut cost = vec![0.0; o + 1];
    cost[o] = -1.0;
    let mut rows: Vec<LinearRow> = ys
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, other)| {
            let mut coefficients: Vec<f64> = other.iter().zip(&ys[i]).map(|(a, b)| a - b).collect();
            coefficients.push(-1.0);
            LinearRow::from_dense(&coefficients, RowSense::Ge, 0.0)
        })
        .collect();
    let mut simplex_row = vec![1.0; o];
    simplex_row.push(0.0);
    rows.push(LinearRow::from_dense(&simplex_row, RowSense::Eq, 1.0));
    let mut lower = vec![0.0; o];
    lower.push(f64::NEG_INFINITY);
    let lp = LinearProgram {
        cost,
        lower,
        upper: vec![f64::INFINITY; o + 1],
        rows,
    };
    match simplex::solve(&lp, None) {
        LpOutcome::Optimal { value, .. } => -value > CERTIFICATE_TOL,
        _ => false,
    }
}

/// A named problem with its enumerated frontier and supported set.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub problem: Problem,
    pub expected_frontier: Vec<Vec<f64>>,
    pub expected_supported: Vec<Vec<f64>>,
}

impl Fixture {
    pub fn new(name: impl Into<String>, problem: Problem) -> Result<Self, OracleError> {
        let expected_frontier = enumerate_frontier(&problem)?.ys();
        let expected_supported = enumerate_supported(&problem)?.ys();
        Ok(Self {
            name: name.into(),
            problem,
            expected_frontier,
            expected_supported,
        })
    }
}

/// Small reference problems shared by unit, integration and golden tests.
pub mod fixtures {
    use super::Fixture;
    use crate::model::{
        negate_objective, LinearRow, ObjectiveSense, Problem, RowSense, VariableSpec,
        VectorObjective,
    };

    fn binaries(n: usize) -> Vec<VariableSpec> {
        (1..=n)
            .map(|i| VariableSpec::binary(format!("x{i}")))
            .collect()
    }

    fn build(
        vars: Vec<VariableSpec>,
        rows: Vec<LinearRow>,
        matrix: Vec<Vec<f64>>,
        sense: ObjectiveSense,
    ) -> Problem {
        Problem::new(vars, rows, VectorObjective::linear(matrix, sense)).expect("fixture is valid")
    }

    /// Bi-objective knapsack, weights `[3, 4, 5]`, capacity 8, maximized.
    pub fn k1() -> Problem {
        build(
            binaries(3),
            vec![LinearRow::from_dense(&[3.0, 4.0, 5.0], RowSense::Le, 8.0)],
            vec![vec![5.0, 4.0, 3.0], vec![3.0, 4.0, 5.0]],
            ObjectiveSense::Max,
        )
    }

    pub fn k1_min() -> Problem {
        negate_objective(&k1()).expect("k1 is a max problem")
    }

    /// A single item that never fits.
    pub fn k2() -> Problem {
        build(
            binaries(1),
            vec![LinearRow::from_dense(&[1.0], RowSense::Le, 0.0)],
            vec![vec![2.0], vec![3.0]],
            ObjectiveSense::Max,
        )
    }

    pub fn k2_min() -> Problem {
        negate_objective(&k2()).expect("k2 is a max problem")
    }

    /// Pick at most one of three items, one objective per item.
    pub fn k3() -> Problem {
        build(
            binaries(3),
            vec![LinearRow::from_dense(&[1.0, 1.0, 1.0], RowSense::Le, 1.0)],
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            ObjectiveSense::Max,
        )
    }

    pub fn k3_min() -> Problem {
        negate_objective(&k3()).expect("k3 is a max problem")
    }

    fn pick_one(middle: f64) -> Problem {
        build(
            binaries(3),
            vec![LinearRow::from_dense(&[1.0, 1.0, 1.0], RowSense::Eq, 1.0)],
            vec![vec![0.0, middle, 4.0], vec![4.0, middle, 0.0]],
            ObjectiveSense::Min,
        )
    }

    /// Choose exactly one of `[0,4]`, `[3,3]`, `[4,0]`; the middle point is
    /// nondominated but unsupported.
    pub fn k4() -> Problem {
        pick_one(3.0)
    }

    /// As [`k4`] with the middle point at `[1,1]`, below the segment.
    pub fn k4_convex() -> Problem {
        pick_one(1.0)
    }

    /// `min (x1, x2)` subject to `x1 + x2 >= 1` on the unit box.
    pub fn l1() -> Problem {
        build(
            vec![
                VariableSpec::continuous("x1", 0.0, 1.0),
                VariableSpec::continuous("x2", 0.0, 1.0),
            ],
            vec![LinearRow::from_dense(&[1.0, 1.0], RowSense::Ge, 1.0)],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            ObjectiveSense::Min,
        )
    }

    /// One feasible solution, `a = 1`, with image `[2, 3]`.
    pub fn single_point() -> Problem {
        build(
            vec![VariableSpec::binary("a")],
            vec![LinearRow::from_dense(&[1.0], RowSense::Ge, 1.0)],
            vec![vec![2.0], vec![3.0]],
            ObjectiveSense::Min,
        )
    }

    pub fn infeasible() -> Problem {
        build(
            vec![VariableSpec::binary("a")],
            vec![LinearRow::from_dense(&[1.0], RowSense::Ge, 2.0)],
            vec![vec![1.0], vec![1.0]],
            ObjectiveSense::Min,
        )
    }

    /// Two identical objectives over a choose-at-least-one constraint.
    pub fn duplicated_objective() -> Problem {
        build(
            binaries(2),
            vec![LinearRow::from_dense(&[1.0, 1.0], RowSense::Ge, 1.0)],
            vec![vec![2.0, 3.0], vec![2.0, 3.0]],
            ObjectiveSense::Min,
        )
    }

    /// The shipped instance fixtures.
    pub fn all() -> Vec<Fixture> {
        [("k1", k1()), ("k2", k2()), ("k3", k3()), ("k4", k4())]
            .into_iter()
            .map(|(name, p)| Fixture::new(name, p).expect("fixtures are small"))
            .collect()
    }
}
