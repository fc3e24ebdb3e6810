use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::regions::{SearchRegion, UpperBoundSet};
use super::{enclosing_box, point_from, Algorithm, AlgorithmConfig, Outcome, SolveContext};
use crate::backend::{build_subproblem, SolveStatus};
use crate::dominance::Frontier;
use crate::model::{LinearRow, ObjectiveSense, Problem, RowSense, VariableSpec, VectorObjective};

#[derive(Debug, Clone, Copy)]
struct Queued {
    score: f64,
    id: usize,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// `problem` with one extra continuous variable `t` and an extra objective
/// row selecting it.
fn with_tchebychev_variable(problem: &Problem) -> Problem {
    let mut variables = problem.variables().to_vec();
    variables.push(VariableSpec::continuous(
        "__t",
        f64::NEG_INFINITY,
        f64::INFINITY,
    ));
    let objective = problem.objective();
    let mut matrix: Vec<Vec<f64>> = objective
        .matrix
        .iter()
        .map(|row| row.iter().copied().chain([0.0]).collect())
        .collect();
    let mut selector = vec![0.0; problem.num_variables()];
    selector.push(1.0);
    matrix.push(selector);
    let mut offsets = objective.offsets.clone();
    offsets.push(0.0);
    Problem::new(
        variables,
        problem.rows().to_vec(),
        VectorObjective::new(matrix, offsets, ObjectiveSense::Min),
    )
    .expect("augmenting a valid problem keeps it valid")
}

/// Box decomposition driven by an augmented weighted Tchebychev
/// scalarization anchored at each box's lower corner.
#[derive(Debug, Clone, Copy, Default)]
pub struct DominguezRios;

impl Algorithm for DominguezRios {
    fn uses_epsilon(&self) -> bool {
        true
    }

    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let (n, o) = (problem.num_variables(), problem.num_objectives());
        let limit = config.solution_limit.unwrap_or(usize::MAX);
        let (ideal, upper) = match enclosing_box(problem, config, ctx) {
            Ok(b) => b,
            Err(status) => return Outcome::empty(status),
        };
        let scale: Vec<f64> = upper
            .iter()
            .zip(&ideal)
            .map(|(u, l)| if (u - l).is_finite() { u - l } else { 1.0 })
            .collect();
        let scaled_volume = |r: &SearchRegion| -> f64 {
            (0..o)
                .map(|j| (r.upper[j] - r.lower[j]) / scale[j])
                .product()
        };

        let augmented = with_tchebychev_variable(problem);
        let objective = problem.objective();
        let mut weights = vec![config.tchebychev_rho; o];
        weights.push(1.0);

        let initial = SearchRegion::new(ideal, upper);
        let mut queue = BinaryHeap::from([Queued {
            score: scaled_volume(&initial),
            id: 0,
        }]);
        let mut boxes = UpperBoundSet::new(initial);
        let mut frontier = Frontier::new();

        while let Some(Queued { id, .. }) = queue.pop() {
            if frontier.len() >= limit {
                break;
            }
            let Some(region) = boxes.get(id).cloned() else {
                continue;
            };
            // t >= lambda_j * (f_j(x) - lower_j)
            let rows: Vec<LinearRow> = (0..o)
                .filter_map(|j| {
                    let lambda = 1.0 / (region.upper[j] - region.lower[j]);
                    if !(lambda.is_finite() && lambda > 0.0) {
                        return None;
                    }
                    let mut coeffs: Vec<f64> =
                        objective.matrix[j].iter().map(|a| lambda * a).collect();
                    coeffs.push(-1.0);
                    let rhs = lambda * (region.lower[j] - objective.offsets[j]);
                    Some(LinearRow::from_dense(&coeffs, RowSense::Le, rhs))
                })
                .collect();
            let mut u: Vec<f64> = region.upper.iter().map(|v| v - config.epsilon).collect();
            u.push(f64::INFINITY);
            let sub = build_subproblem(&augmented, &weights, &u, rows)
                .expect("augmented dimensions match");
            let result = ctx.solve(&sub);
            match result.status {
                SolveStatus::Optimal => {}
                SolveStatus::Infeasible => {
                    boxes.remove_covered(&region.upper);
                    continue;
                }
                status => return Outcome::filtered(status, frontier.into_points()),
            }
            let mut x = result.x.expect("optimal results carry a point");
            x.truncate(n);
            let point = point_from(problem, x);
            if frontier
                .insert(point.clone())
                .expect("consistent dimensions")
            {
                for child in boxes.insert_point(&point) {
                    let score = scaled_volume(boxes.get(child).expect("new box is live"));
                    queue.push(Queued { score, id: child });
                }
            }
            boxes.remove(id);
        }
        Outcome::new(SolveStatus::Optimal, frontier.into_points())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::run;
    use crate::backend::BundledSolver;
    use crate::oracle::fixtures;

    fn ys(outcome: &Outcome) -> Vec<Vec<f64>> {
        outcome.points.iter().map(|p| p.y.clone()).collect()
    }

    #[test]
    fn three_objective_pick_one() {
        let out = run(
            &DominguezRios,
            &fixtures::k3_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(
            ys(&out),
            vec![
                vec![-1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, -1.0]
            ]
        );
    }

    #[test]
    fn knapsack_frontier() {
        let out = run(
            &DominguezRios,
            &fixtures::k1_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0], vec![-8.0, -8.0]]);
    }

    #[test]
    fn single_point_problem() {
        let out = run(
            &DominguezRios,
            &fixtures::single_point(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![2.0, 3.0]]);
    }

    #[test]
    fn infeasible_problem() {
        let out = run(
            &DominguezRios,
            &fixtures::infeasible(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out, Outcome::empty(SolveStatus::Infeasible));
    }

    #[test]
    fn queue_prefers_large_boxes_then_old_ids() {
        let mut q = BinaryHeap::new();
        q.push(Queued { score: 1.0, id: 3 });
        q.push(Queued { score: 2.0, id: 5 });
        q.push(Queued { score: 2.0, id: 4 });
        assert_eq!(q.pop().unwrap().id, 4);
        assert_eq!(q.pop().unwrap().id, 5);
        assert_eq!(q.pop().unwrap().id, 3);
    }
}
