use itertools::Itertools;

use super::{solve_staged, unbounded, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage};
use crate::backend::SolveStatus;
use crate::model::Problem;

/// Lexicographic optima for every ordering of the objectives (or only the
/// identity ordering when `all_permutations` is off).
#[derive(Debug, Clone, Copy, Default)]
pub struct Lexicographic;

impl Algorithm for Lexicographic {
    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let o = problem.num_objectives();
        let orders: Vec<Vec<usize>> = if config.all_permutations {
            (0..o).permutations(o).collect()
        } else {
            vec![(0..o).collect()]
        };
        let u = unbounded(o);
        let mut points = Vec::new();
        for order in orders {
            let stages: Vec<Stage> = order
                .iter()
                .map(|&k| Stage {
                    relative_slack: config.relative_tolerance(k),
                    ..Stage::unit(o, k)
                })
                .collect();
            match solve_staged(ctx, problem, &stages, &u, &[]) {
                Ok(Some(staged)) => points.push(staged.point),
                Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
                Err(SolveStatus::Unbounded) => return Outcome::empty(SolveStatus::Unbounded),
                Err(status) => return Outcome::filtered(status, points),
            }
        }
        Outcome::filtered(SolveStatus::Optimal, points)
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
    fn all_orderings_on_knapsack() {
        let out = run(
            &Lexicographic,
            &fixtures::k1_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.status, SolveStatus::Optimal);
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0], vec![-8.0, -8.0]]);
    }

    #[test]
    fn identity_ordering_only() {
        let cfg = AlgorithmConfig {
            all_permutations: false,
            ..Default::default()
        };
        let out = run(
            &Lexicographic,
            &fixtures::k1_min(),
            &cfg,
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0]]);
    }

    #[test]
    fn identical_objectives_collapse() {
        let out = run(
            &Lexicographic,
            &fixtures::duplicated_objective(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.points.len(), 1);
    }

    #[test]
    fn infeasible_problem() {
        let out = run(
            &Lexicographic,
            &fixtures::infeasible(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out, Outcome::empty(SolveStatus::Infeasible));
    }
}
