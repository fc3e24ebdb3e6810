use super::{
    lexmin, solve_staged, unbounded, Algorithm, AlgorithmConfig, Dimension, Outcome, SolveContext,
    Stage,
};
use crate::backend::SolveStatus;
use crate::model::Problem;

/// Bi-objective epsilon-constraint sweep from the `f2`-optimal anchor
/// towards the `f1`-optimal anchor.
#[derive(Debug, Clone, Copy, Default)]
pub struct EpsilonConstraint;

impl Algorithm for EpsilonConstraint {
    fn dimension(&self) -> Dimension {
        Dimension::Exactly(2)
    }

    fn uses_epsilon(&self) -> bool {
        true
    }

    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        if problem.num_objectives() != 2 {
            return Outcome::empty(SolveStatus::OtherError);
        }
        let limit = config.solution_limit.unwrap_or(usize::MAX);
        let free = unbounded(2);
        let best_f1 = match lexmin(ctx, problem, &[0, 1], &free) {
            Ok(Some(p)) => p,
            Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
            Err(status) => return Outcome::empty(status),
        };
        let best_f2 = match lexmin(ctx, problem, &[1, 0], &free) {
            Ok(Some(p)) => p,
            Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
            Err(status) => return Outcome::empty(status),
        };

        let stages = [Stage::unit(2, 1), Stage::unit(2, 0)];
        let mut bound = best_f2.y[0];
        let mut points = Vec::new();
        while points.len() < limit && bound >= best_f1.y[0] {
            match solve_staged(ctx, problem, &stages, &[bound, f64::INFINITY], &[]) {
                Ok(Some(staged)) => {
                    bound = staged.point.y[0] - config.epsilon;
                    points.push(staged.point);
                }
                Ok(None) => break,
                Err(status) => return Outcome::filtered(status, points),
            }
        }
        Outcome::filtered(SolveStatus::Optimal, points)
    }
}
