use super::{
    solve_staged, strict_bounds, Algorithm, AlgorithmConfig, Dimension, Outcome, SolveContext,
    Stage,
};
use crate::backend::SolveStatus;
use crate::model::Problem;

/// Bi-objective box splitting: minimize `f1 + f2` strictly inside each
/// upper-bound pair and split the box at every point found.
#[derive(Debug, Clone, Copy, Default)]
pub struct Chalmet;

impl Algorithm for Chalmet {
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
        let sum = [Stage::sum(2)];
        let mut work = vec![[f64::INFINITY, f64::INFINITY]];
        let mut points = Vec::new();
        let mut first = true;
        while let Some(u) = work.pop() {
            if points.len() >= limit {
                break;
            }
            match solve_staged(ctx, problem, &sum, &strict_bounds(&u, config.epsilon), &[]) {
                Ok(Some(staged)) => {
                    let y = &staged.point.y;
                    work.push([u[0], y[1]]);
                    work.push([y[0], u[1]]);
                    points.push(staged.point);
                }
                Ok(None) if first => return Outcome::empty(SolveStatus::Infeasible),
                Ok(None) => {}
                Err(status) => return Outcome::filtered(status, points),
            }
            first = false;
        }
        Outcome::filtered(SolveStatus::Optimal, points)
    }
}
