use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{solve_staged, unbounded, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage};
use crate::backend::SolveStatus;
use crate::dominance::Frontier;
use crate::model::Problem;

/// Weighted sums with weights drawn uniformly from the unit simplex.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomWeighting;

/// Uniform point on the simplex by normalized exponential spacings.
pub(crate) fn sample_simplex(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    let spacings: Vec<f64> = (0..dim)
        .map(|_| {
            let uniform: f64 = 1.0 - rng.random::<f64>();
            -uniform.ln()
        })
        .collect();
    let total: f64 = spacings.iter().sum();
    if total > 0.0 {
        spacings.iter().map(|e| e / total).collect()
    } else {
        vec![1.0 / dim as f64; dim]
    }
}

impl Algorithm for RandomWeighting {
    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let o = problem.num_objectives();
        let iterations = config.solution_limit.unwrap_or(10 * o);
        if iterations == 0 {
            return Outcome::empty(SolveStatus::OtherError);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let u = unbounded(o);
        let mut frontier = Frontier::new();
        for _ in 0..iterations {
            let w = sample_simplex(&mut rng, o);
            if w.iter().any(|v| *v <= 0.0) {
                continue;
            }
            match solve_staged(ctx, problem, &[Stage::new(w)], &u, &[]) {
                Ok(Some(staged)) => {
                    frontier
                        .insert(staged.point)
                        .expect("consistent dimensions");
                }
                Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
                Err(status) => return Outcome::new(status, frontier.into_points()),
            }
        }
        Outcome::new(SolveStatus::Optimal, frontier.into_points())
    }
}
