use super::regions::{SearchRegion, UpperBoundSet};
use super::{
    enclosing_box, solve_staged, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage,
};
use crate::backend::SolveStatus;
use crate::dominance::Frontier;
use crate::model::Problem;

const TOL: f64 = 1e-9;

/// Search-zone decomposition over local upper bounds. Each zone is probed
/// by minimizing one objective with the others bounded strictly by the
/// zone, then minimizing the sum to land on an efficient point.
#[derive(Debug, Clone, Copy, Default)]
pub struct TambyVanderpooten;

impl Algorithm for TambyVanderpooten {
    fn uses_epsilon(&self) -> bool {
        true
    }

    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let o = problem.num_objectives();
        let limit = config.solution_limit.unwrap_or(usize::MAX);
        let (ideal, upper) = match enclosing_box(problem, config, ctx) {
            Ok(b) => b,
            Err(status) => return Outcome::empty(status),
        };
        let mut zones = UpperBoundSet::new(SearchRegion::new(ideal.clone(), upper));
        let mut frontier = Frontier::new();

        while frontier.len() < limit {
            let Some(id) = zones.select(SearchRegion::volume) else {
                break;
            };
            let zone = zones.get(id).expect("selected zone is live").clone();
            // Leave the widest objective free.
            let k = (0..o)
                .map(|j| (j, zone.upper[j] - ideal[j]))
                .fold((0, f64::NEG_INFINITY), |best, (j, w)| {
                    if w > best.1 {
                        (j, w)
                    } else {
                        best
                    }
                })
                .0;
            let mut u: Vec<f64> = zone.upper.iter().map(|v| v - config.epsilon).collect();
            u[k] = f64::INFINITY;
            let first = match solve_staged(ctx, problem, &[Stage::unit(o, k)], &u, &[]) {
                Ok(Some(s)) => s,
                Ok(None) => {
                    zones.remove_covered(&zone.upper);
                    continue;
                }
                Err(status) => return Outcome::filtered(status, frontier.into_points()),
            };
            let best_k = first.values[0];
            let cap = zone.upper[k] - config.epsilon;
            if best_k > cap + TOL * cap.abs().max(1.0) {
                zones.remove_covered(&zone.upper);
                continue;
            }
            let mut u2 = u.clone();
            u2[k] = best_k;
            let staged = match solve_staged(ctx, problem, &[Stage::sum(o)], &u2, &[]) {
                Ok(Some(s)) => s,
                Ok(None) => first,
                Err(status) => return Outcome::filtered(status, frontier.into_points()),
            };
            let point = staged.point;
            if frontier
                .insert(point.clone())
                .expect("consistent dimensions")
            {
                zones.insert_point(&point);
            }
            zones.remove(id);
        }
        Outcome::new(SolveStatus::Optimal, frontier.into_points())
    }
}
