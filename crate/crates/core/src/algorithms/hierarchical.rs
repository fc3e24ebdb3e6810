use std::collections::BTreeMap;

use super::{solve_staged, unbounded, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage};
use crate::backend::SolveStatus;
use crate::model::Problem;

/// Solves priority groups in descending order, each as a weighted sum,
/// bounding every finished group by its optimum plus relative slack.
/// Returns exactly one point.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hierarchical;

impl Algorithm for Hierarchical {
    fn check_config(&self, _problem: &Problem, config: &AlgorithmConfig) -> Result<(), String> {
        if config.priorities.is_none() {
            return Err("hierarchical requires objective priorities".into());
        }
        if config.weights.is_none() {
            return Err("hierarchical requires objective weights".into());
        }
        Ok(())
    }

    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let o = problem.num_objectives();
        let (Some(priorities), Some(weights)) = (&config.priorities, &config.weights) else {
            return Outcome::empty(SolveStatus::OtherError);
        };
        let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, p) in priorities.iter().enumerate() {
            groups.entry(*p).or_default().push(k);
        }
        let stages: Vec<Stage> = groups
            .values()
            .rev()
            .map(|members| {
                let mut w = vec![0.0; o];
                for &k in members {
                    w[k] = weights[k];
                }
                let slack = members
                    .iter()
                    .map(|&k| config.relative_tolerance(k))
                    .fold(0.0, f64::max);
                Stage {
                    weights: w,
                    relative_slack: slack,
                }
            })
            .collect();
        match solve_staged(ctx, problem, &stages, &unbounded(o), &[]) {
            Ok(Some(staged)) => Outcome::new(SolveStatus::Optimal, vec![staged.point]),
            Ok(None) => Outcome::empty(SolveStatus::Infeasible),
            Err(status) => Outcome::empty(status),
        }
    }
}
