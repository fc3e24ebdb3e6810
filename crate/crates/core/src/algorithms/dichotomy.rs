use super::{
    lexmin, solve_staged, unbounded, Algorithm, AlgorithmConfig, Dimension, Outcome, SolveContext,
    Stage,
};
use crate::backend::SolveStatus;
use crate::dominance::{same_point, SolutionPoint};
use crate::model::Problem;

const IMPROVEMENT_TOL: f64 = 1e-9;

/// Bi-objective weighted-sum dichotomy between adjacent supported points.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dichotomy;

impl Algorithm for Dichotomy {
    fn dimension(&self) -> Dimension {
        Dimension::Exactly(2)
    }

    fn minimize(
        &self,
        problem: &Problem,
        _config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        if problem.num_objectives() != 2 {
            return Outcome::empty(SolveStatus::OtherError);
        }
        let u = unbounded(2);
        let left = match lexmin(ctx, problem, &[0, 1], &u) {
            Ok(Some(p)) => p,
            Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
            Err(status) => return Outcome::empty(status),
        };
        let right = match lexmin(ctx, problem, &[1, 0], &u) {
            Ok(Some(p)) => p,
            Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
            Err(status) => return Outcome::filtered(status, vec![left]),
        };
        if same_point(&left.y, &right.y) {
            return Outcome::new(SolveStatus::Optimal, vec![left]);
        }

        let mut found: Vec<SolutionPoint> = vec![left.clone(), right.clone()];
        let mut pending = vec![(left, right)];
        while let Some((a, b)) = pending.pop() {
            let w = vec![a.y[1] - b.y[1], b.y[0] - a.y[0]];
            let level = w[0] * a.y[0] + w[1] * a.y[1];
            // The second stage picks the endpoint of the optimal face.
            let stages = [Stage::new(w), Stage::unit(2, 0)];
            let staged = match solve_staged(ctx, problem, &stages, &u, &[]) {
                Ok(Some(s)) => s,
                Ok(None) => continue,
                Err(status) => return Outcome::filtered(status, found),
            };
            if staged.values[0] < level - IMPROVEMENT_TOL * level.abs().max(1.0) {
                let c = staged.point;
                found.push(c.clone());
                pending.push((c.clone(), b));
                pending.push((a, c));
            }
        }
        Outcome::filtered(SolveStatus::Optimal, found)
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
    fn lp_segment_has_two_extremes() {
        let out = run(
            &Dichotomy,
            &fixtures::l1(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.status, SolveStatus::Optimal);
        assert_eq!(ys(&out), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn knapsack_supported_points() {
        let out = run(
            &Dichotomy,
            &fixtures::k1_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0], vec![-8.0, -8.0]]);
    }

    #[test]
    fn skips_unsupported_point() {
        let out = run(
            &Dichotomy,
            &fixtures::k4(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![0.0, 4.0], vec![4.0, 0.0]]);
    }

    #[test]
    fn finds_supported_middle_point() {
        let out = run(
            &Dichotomy,
            &fixtures::k4_convex(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(
            ys(&out),
            vec![vec![0.0, 4.0], vec![1.0, 1.0], vec![4.0, 0.0]]
        );
    }

    #[test]
    fn rejects_three_objectives() {
        assert!(!Dichotomy.dimension().accepts(3));
        let out = run(
            &Dichotomy,
            &fixtures::k3_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.status, SolveStatus::OtherError);
    }
}
