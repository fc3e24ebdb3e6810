use super::{
    enclosing_box, solve_staged, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage,
};
use crate::backend::SolveStatus;
use crate::dominance::Frontier;
use crate::model::Problem;

/// Rectangle in the projection onto objectives `2..o`.
#[derive(Debug, Clone, PartialEq)]
struct Rectangle {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Rectangle {
    fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| u - l)
            .product()
    }

    fn within(&self, lower: &[f64], upper: &[f64]) -> bool {
        self.lower.iter().zip(lower).all(|(a, b)| a >= b)
            && self.upper.iter().zip(upper).all(|(a, b)| a <= b)
    }

    fn split(self, axis: usize, at: f64) -> [Rectangle; 2] {
        let mut below = self.clone();
        below.upper[axis] = at;
        let mut above = self;
        above.lower[axis] = at;
        [below, above]
    }
}

/// Splits every rectangle through `y` along each axis where `y` is interior.
fn split_all(rectangles: Vec<Rectangle>, y: &[f64]) -> Vec<Rectangle> {
    let mut out = Vec::with_capacity(rectangles.len());
    for r in rectangles {
        let mut pieces = vec![r];
        for (axis, &v) in y.iter().enumerate() {
            pieces = pieces
                .into_iter()
                .flat_map(|p| {
                    if p.lower[axis] < v && v < p.upper[axis] {
                        p.split(axis, v).to_vec()
                    } else {
                        vec![p]
                    }
                })
                .collect();
        }
        out.extend(pieces);
    }
    out
}

/// Rectangle-splitting search in objectives `2..o` with a two-stage
/// epsilon-constraint subproblem (minimize `f1`, then the sum) per rectangle.
#[derive(Debug, Clone, Copy, Default)]
pub struct KirlikSayin;

impl Algorithm for KirlikSayin {
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
        let ideal_tail = ideal[1..].to_vec();
        let mut rectangles = vec![Rectangle {
            lower: ideal_tail.clone(),
            upper: upper[1..].to_vec(),
        }];
        let stages = [Stage::unit(o, 0), Stage::sum(o)];
        let mut frontier = Frontier::new();

        while frontier.len() < limit {
            let Some(index) = select(&rectangles) else {
                break;
            };
            let bound = rectangles[index].upper.clone();
            let mut u = vec![f64::INFINITY];
            u.extend(bound.iter().map(|v| v - config.epsilon));
            match solve_staged(ctx, problem, &stages, &u, &[]) {
                Ok(Some(staged)) => {
                    let tail = staged.point.y[1..].to_vec();
                    frontier
                        .insert(staged.point)
                        .expect("consistent dimensions");
                    rectangles = split_all(rectangles, &tail);
                    rectangles.retain(|r| !r.within(&tail, &bound));
                }
                Ok(None) => rectangles.retain(|r| !r.within(&ideal_tail, &bound)),
                Err(status) => return Outcome::filtered(status, frontier.into_points()),
            }
        }
        Outcome::new(SolveStatus::Optimal, frontier.into_points())
    }
}

/// Largest rectangle, first on ties.
fn select(rectangles: &[Rectangle]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, r) in rectangles.iter().enumerate() {
        let v = r.volume();
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
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
            &KirlikSayin,
            &fixtures::k3_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.status, SolveStatus::Optimal);
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
            &KirlikSayin,
            &fixtures::k1_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0], vec![-8.0, -8.0]]);
    }

    #[test]
    fn infeasible_problem() {
        let out = run(
            &KirlikSayin,
            &fixtures::infeasible(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out, Outcome::empty(SolveStatus::Infeasible));
    }

    #[test]
    fn split_produces_all_orthants() {
        let r = Rectangle {
            lower: vec![0.0, 0.0],
            upper: vec![4.0, 4.0],
        };
        let pieces = split_all(vec![r], &[1.0, 2.0]);
        assert_eq!(pieces.len(), 4);
        let area: f64 = pieces.iter().map(Rectangle::volume).sum();
        assert_eq!(area, 16.0);
    }
}
