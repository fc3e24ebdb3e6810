use super::hull::dominated_hull_facets;
use super::{
    lexmin, solve_staged, unbounded, Algorithm, AlgorithmConfig, Outcome, SolveContext, Stage,
};
use crate::backend::simplex::{self, LinearProgram, LpOutcome};
use crate::backend::SolveStatus;
use crate::dominance::Frontier;
use crate::model::{LinearRow, Problem, RowSense};

/// Inner/outer approximation of the supported frontier. The inner set is
/// the dominated hull of the points found; the outer set is the
/// intersection of halfspaces `w·y >= min w·f0` for every weight solved.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sandwiching;

/// `min normal·y` over the outer approximation.
fn outer_minimum(normal: &[f64], halfspaces: &[(Vec<f64>, f64)]) -> f64 {
    let d = normal.len();
    let lp = LinearProgram {
        cost: normal.to_vec(),
        lower: vec![f64::NEG_INFINITY; d],
        upper: vec![f64::INFINITY; d],
        rows: halfspaces
            .iter()
            .map(|(w, v)| LinearRow::from_dense(w, RowSense::Ge, *v))
            .collect(),
    };
    match simplex::solve(&lp, None) {
        LpOutcome::Optimal { value, .. } => value,
        _ => f64::NEG_INFINITY,
    }
}

impl Algorithm for Sandwiching {
    fn minimize(
        &self,
        problem: &Problem,
        config: &AlgorithmConfig,
        ctx: &mut SolveContext<'_>,
    ) -> Outcome {
        let o = problem.num_objectives();
        let free = unbounded(o);
        let mut frontier = Frontier::new();
        let mut halfspaces: Vec<(Vec<f64>, f64)> = Vec::new();
        for k in 0..o {
            let order: Vec<usize> = std::iter::once(k)
                .chain((0..o).filter(|&j| j != k))
                .collect();
            match lexmin(ctx, problem, &order, &free) {
                Ok(Some(p)) => {
                    let mut e = vec![0.0; o];
                    e[k] = 1.0;
                    halfspaces.push((e, p.y[k]));
                    frontier.insert(p).expect("consistent dimensions");
                }
                Ok(None) => return Outcome::empty(SolveStatus::Infeasible),
                Err(status) => return Outcome::new(status, frontier.into_points()),
            }
        }

        loop {
            let facets = dominated_hull_facets(&frontier.ys());
            let widest = facets
                .into_iter()
                .map(|f| {
                    let gap = f.offset - outer_minimum(&f.normal, &halfspaces);
                    (f, gap)
                })
                .fold(None, |best: Option<(_, f64)>, (f, gap)| match best {
                    Some((_, g)) if g >= gap => best,
                    _ => Some((f, gap)),
                });
            let Some((facet, gap)) = widest else { break };
            if gap <= config.sandwich_gap {
                break;
            }
            // Lexicographic refinement lands on a vertex of the optimal face.
            let stages: Vec<Stage> = std::iter::once(Stage::new(facet.normal.clone()))
                .chain((0..o).map(|k| Stage::unit(o, k)))
                .collect();
            let staged = match solve_staged(ctx, problem, &stages, &free, &[]) {
                Ok(Some(s)) => s,
                Ok(None) => return Outcome::new(SolveStatus::OtherError, frontier.into_points()),
                Err(status) => return Outcome::new(status, frontier.into_points()),
            };
            let value = staged.values[0];
            halfspaces.push((facet.normal, value));
            if value < facet.offset - config.sandwich_gap {
                frontier
                    .insert(staged.point)
                    .expect("consistent dimensions");
            }
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
    fn lp_segment_closes_after_one_weighted_solve() {
        let out = run(
            &Sandwiching,
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
            &Sandwiching,
            &fixtures::k1_min(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![-9.0, -7.0], vec![-8.0, -8.0]]);
    }

    #[test]
    fn skips_unsupported_point() {
        let out = run(
            &Sandwiching,
            &fixtures::k4(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(ys(&out), vec![vec![0.0, 4.0], vec![4.0, 0.0]]);
        let out = run(
            &Sandwiching,
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
    fn duplicated_objective_gives_one_point() {
        let out = run(
            &Sandwiching,
            &fixtures::duplicated_objective(),
            &AlgorithmConfig::default(),
            &mut BundledSolver,
        );
        assert_eq!(out.points.len(), 1);
    }

    #[test]
    fn three_objectives() {
        let out = run(
            &Sandwiching,
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
    fn outer_minimum_of_orthant() {
        let hs = vec![(vec![1.0, 0.0], 2.0), (vec![0.0, 1.0], -1.0)];
        assert_eq!(outer_minimum(&[0.5, 0.5], &hs), 0.5);
    }
}
