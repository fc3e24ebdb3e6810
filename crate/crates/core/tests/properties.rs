//! Randomized agreement between algorithms, the enumeration oracle and the
//! instance format.

use proptest::prelude::*;

use multiobj::algorithms::AlgorithmConfig;
use multiobj::backend::BundledSolver;
use multiobj::driver::MetaSolver;
use multiobj::instances::seeded_knapsack;
use multiobj::io::{parse_instance, serialize_instance};
use multiobj::model::{
    LinearRow, ObjectiveSense, Problem, RowSense, VariableSpec, VectorObjective,
};
use multiobj::oracle::{enumerate_frontier, enumerate_supported};

fn negated(ys: Vec<Vec<f64>>, sense: ObjectiveSense) -> Vec<Vec<f64>> {
    let mut ys: Vec<Vec<f64>> = match sense {
        ObjectiveSense::Max => ys
            .into_iter()
            .map(|y| y.into_iter().map(|v| -v).collect())
            .collect(),
        ObjectiveSense::Min => ys,
    };
    ys.sort_by(|a, b| multiobj::dominance::lex_cmp(a, b));
    ys
}

/// General bounded-integer problems: mixed-sign objectives, `{0,1,2}`
/// variables, one or two rows of either direction.
fn integer_problem() -> impl Strategy<Value = Problem> {
    (2usize..4, 2usize..6).prop_flat_map(|(o, n)| {
        (
            proptest::collection::vec(proptest::collection::vec(-6i32..7, n), o),
            proptest::collection::vec(
                (
                    proptest::collection::vec(-3i32..6, n),
                    0i32..10,
                    any::<bool>(),
                ),
                1..3,
            ),
        )
            .prop_map(move |(matrix, rows)| {
                let vars = (0..n)
                    .map(|j| VariableSpec::integer(format!("z{j}"), 0.0, 2.0))
                    .collect();
                let rows = rows
                    .into_iter()
                    .map(|(a, rhs, le)| {
                        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
                        let sense = if le { RowSense::Le } else { RowSense::Ge };
                        let rhs = if le { f64::from(rhs) } else { -f64::from(rhs) };
                        LinearRow::from_dense(&a, sense, rhs)
                    })
                    .collect();
                let matrix = matrix
                    .into_iter()
                    .map(|r| r.into_iter().map(f64::from).collect())
                    .collect();
                Problem::new(
                    vars,
                    rows,
                    VectorObjective::linear(matrix, ObjectiveSense::Min),
                )
                .unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complete_algorithms_match_enumeration(p in integer_problem()) {
        let driver = MetaSolver::with_builtin();
        let expected = enumerate_frontier(&p).unwrap().ys();
        let mut names = vec!["kirlik-sayin", "tamby-vanderpooten", "dominguez-rios"];
        if p.num_objectives() == 2 {
            names.extend(["chalmet", "epsilon-constraint"]);
        }
        for name in names {
            let r = driver.optimize(&p, name, &AlgorithmConfig::default(), &mut BundledSolver).unwrap();
            prop_assert_eq!(r.points.ys(), expected.clone(), "{}", name);
        }
    }

    #[test]
    fn supported_algorithms_match_enumeration(p in integer_problem()) {
        let driver = MetaSolver::with_builtin();
        let expected = enumerate_supported(&p).unwrap().ys();
        let mut names = vec!["sandwiching"];
        if p.num_objectives() == 2 {
            names.push("dichotomy");
        }
        for name in names {
            let r = driver.optimize(&p, name, &AlgorithmConfig::default(), &mut BundledSolver).unwrap();
            prop_assert_eq!(r.points.ys(), expected.clone(), "{}", name);
        }
    }

    #[test]
    fn instance_round_trip_preserves_frontiers(seed in 0u64..1000, n in 2usize..8, o in 2usize..4) {
        let p = seeded_knapsack(seed, n, o);
        let q = parse_instance(&serialize_instance("rt", &p)).unwrap();
        prop_assert_eq!(&q, &p);
        let driver = MetaSolver::with_builtin();
        let expected = negated(enumerate_frontier(&p).unwrap().ys(), p.sense());
        for name in driver.algorithm_names() {
            if o > 2 && matches!(name.as_str(), "chalmet" | "dichotomy" | "epsilon-constraint") {
                continue;
            }
            let cfg = AlgorithmConfig {
                priorities: Some((0..o as i64).collect()),
                weights: Some(vec![1.0; o]),
                ..AlgorithmConfig::default()
            };
            let a = driver.optimize(&p, &name, &cfg, &mut BundledSolver).unwrap();
            let b = driver.optimize(&q, &name, &cfg, &mut BundledSolver).unwrap();
            prop_assert_eq!(&a.points, &b.points, "{}", &name);
            for y in a.points.ys() {
                prop_assert!(expected.contains(&y), "{} returned {:?}", name, y);
            }
        }
    }

    #[test]
    fn raising_solution_limit_keeps_points(seed in 0u64..1000, n in 3usize..9, o in 2usize..4, limit in 1usize..5) {
        let p = seeded_knapsack(seed, n, o);
        let driver = MetaSolver::with_builtin();
        let mut names = vec!["kirlik-sayin", "tamby-vanderpooten", "dominguez-rios", "random-weighting"];
        if o == 2 {
            names.extend(["chalmet", "epsilon-constraint"]);
        }
        for name in names {
            let run = |k: usize| {
                let cfg = AlgorithmConfig { solution_limit: Some(k), ..AlgorithmConfig::default() };
                driver.optimize(&p, name, &cfg, &mut BundledSolver).unwrap().points.ys()
            };
            let smaller = run(limit);
            let larger = run(limit + 1);
            for y in &smaller {
                prop_assert!(larger.contains(y), "{} dropped {:?} when the limit grew", name, y);
            }
        }
    }
}
