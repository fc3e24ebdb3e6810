//! Random multi-objective binary knapsack instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{LinearRow, ObjectiveSense, Problem, RowSense, VariableSpec, VectorObjective};

/// Integer profits and weights drawn uniformly from `1..=20`, capacity half
/// the total weight (rounded down), maximized.
pub fn random_knapsack<R: Rng + ?Sized>(rng: &mut R, items: usize, objectives: usize) -> Problem {
    let matrix: Vec<Vec<f64>> = (0..objectives)
        .map(|_| {
            (0..items)
                .map(|_| f64::from(rng.random_range(1..=20u8)))
                .collect()
        })
        .collect();
    let weights: Vec<f64> = (0..items)
        .map(|_| f64::from(rng.random_range(1..=20u8)))
        .collect();
    let capacity = (weights.iter().sum::<f64>() / 2.0).floor();
    let vars = (1..=items)
        .map(|i| VariableSpec::binary(format!("x{i}")))
        .collect();
    Problem::new(
        vars,
        vec![LinearRow::from_dense(&weights, RowSense::Le, capacity)],
        VectorObjective::linear(matrix, ObjectiveSense::Max),
    )
    .expect("generated knapsack is valid")
}

pub fn seeded_knapsack(seed: u64, items: usize, objectives: usize) -> Problem {
    random_knapsack(&mut ChaCha8Rng::seed_from_u64(seed), items, objectives)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_ranges() {
        let p = seeded_knapsack(7, 9, 3);
        assert_eq!((p.num_variables(), p.num_objectives()), (9, 3));
        assert_eq!(p.sense(), ObjectiveSense::Max);
        let row = &p.rows()[0];
        let total: f64 = row.coefficients.values().sum();
        assert_eq!(row.rhs, (total / 2.0).floor());
        for c in p
            .objective()
            .matrix
            .iter()
            .flatten()
            .chain(row.coefficients.values())
        {
            assert!((1.0..=20.0).contains(c) && c.fract() == 0.0);
        }
        assert_eq!(seeded_knapsack(7, 9, 3), p);
        assert_ne!(seeded_knapsack(8, 9, 3), p);
    }
}
