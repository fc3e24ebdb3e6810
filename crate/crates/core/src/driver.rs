//! Algorithm registry and the `optimize` entry point: sense conversion,
//! dispatch, limit enforcement and result ordering.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algorithms::{
    Algorithm, AlgorithmConfig, Chalmet, Dichotomy, DominguezRios, EpsilonConstraint, Hierarchical,
    KirlikSayin, Lexicographic, RandomWeighting, Sandwiching, SolveContext, TambyVanderpooten,
};
use crate::backend::{SolveStatus, Solver};
use crate::dominance::{filter_nondominated, Frontier, SolutionPoint};
use crate::model::{negate_objective, ObjectiveSense, Problem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("unknown algorithm `{name}`; valid names: {}", known.join(", "))]
    UnknownAlgorithm { name: String, known: Vec<String> },
    #[error("algorithm `{algorithm}` does not support {objectives} objectives")]
    UnsupportedDimension {
        algorithm: String,
        objectives: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("algorithm `{0}` is already registered")]
    DuplicateIdentifier(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SolveStats {
    pub subproblem_count: usize,
    pub wall_time: Duration,
}

/// Final answer of one `optimize` call, with `y` in the problem's own sense
/// and points sorted ascending by `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultSet {
    pub status: SolveStatus,
    pub points: Frontier,
    pub stats: SolveStats,
}

impl ResultSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Name to implementation registry. Registration happens up front; every
/// `optimize` call only reads it.
#[derive(Clone, Default)]
pub struct MetaSolver {
    registry: BTreeMap<String, Arc<dyn Algorithm>>,
}

impl std::fmt::Debug for MetaSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetaSolver")
            .field("algorithms", &self.algorithm_names())
            .finish()
    }
}

impl MetaSolver {
    /// An empty registry.
    pub fn new() -> Self {
        Self::default()
    }

    /// A registry holding every bundled algorithm.
    pub fn with_builtin() -> Self {
        let mut solver = Self::new();
        let builtin: [(&str, Arc<dyn Algorithm>); 10] = [
            ("chalmet", Arc::new(Chalmet)),
            ("dichotomy", Arc::new(Dichotomy)),
            ("dominguez-rios", Arc::new(DominguezRios)),
            ("epsilon-constraint", Arc::new(EpsilonConstraint)),
            ("hierarchical", Arc::new(Hierarchical)),
            ("kirlik-sayin", Arc::new(KirlikSayin)),
            ("lexicographic", Arc::new(Lexicographic)),
            ("random-weighting", Arc::new(RandomWeighting)),
            ("sandwiching", Arc::new(Sandwiching)),
            ("tamby-vanderpooten", Arc::new(TambyVanderpooten)),
        ];
        for (name, algorithm) in builtin {
            solver
                .register_algorithm(name, algorithm)
                .expect("builtin names are distinct");
        }
        solver
    }

    pub fn register_algorithm(
        &mut self,
        name: impl Into<String>,
        algorithm: Arc<dyn Algorithm>,
    ) -> Result<(), DriverError> {
        let name = name.into();
        if self.registry.contains_key(&name) {
            return Err(DriverError::DuplicateIdentifier(name));
        }
        self.registry.insert(name, algorithm);
        Ok(())
    }

    /// Registered names in ascending order.
    pub fn algorithm_names(&self) -> Vec<String> {
        self.registry.keys().cloned().collect()
    }

    pub fn algorithm(&self, name: &str) -> Result<&Arc<dyn Algorithm>, DriverError> {
        self.registry
            .get(name)
            .ok_or_else(|| DriverError::UnknownAlgorithm {
                name: name.to_string(),
                known: self.algorithm_names(),
            })
    }

    pub fn optimize(
        &self,
        problem: &Problem,
        name: &str,
        config: &AlgorithmConfig,
        solver: &mut dyn Solver,
    ) -> Result<ResultSet, DriverError> {
        let algorithm = self.algorithm(name)?;
        let o = problem.num_objectives();
        if !algorithm.dimension().accepts(o) {
            return Err(DriverError::UnsupportedDimension {
                algorithm: name.to_string(),
                objectives: o,
            });
        }
        config.validate(o).map_err(DriverError::InvalidConfig)?;
        algorithm
            .check_config(problem, config)
            .map_err(DriverError::InvalidConfig)?;

        let started = Instant::now();
        let max = problem.sense() == ObjectiveSense::Max;
        let converted;
        let min_problem = if max {
            converted = negate_objective(problem).expect("sense is MAX");
            &converted
        } else {
            problem
        };
        let mut ctx = SolveContext::new(solver, config.time_limit);
        let outcome = algorithm.minimize(min_problem, config, &mut ctx);
        let subproblem_count = ctx.subproblem_count();

        let mut points = filter_nondominated(outcome.points).map_err(|e| {
            DriverError::InvalidConfig(format!("algorithm returned inconsistent points: {e}"))
        })?;
        if max {
            points = points
                .map_points(|p| SolutionPoint::new(p.x, p.y.into_iter().map(|v| -v).collect()));
        }
        Ok(ResultSet {
            status: outcome.status,
            points,
            stats: SolveStats {
                subproblem_count,
                wall_time: started.elapsed(),
            },
        })
    }
}
