//! Exact and representative multi-objective mixed-integer linear
//! optimization built on repeated single-objective solves.
//!
//! ```
//! use multiobj::algorithms::AlgorithmConfig;
//! use multiobj::backend::BundledSolver;
//! use multiobj::driver::MetaSolver;
//! use multiobj::oracle::fixtures;
//!
//! let driver = MetaSolver::with_builtin();
//! let result = driver
//!     .optimize(&fixtures::k1(), "epsilon-constraint", &AlgorithmConfig::default(), &mut BundledSolver)
//!     .unwrap();
//! assert_eq!(result.points.ys(), vec![vec![8.0, 8.0], vec![9.0, 7.0]]);
//! ```

pub mod algorithms;
pub mod backend;
pub mod batch;
pub mod cli;
pub mod dominance;
pub mod driver;
pub mod instances;
pub mod io;
pub mod model;
pub mod oracle;
