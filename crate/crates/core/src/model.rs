//! Multi-objective linear and integer programs in single-sense,
//! vector-objective form.
//!
//! A [`Problem`] owns its variables, scalar affine constraint rows and a
//! [`VectorObjective`] with `o >= 2` rows. Problems are validated and
//! normalized once at construction and are immutable afterwards.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable {name}: lower bound {lower} exceeds upper bound {upper}")]
    BadBounds {
        name: String,
        lower: f64,
        upper: f64,
    },
    #[error("row {row} references variable index {index}, but there are only {count} variables")]
    BadIndex {
        row: usize,
        index: usize,
        count: usize,
    },
    #[error("objective sense is already MIN")]
    AlreadyMin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Continuous,
    Integer,
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableSpec {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub kind: VarKind,
}

impl VariableSpec {
    pub fn continuous(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            lower,
            upper,
            kind: VarKind::Continuous,
        }
    }

    pub fn integer(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            lower,
            upper,
            kind: VarKind::Integer,
        }
    }

    pub fn binary(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            lower: 0.0,
            upper: 1.0,
            kind: VarKind::Binary,
        }
    }

    pub fn is_integer(&self) -> bool {
        !matches!(self.kind, VarKind::Continuous)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

/// A scalar affine constraint `sum(coefficients[j] * x[j]) <sense> rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRow {
    pub coefficients: BTreeMap<usize, f64>,
    pub sense: RowSense,
    pub rhs: f64,
}

impl LinearRow {
    pub fn new(
        coefficients: impl IntoIterator<Item = (usize, f64)>,
        sense: RowSense,
        rhs: f64,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (j, a) in coefficients {
            *map.entry(j).or_insert(0.0) += a;
        }
        Self {
            coefficients: map,
            sense,
            rhs,
        }
    }

    /// Builds a row from a dense coefficient slice, skipping zero entries.
    pub fn from_dense(coefficients: &[f64], sense: RowSense, rhs: f64) -> Self {
        let map = coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0.0)
            .map(|(j, a)| (j, *a))
            .collect();
        Self {
            coefficients: map,
            sense,
            rhs,
        }
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coefficients.iter().map(|(j, a)| a * x[*j]).sum()
    }

    /// Signed violation of the row at `x` (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.sense {
            RowSense::Le => (lhs - self.rhs).max(0.0),
            RowSense::Ge => (self.rhs - lhs).max(0.0),
            RowSense::Eq => (lhs - self.rhs).abs(),
        }
    }

    fn normalize(&mut self) {
        self.coefficients.retain(|_, a| *a != 0.0);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveSense {
    Min,
    Max,
}

/// `f0(x) = matrix * x + offsets`, one row per objective.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorObjective {
    pub matrix: Vec<Vec<f64>>,
    pub offsets: Vec<f64>,
    pub sense: ObjectiveSense,
}

impl VectorObjective {
    pub fn new(matrix: Vec<Vec<f64>>, offsets: Vec<f64>, sense: ObjectiveSense) -> Self {
        Self {
            matrix,
            offsets,
            sense,
        }
    }

    /// Objective without constant terms.
    pub fn linear(matrix: Vec<Vec<f64>>, sense: ObjectiveSense) -> Self {
        let offsets = vec![0.0; matrix.len()];
        Self {
            matrix,
            offsets,
            sense,
        }
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    variables: Vec<VariableSpec>,
    rows: Vec<LinearRow>,
    objective: VectorObjective,
}

impl Problem {
    /// Normalizes (binary variables become integer on `[0, 1]`, zero
    /// coefficients are dropped) and validates the problem.
    pub fn new(
        mut variables: Vec<VariableSpec>,
        mut rows: Vec<LinearRow>,
        objective: VectorObjective,
    ) -> Result<Self, ModelError> {
        for v in &mut variables {
            if v.kind == VarKind::Binary {
                v.kind = VarKind::Integer;
                v.lower = v.lower.max(0.0);
                v.upper = v.upper.min(1.0);
            }
        }
        for row in &mut rows {
            row.normalize();
        }
        let problem = Self {
            variables,
            rows,
            objective,
        };
        validate_problem(&problem)?;
        Ok(problem)
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.variables
    }

    pub fn rows(&self) -> &[LinearRow] {
        &self.rows
    }

    pub fn objective(&self) -> &VectorObjective {
        &self.objective
    }

    pub fn sense(&self) -> ObjectiveSense {
        self.objective.sense
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_objectives(&self) -> usize {
        self.objective.matrix.len()
    }

    /// True when every variable is integer and every objective coefficient
    /// and offset is integral, so objective values are integers.
    pub fn has_integral_objectives(&self) -> bool {
        let integral = |v: f64| v.fract() == 0.0;
        self.objective.offsets.iter().all(|c| integral(*c))
            && self.objective.matrix.iter().all(|row| {
                row.iter()
                    .zip(&self.variables)
                    .all(|(c, v)| *c == 0.0 || (v.is_integer() && integral(*c)))
            })
    }

    /// Maximum bound, row and integrality violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (v, xi) in self.variables.iter().zip(x) {
            worst = worst.max(v.lower - xi).max(xi - v.upper);
            if v.is_integer() {
                worst = worst.max((xi - xi.round()).abs());
            }
        }
        self.rows.iter().fold(worst, |w, r| w.max(r.violation(x)))
    }

    pub fn is_feasible(&self, x: &[f64], tolerance: f64) -> bool {
        x.len() == self.num_variables() && self.max_violation(x) <= tolerance
    }
}

pub fn validate_problem(p: &Problem) -> Result<(), ModelError> {
    let n = p.variables.len();
    let o = p.objective.matrix.len();
    if o < 2 {
        return Err(ModelError::DimensionMismatch(format!(
            "a vector objective needs at least 2 rows, got {o}"
        )));
    }
    if p.objective.offsets.len() != o {
        return Err(ModelError::DimensionMismatch(format!(
            "{} objective offsets for {o} objectives",
            p.objective.offsets.len()
        )));
    }
    for (k, row) in p.objective.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(ModelError::DimensionMismatch(format!(
                "objective {k} has {} coefficients for {n} variables",
                row.len()
            )));
        }
    }
    for v in &p.variables {
        if v.lower.is_nan() || v.upper.is_nan() || v.lower > v.upper {
            return Err(ModelError::BadBounds {
                name: v.name.clone(),
                lower: v.lower,
                upper: v.upper,
            });
        }
    }
    for (i, row) in p.rows.iter().enumerate() {
        if let Some((&index, _)) = row.coefficients.iter().find(|(j, _)| **j >= n) {
            return Err(ModelError::BadIndex {
                row: i,
                index,
                count: n,
            });
        }
    }
    Ok(())
}

/// Converts a MAX problem into the equivalent MIN problem by negating the
/// objective matrix and offsets.
pub fn negate_objective(p: &Problem) -> Result<Problem, ModelError> {
    if p.objective.sense == ObjectiveSense::Min {
        return Err(ModelError::AlreadyMin);
    }
    let mut out = p.clone();
    out.objective = negated(&p.objective, ObjectiveSense::Min);
    Ok(out)
}

pub(crate) fn negated(objective: &VectorObjective, sense: ObjectiveSense) -> VectorObjective {
    VectorObjective {
        matrix: objective
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| -c).collect())
            .collect(),
        offsets: objective.offsets.iter().map(|c| -c).collect(),
        sense,
    }
}

pub fn evaluate_objective(p: &Problem, x: &[f64]) -> Result<Vec<f64>, ModelError> {
    if x.len() != p.num_variables() {
        return Err(ModelError::DimensionMismatch(format!(
            "point has {} entries for {} variables",
            x.len(),
            p.num_variables()
        )));
    }
    Ok(p.objective
        .matrix
        .iter()
        .zip(&p.objective.offsets)
        .map(|(row, offset)| row.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + offset)
        .collect())
}
