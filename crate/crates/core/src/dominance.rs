//! Componentwise dominance and mutually nondominated point sets, all in
//! MIN convention.

use std::cmp::Ordering;

use thiserror::Error;

/// Per-component tolerance under which two objective vectors are treated as
/// the same nondominated point.
pub const DUPLICATE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: expected length {expected}, got {found}")]
pub struct DimensionMismatch {
    pub expected: usize,
    pub found: usize,
}

/// A decision vector paired with its objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl SolutionPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        Self { x, y }
    }
}

/// `a` dominates `b` iff `a <= b` componentwise and `a != b`. No tolerance.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool, DimensionMismatch> {
    check_len(a.len(), b.len())?;
    Ok(dominates_unchecked(a, b))
}

pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (ai, bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strict = true;
        }
    }
    strict
}

pub fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(u, v)| (u - v).abs() <= DUPLICATE_TOLERANCE)
}

/// Lexicographic order on objective vectors.
pub fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (u, v) in a.iter().zip(b) {
        match u.total_cmp(v) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

fn check_len(expected: usize, found: usize) -> Result<(), DimensionMismatch> {
    if expected == found {
        Ok(())
    } else {
        Err(DimensionMismatch { expected, found })
    }
}

/// Mutually nondominated, deduplicated points sorted ascending by `y`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Frontier {
    points: Vec<SolutionPoint>,
}

impl Frontier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn points(&self) -> &[SolutionPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<SolutionPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ys(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.y.clone()).collect()
    }

    pub fn contains_y(&self, y: &[f64]) -> bool {
        self.points.iter().any(|p| same_point(&p.y, y))
    }

    /// Applies `f` to every point and re-sorts. `f` must preserve mutual
    /// incomparability (negation and translation do).
    pub(crate) fn map_points(self, f: impl FnMut(SolutionPoint) -> SolutionPoint) -> Self {
        let mut points: Vec<SolutionPoint> = self.points.into_iter().map(f).collect();
        points.sort_by(|a, b| lex_cmp(&a.y, &b.y));
        Self { points }
    }

    /// Inserts `p` unless it is dominated by or equal to a member. Returns
    /// whether the frontier changed.
    pub fn insert(&mut self, p: SolutionPoint) -> Result<bool, DimensionMismatch> {
        if let Some(first) = self.points.first() {
            check_len(first.y.len(), p.y.len())?;
        }
        if self
            .points
            .iter()
            .any(|q| same_point(&q.y, &p.y) || dominates_unchecked(&q.y, &p.y))
        {
            return Ok(false);
        }
        self.points.retain(|q| !dominates_unchecked(&p.y, &q.y));
        let at = self
            .points
            .partition_point(|q| lex_cmp(&q.y, &p.y) == Ordering::Less);
        self.points.insert(at, p);
        Ok(true)
    }
}

/// Keeps the points whose `y` is dominated by no other input. Among equal
/// `y` (within [`DUPLICATE_TOLERANCE`]) the first by input order is kept.
pub fn filter_nondominated(points: Vec<SolutionPoint>) -> Result<Frontier, DimensionMismatch> {
    let Some(first) = points.first() else {
        return Ok(Frontier::new());
    };
    let dim = first.y.len();
    for p in &points {
        check_len(dim, p.y.len())?;
    }
    // A dominator is lexicographically smaller than what it dominates, so a
    // single sweep over the sorted input only needs the kept set.
    let mut indexed: Vec<(usize, SolutionPoint)> = points.into_iter().enumerate().collect();
    indexed.sort_by(|a, b| lex_cmp(&a.1.y, &b.1.y));
    let mut kept: Vec<(usize, SolutionPoint)> = Vec::new();
    'outer: for (index, p) in indexed {
        for (kept_index, q) in kept.iter_mut() {
            if same_point(&q.y, &p.y) {
                if index < *kept_index {
                    *kept_index = index;
                    *q = p;
                }
                continue 'outer;
            }
            if dominates_unchecked(&q.y, &p.y) {
                continue 'outer;
            }
        }
        kept.push((index, p));
    }
    let mut points: Vec<SolutionPoint> = kept.into_iter().map(|(_, p)| p).collect();
    points.sort_by(|a, b| lex_cmp(&a.y, &b.y));
    Ok(Frontier { points })
}

/// Functional form of [`Frontier::insert`].
pub fn merge_into(
    mut frontier: Frontier,
    p: SolutionPoint,
) -> Result<(Frontier, bool), DimensionMismatch> {
    let changed = frontier.insert(p)?;
    Ok((frontier, changed))
}
