//! Local upper bound bookkeeping for search-region decomposition.
//!
//! The unexplored part of objective space is the union of the open zones
//! `{z : z < upper}` over all live regions. Inserting a point `y` replaces
//! every region with `y < upper` by its children `(y_j, upper_{-j})`;
//! children whose zone is contained in another zone are dropped.

use std::collections::BTreeMap;

use crate::dominance::SolutionPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchRegion {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// For each objective, the point that fixed that upper bound component.
    pub defining_points: BTreeMap<usize, SolutionPoint>,
}

impl SearchRegion {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self {
            lower,
            upper,
            defining_points: BTreeMap::new(),
        }
    }

    /// Volume of `[lower, upper]`, `+inf` when any side is unbounded.
    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| u - l)
            .product()
    }

    fn strictly_above(&self, y: &[f64]) -> bool {
        y.iter().zip(&self.upper).all(|(a, b)| a < b)
    }

    fn covered_by(&self, other: &SearchRegion) -> bool {
        self.upper.iter().zip(&other.upper).all(|(a, b)| a <= b)
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct UpperBoundSet {
    regions: BTreeMap<usize, SearchRegion>,
    next_id: usize,
}

impl UpperBoundSet {
    pub fn new(initial: SearchRegion) -> Self {
        let mut set = Self::default();
        set.push(initial);
        set
    }

    fn push(&mut self, region: SearchRegion) -> usize {
        let id = self.next_id;
        self.regions.insert(id, region);
        self.next_id += 1;
        id
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn get(&self, id: usize) -> Option<&SearchRegion> {
        self.regions.get(&id)
    }

    #[cfg(test)]
    pub fn iter(&self) -> impl Iterator<Item = (usize, &SearchRegion)> {
        self.regions.iter().map(|(id, r)| (*id, r))
    }

    /// Region maximizing `score`, lowest id on ties.
    pub fn select(&self, score: impl Fn(&SearchRegion) -> f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (id, r) in &self.regions {
            let s = score(r);
            if best.is_none_or(|(_, b)| s > b) {
                best = Some((*id, s));
            }
        }
        best.map(|(id, _)| id)
    }

    /// Drops every region whose zone lies inside `{z < upper}`.
    pub fn remove_covered(&mut self, upper: &[f64]) {
        self.regions
            .retain(|_, r| !r.upper.iter().zip(upper).all(|(a, b)| a <= b));
    }

    pub fn remove(&mut self, id: usize) {
        self.regions.remove(&id);
    }

    /// Splits all regions strictly above `point.y`; returns the ids of the
    /// regions created.
    pub fn insert_point(&mut self, point: &SolutionPoint) -> Vec<usize> {
        let y = &point.y;
        let hit: Vec<usize> = self
            .regions
            .iter()
            .filter(|(_, r)| r.strictly_above(y))
            .map(|(id, _)| *id)
            .collect();
        let mut children = Vec::new();
        for id in hit {
            let parent = self.regions.remove(&id).expect("hit ids are live");
            for (j, &yj) in y.iter().enumerate() {
                // Nothing feasible lies below the lower bound.
                if yj <= parent.lower[j] {
                    continue;
                }
                let mut child = parent.clone();
                child.upper[j] = yj;
                child.defining_points.insert(j, point.clone());
                children.push(child);
            }
        }
        let mut kept: Vec<SearchRegion> = Vec::new();
        for (i, c) in children.iter().enumerate() {
            let redundant = self.regions.values().any(|r| c.covered_by(r))
                || children
                    .iter()
                    .enumerate()
                    .any(|(k, d)| k != i && c.covered_by(d) && (!d.covered_by(c) || k < i));
            if !redundant {
                kept.push(c.clone());
            }
        }
        kept.into_iter().map(|c| self.push(c)).collect()
    }
}
