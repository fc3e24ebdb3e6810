//! Best-first branch-and-bound over simplex relaxations.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::simplex::{self, LinearProgram, LpOutcome};
use super::{ScalarResult, ScalarSubproblem, SolveStatus};

pub const INTEGRALITY_TOL: f64 = 1e-6;

struct Node {
    bound: f64,
    seq: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    x: Vec<f64>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // BinaryHeap is a max-heap: smallest bound first, then oldest node.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

fn prune_tolerance(incumbent: f64) -> f64 {
    1e-9 * incumbent.abs().max(1.0)
}

/// Most fractional integer variable, lowest index on ties.
fn branching_variable(x: &[f64], integer: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, v) in x.iter().enumerate() {
        if !integer[j] {
            continue;
        }
        let frac = (v - v.floor()).min(v.ceil() - v);
        if frac > INTEGRALITY_TOL && best.is_none_or(|(_, f)| frac > f) {
            best = Some((j, frac));
        }
    }
    best.map(|(j, _)| j)
}

pub(super) fn solve(sub: &ScalarSubproblem<'_>, deadline: Option<Instant>) -> ScalarResult {
    let vars = sub.base().variables();
    let integer: Vec<bool> = vars.iter().map(|v| v.is_integer()).collect();
    let mut lp: LinearProgram = sub.relaxation();
    // Integer bounds can be tightened to the lattice up front.
    for (j, v) in vars.iter().enumerate() {
        if integer[j] {
            lp.lower[j] = (v.lower - INTEGRALITY_TOL).ceil();
            lp.upper[j] = (v.upper + INTEGRALITY_TOL).floor();
        }
    }

    let mut seq = 0;
    let mut heap = BinaryHeap::new();
    let mut incumbent: Option<(Vec<f64>, f64)> = None;

    let mut evaluate = |lp: &LinearProgram,
                        heap: &mut BinaryHeap<Node>,
                        incumbent: &mut Option<(Vec<f64>, f64)>|
     -> Result<(), SolveStatus> {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(SolveStatus::TimeLimit);
        }
        match simplex::solve(lp, deadline) {
            LpOutcome::Optimal { x, value } => {
                if let Some((_, best)) = incumbent {
                    if value >= *best - prune_tolerance(*best) {
                        return Ok(());
                    }
                }
                if branching_variable(&x, &integer).is_none() {
                    let x = snap(x, &integer, &lp.lower, &lp.upper);
                    let value = lp.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
                    *incumbent = Some((x, value));
                } else {
                    heap.push(Node {
                        bound: value,
                        seq,
                        lower: lp.lower.clone(),
                        upper: lp.upper.clone(),
                        x,
                    });
                    seq += 1;
                }
                Ok(())
            }
            LpOutcome::Infeasible => Ok(()),
            LpOutcome::Unbounded => Err(SolveStatus::Unbounded),
            LpOutcome::TimeLimit => Err(SolveStatus::TimeLimit),
            LpOutcome::Failed => Err(SolveStatus::OtherError),
        }
    };

    if let Err(status) = evaluate(&lp, &mut heap, &mut incumbent) {
        return ScalarResult::with_status(status);
    }
    while let Some(node) = heap.pop() {
        if let Some((_, best)) = &incumbent {
            if node.bound >= *best - prune_tolerance(*best) {
                continue;
            }
        }
        let j = branching_variable(&node.x, &integer).expect("queued nodes are fractional");
        let v = node.x[j];
        lp.lower.clone_from(&node.lower);
        lp.upper.clone_from(&node.upper);
        lp.upper[j] = v.floor();
        if let Err(status) = evaluate(&lp, &mut heap, &mut incumbent) {
            return ScalarResult::with_status(status);
        }
        lp.upper[j] = node.upper[j];
        lp.lower[j] = v.ceil();
        if let Err(status) = evaluate(&lp, &mut heap, &mut incumbent) {
            return ScalarResult::with_status(status);
        }
    }

    match incumbent {
        Some((x, _)) => {
            let value = sub.value_at(&x);
            ScalarResult::optimal(x, value)
        }
        None => ScalarResult::with_status(SolveStatus::Infeasible),
    }
}

/// Rounds integer coordinates and clamps to bounds.
fn snap(mut x: Vec<f64>, integer: &[bool], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    for (j, v) in x.iter_mut().enumerate() {
        if integer[j] {
            *v = v.round();
        }
        *v = v.clamp(lower[j], upper[j]);
        if *v == 0.0 {
            *v = 0.0;
        }
    }
    x
}
