//! Exhaustive decision and optimization for small instances.
//!
//! The decision search fixes the first edge's label to 1 (durations only
//! depend on label differences modulo Δ) and enumerates the remaining
//! `Δ^(m-1)` labelings in lexicographic order. Optimization binary-searches,
//! for every distance `d`, the least feasible numerator `k` of `k/d`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::Rational;
use crate::temporal::{evaluate_stretch_with, meets_bounds, BoundMatrix, Labeling};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget exceeded: {needed} candidates needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("witness failed re-verification (stretch {stretch} > {alpha})")]
    VerificationFailed { stretch: Rational, alpha: Rational },
}

/// `Δ^(m-1)` leaves, or an error when over `budget`.
pub fn search_space(m: usize, delta: u32, budget: u64) -> Result<u64, SearchError> {
    let exp = m.saturating_sub(1) as u32;
    let needed = u128::from(delta).checked_pow(exp).unwrap_or(u128::MAX);
    if needed > u128::from(budget) {
        return Err(SearchError::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Sorted distinct `{k/d : 1 ≤ d ≤ diam, d ≤ k ≤ Δ·d}`.
pub fn candidate_alphas(diam: u32, delta: u32) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for d in 1..=i64::from(diam.max(1)) {
        for k in d..=i64::from(delta) * d {
            set.insert(Rational::new(k, d));
        }
    }
    set.into_iter().collect()
}

fn decode(idx: u64, m: usize, delta: u32) -> Vec<u32> {
    let mut labels = vec![1u32; m];
    let mut rest = idx;
    let d = u64::from(delta);
    for slot in labels.iter_mut().skip(1).rev() {
        *slot = (rest % d) as u32 + 1;
        rest /= d;
    }
    labels
}

/// A labeling of stretch at most `alpha`, if one exists.
///
/// The witness is the lexicographically first one with first label 1,
/// independent of the number of worker threads.
pub fn decide(g: &Graph, delta: u32, alpha: Rational, budget: u64) -> Result<Option<Labeling>, SearchError> {
    if delta == 0 {
        return Err(SearchError::ZeroPeriod);
    }
    let total = search_space(g.m(), delta, budget)?;
    if alpha < Rational::from_integer(1) {
        return Ok(None);
    }
    let dist = g.distance_matrix();
    let bounds = BoundMatrix::new(&dist, alpha);
    let m = g.m();
    let found = (0..total).into_par_iter().find_map_first(|idx| {
        let lab = Labeling::new(delta, decode(idx, m, delta)).expect("labels in range");
        meets_bounds(g, &lab, &bounds).then_some(lab)
    });
    if let Some(lab) = &found {
        let stretch = evaluate_stretch_with(g, &dist, lab).stretch;
        if stretch > alpha {
            return Err(SearchError::VerificationFailed { stretch, alpha });
        }
    }
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub alpha: Rational,
    pub witness: Labeling,
    /// Number of distinct decision queries issued.
    pub oracle_calls: usize,
}

/// Minimum achievable stretch with a witness.
pub fn optimize(g: &Graph, delta: u32, budget: u64) -> Result<Optimum, SearchError> {
    if delta == 0 {
        return Err(SearchError::ZeroPeriod);
    }
    search_space(g.m(), delta, budget)?;
    let diam = g.distance_matrix().diameter();
    let mut cache: HashMap<Rational, Option<Labeling>> = HashMap::new();
    let mut query = |alpha: Rational| -> Result<bool, SearchError> {
        if let Some(hit) = cache.get(&alpha) {
            return Ok(hit.is_some());
        }
        let res = decide(g, delta, alpha, budget)?;
        let ok = res.is_some();
        cache.insert(alpha, res);
        Ok(ok)
    };

    let mut best: Option<Rational> = None;
    for d in 1..=i64::from(diam.max(1)) {
        // invariant: k = hi is feasible (α = Δ always is)
        let (mut lo, mut hi) = (d, i64::from(delta) * d);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if query(Rational::new(mid, d))? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let cand = Rational::new(hi, d);
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    let alpha = best.expect("at least one distance class");
    query(alpha)?;
    let oracle_calls = cache.len();
    let witness = cache.remove(&alpha).flatten().expect("optimum is feasible");
    Ok(Optimum { alpha, witness, oracle_calls })
}
