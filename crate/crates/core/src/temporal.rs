//! Δ-periodic labelings, fastest temporal paths and stretch evaluation.
//!
//! An edge with label `l` is available at every time `l + iΔ`, `i ≥ 0`.
//! A temporal path traverses its edges at strictly increasing times and its
//! duration is `last time - first time + 1`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph};
use crate::rational::{Rational, RationalJson};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TemporalError {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("label {label} out of range [1, {delta}]")]
    LabelOutOfRange { label: u32, delta: u32 },
    #[error("labeling has {got} labels but the graph has {expected} edges")]
    WrongLength { got: usize, expected: usize },
    #[error("empty label sequence")]
    EmptyPath,
    #[error("duration from a vertex to itself is undefined")]
    SameEndpoints,
}

/// Total map from edge index to a label in `[1, Δ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    delta: u32,
    labels: Vec<u32>,
}

impl Labeling {
    pub fn new(delta: u32, labels: Vec<u32>) -> Result<Self, TemporalError> {
        if delta == 0 {
            return Err(TemporalError::ZeroPeriod);
        }
        if let Some(&label) = labels.iter().find(|&&l| l == 0 || l > delta) {
            return Err(TemporalError::LabelOutOfRange { label, delta });
        }
        Ok(Self { delta, labels })
    }

    /// Like [`Labeling::new`] but also checks the length against `g`.
    pub fn for_graph(g: &Graph, delta: u32, labels: Vec<u32>) -> Result<Self, TemporalError> {
        if labels.len() != g.m() {
            return Err(TemporalError::WrongLength { got: labels.len(), expected: g.m() });
        }
        Self::new(delta, labels)
    }

    pub fn constant(g: &Graph, delta: u32, label: u32) -> Self {
        Self::new(delta, vec![label; g.m()]).expect("constant label in range")
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, edge: usize) -> u32 {
        self.labels[edge]
    }

    pub fn set(&mut self, edge: usize, label: u32) {
        assert!(label >= 1 && label <= self.delta, "label {label} out of range");
        self.labels[edge] = label;
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of edges on which the two labelings differ.
    pub fn hamming(&self, other: &Labeling) -> usize {
        self.labels.iter().zip(&other.labels).filter(|(a, b)| a != b).count()
    }
}

/// Waiting time at a vertex between consecutive edges labeled `prev` and `next`.
pub fn waiting_time(prev: u32, next: u32, delta: u32) -> Result<u32, TemporalError> {
    for label in [prev, next] {
        if label == 0 || label > delta {
            return Err(TemporalError::LabelOutOfRange { label, delta });
        }
    }
    Ok(match next.cmp(&prev) {
        std::cmp::Ordering::Greater => next - prev,
        std::cmp::Ordering::Less => delta + next - prev,
        std::cmp::Ordering::Equal => delta,
    })
}

/// Duration of a path whose edges carry `labels` in traversal order.
pub fn path_duration(labels: &[u32], delta: u32) -> Result<u64, TemporalError> {
    if labels.is_empty() {
        return Err(TemporalError::EmptyPath);
    }
    let mut total = 1u64;
    for w in labels.windows(2) {
        total += u64::from(waiting_time(w[0], w[1], delta)?);
    }
    if labels.len() == 1 {
        waiting_time(labels[0], labels[0], delta)?;
    }
    Ok(total)
}

/// Worst-case duration over a path of `dist` hops, reached by constant labelings.
pub fn worst_case_duration(dist: u32, delta: u32) -> u64 {
    u64::from(dist.saturating_sub(1)) * u64::from(delta) + 1
}

/// Smallest time strictly after `arrival` at which an edge labeled `label` departs.
#[inline]
fn next_departure(arrival: u64, label: u32, delta: u32) -> u64 {
    let d = u64::from(delta);
    let wait = (u64::from(label) + d - 1 - arrival % d) % d + 1;
    arrival + wait
}

/// Fastest durations from `source` to every vertex (`0` at the source).
///
/// First edges out of `source` are grouped by label; each group seeds one
/// earliest-arrival run starting at that label's time.
pub fn durations_from(g: &Graph, lab: &Labeling, source: usize) -> Vec<u64> {
    let n = g.n();
    let delta = lab.delta();
    let mut best = vec![u64::MAX; n];
    best[source] = 0;

    let mut first_labels: Vec<u32> = g.neighbors(source).iter().map(|&(_, e)| lab.get(e)).collect();
    first_labels.sort_unstable();
    first_labels.dedup();

    let mut arrival = vec![u64::MAX; n];
    let mut heap = BinaryHeap::new();
    for start in first_labels {
        arrival.iter_mut().for_each(|a| *a = u64::MAX);
        heap.clear();
        let start_time = u64::from(start);
        for &(w, e) in g.neighbors(source) {
            if lab.get(e) == start && arrival[w] > start_time {
                arrival[w] = start_time;
                heap.push(Reverse((start_time, w)));
            }
        }
        while let Some(Reverse((t, x))) = heap.pop() {
            if t > arrival[x] {
                continue;
            }
            for &(y, e) in g.neighbors(x) {
                let ty = next_departure(t, lab.get(e), delta);
                if ty < arrival[y] {
                    arrival[y] = ty;
                    heap.push(Reverse((ty, y)));
                }
            }
        }
        for v in 0..n {
            if v != source && arrival[v] != u64::MAX {
                best[v] = best[v].min(arrival[v] - start_time + 1);
            }
        }
    }
    best
}

/// Duration of a fastest temporal path from `u` to `v`.
pub fn fastest_duration(g: &Graph, lab: &Labeling, u: usize, v: usize) -> Result<u64, TemporalError> {
    if u == v {
        return Err(TemporalError::SameEndpoints);
    }
    Ok(durations_from(g, lab, u)[v])
}

/// Fastest durations for all ordered pairs; the diagonal is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DurationMatrix {
    n: usize,
    dur: Vec<u64>,
}

impl DurationMatrix {
    pub fn compute(g: &Graph, lab: &Labeling) -> Self {
        let rows: Vec<Vec<u64>> = (0..g.n()).into_par_iter().map(|s| durations_from(g, lab, s)).collect();
        Self { n: g.n(), dur: rows.concat() }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.dur[u * self.n + v]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.dur.chunks(self.n.max(1)).map(<[u64]>::to_vec).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StretchReport {
    pub delta: u32,
    pub durations: DurationMatrix,
    per_pair: Vec<Rational>,
    pub stretch: Rational,
    /// 0-based ordered pair attaining the maximum; `None` for single-vertex graphs.
    pub worst_pair: Option<(usize, usize)>,
}

impl StretchReport {
    /// `dur(u, v) / dist(u, v)`; zero on the diagonal.
    pub fn per_pair_stretch(&self, u: usize, v: usize) -> Rational {
        self.per_pair[u * self.durations.n + v]
    }

    pub fn to_json(&self, include_durations: bool) -> StretchReportJson {
        StretchReportJson {
            delta: self.delta,
            stretch: self.stretch.into(),
            worst_pair: self.worst_pair.map(|(u, v)| [u + 1, v + 1]),
            durations: include_durations.then(|| self.durations.rows()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StretchReportJson {
    pub delta: u32,
    pub stretch: RationalJson,
    pub worst_pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub durations: Option<Vec<Vec<u64>>>,
}

pub fn evaluate_stretch(g: &Graph, lab: &Labeling) -> StretchReport {
    evaluate_stretch_with(g, &g.distance_matrix(), lab)
}

/// Stretch evaluation reusing a precomputed distance matrix.
pub fn evaluate_stretch_with(g: &Graph, dist: &DistanceMatrix, lab: &Labeling) -> StretchReport {
    let durations = DurationMatrix::compute(g, lab);
    let n = g.n();
    let mut per_pair = vec![Rational::from_integer(0); n * n];
    let mut stretch = Rational::from_integer(1);
    let mut worst_pair = None;
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let s = Rational::new(durations.get(u, v) as i64, i64::from(dist.get(u, v)));
            per_pair[u * n + v] = s;
            if worst_pair.is_none() || s > stretch {
                stretch = s;
                worst_pair = Some((u, v));
            }
        }
    }
    StretchReport { delta: lab.delta(), durations, per_pair, stretch, worst_pair }
}

/// Integer per-pair duration limits: `bound(u, v) = floor(α · dist(u, v))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundMatrix {
    n: usize,
    bound: Vec<u64>,
}

impl BoundMatrix {
    pub fn new(dist: &DistanceMatrix, alpha: Rational) -> Self {
        let n = dist.n();
        let mut bound = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                let scaled = alpha * Rational::from_integer(i64::from(dist.get(u, v)));
                bound.push(scaled.floor().to_integer().max(0) as u64);
            }
        }
        Self { n, bound }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.bound[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bound[u * self.n..(u + 1) * self.n]
    }
}

/// `true` iff every fastest duration respects `bounds`, i.e. the stretch of
/// `lab` is at most the α the bounds were built from.
pub fn meets_bounds(g: &Graph, lab: &Labeling, bounds: &BoundMatrix) -> bool {
    (0..g.n()).all(|s| {
        let row = durations_from(g, lab, s);
        let lim = bounds.row(s);
        row.iter().zip(lim).enumerate().all(|(v, (d, b))| v == s || d <= b)
    })
}

/// Shifts every label by `c` modulo Δ, staying in `[1, Δ]`.
pub fn rotate_labeling(lab: &Labeling, c: i64) -> Labeling {
    let d = i64::from(lab.delta());
    let labels = lab.labels().iter().map(|&l| ((i64::from(l) - 1 + c).rem_euclid(d) + 1) as u32).collect();
    Labeling { delta: lab.delta(), labels }
}

/// Maps every label `l` to `Δ + 1 - l`.
pub fn reflect_labeling(lab: &Labeling) -> Labeling {
    let labels = lab.labels().iter().map(|&l| lab.delta() + 1 - l).collect();
    Labeling { delta: lab.delta(), labels }
}
