//! BFS-layered labeling from a center vertex, plus the stretch guarantees it
//! carries.
//!
//! Edges between layers `i-1` and `i` get `⌈Δ/2⌉` for odd `i` and `Δ` for even
//! `i`. Edges inside a layer get `Δ`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph, Metrics};
use crate::rational::{self, Rational};
use crate::temporal::Labeling;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RadiusError {
    #[error("vertex {vertex} has eccentricity {eccentricity}, but the radius is {radius}")]
    NotCentral { vertex: usize, eccentricity: u32, radius: u32 },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("graph is not a tree")]
    NotATree,
}

fn check_root(metrics: &Metrics, root: usize) -> Result<(), RadiusError> {
    let ecc = *metrics.eccentricity.get(root).ok_or(RadiusError::NoSuchVertex(root + 1))?;
    if ecc != metrics.radius {
        return Err(RadiusError::NotCentral { vertex: root + 1, eccentricity: ecc, radius: metrics.radius });
    }
    Ok(())
}

/// Radius labeling rooted at `root`, or at the smallest center when `None`.
pub fn radius_label(g: &Graph, delta: u32, root: Option<usize>) -> Result<Labeling, RadiusError> {
    if delta == 0 {
        return Err(RadiusError::ZeroPeriod);
    }
    let metrics = g.distance_matrix().metrics();
    let root = match root {
        Some(r) => {
            check_root(&metrics, r)?;
            r
        }
        None => metrics.first_center(),
    };
    let layering = g.layering(root);
    let half = delta.div_ceil(2);
    let labels = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (la, lb) = (layering.layer[a], layering.layer[b]);
            if la == lb {
                delta
            } else if la.max(lb) % 2 == 1 {
                half
            } else {
                delta
            }
        })
        .collect();
    Ok(Labeling::new(delta, labels).expect("labels in range"))
}

/// Per-distance stretch guarantees of the radius labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub delta: u32,
    pub radius: u32,
    pub diameter: u32,
    /// `α_ℓ` for every distance `ℓ ∈ [2, diam]`.
    #[serde(serialize_with = "rational::map_as_json::serialize")]
    pub per_distance_bound: BTreeMap<u32, Rational>,
    #[serde(with = "rational::as_json")]
    pub overall_bound: Rational,
}

impl BoundCertificate {
    pub fn from_metrics(radius: u32, diameter: u32, delta: u32) -> Self {
        let d = i64::from(delta);
        let rad = i64::from(radius);
        let per_distance_bound: BTreeMap<u32, Rational> = (2..=diameter)
            .map(|l| {
                let li = i64::from(l);
                let bound = if l <= radius + 1 {
                    Rational::from_integer(d) - Rational::new(d - 1, li)
                } else {
                    Rational::new(rad * d + 1, li)
                };
                (l, bound)
            })
            .collect();
        let overall_bound = per_distance_bound.values().copied().max().unwrap_or_else(|| Rational::from_integer(1));
        Self { delta, radius, diameter, per_distance_bound, overall_bound }
    }

    /// `Δ - (Δ-1)/min(rad+1, diam)`, or 1 for diameter ≤ 1.
    pub fn closed_form(radius: u32, diameter: u32, delta: u32) -> Rational {
        let l = (radius + 1).min(diameter);
        if l == 0 {
            return Rational::from_integer(1);
        }
        Rational::from_integer(i64::from(delta)) - Rational::new(i64::from(delta) - 1, i64::from(l))
    }
}

pub fn bound_certificate(g: &Graph, delta: u32) -> BoundCertificate {
    let m = g.distance_matrix().metrics();
    BoundCertificate::from_metrics(m.radius, m.diameter, delta)
}

fn improved_applies_with(d: &DistanceMatrix, metrics: &Metrics, root: usize) -> bool {
    let (rad, diam) = (metrics.radius, metrics.diameter);
    if !(2 <= rad && rad < diam) {
        return false;
    }
    let n = d.n();
    for u in 0..n {
        for v in u + 1..n {
            if d.get(u, v) == rad + 1 && d.get(root, u) + d.get(root, v) >= 2 * rad {
                return false;
            }
        }
    }
    true
}

/// Whether every distance-`(rad+1)` pair passes strictly closer than `2·rad`
/// through `root`, which tightens the radius labeling's guarantee to
/// `Δ - (Δ-1)/rad`.
pub fn improved_bound_applies(g: &Graph, root: usize) -> Result<bool, RadiusError> {
    let d = g.distance_matrix();
    let metrics = d.metrics();
    check_root(&metrics, root)?;
    Ok(improved_applies_with(&d, &metrics, root))
}

/// The tightened guarantee `Δ - (Δ-1)/rad` when it applies at `root`.
pub fn improved_bound(g: &Graph, delta: u32, root: usize) -> Result<Option<Rational>, RadiusError> {
    let d = g.distance_matrix();
    let metrics = d.metrics();
    check_root(&metrics, root)?;
    Ok(improved_applies_with(&d, &metrics, root).then(|| {
        Rational::from_integer(i64::from(delta)) - Rational::new(i64::from(delta) - 1, i64::from(metrics.radius))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeGuarantee {
    /// `(Δ+1)/2`
    #[serde(with = "rational::as_json")]
    pub upper: Rational,
    /// The radius labeling is optimal: some vertex has degree ≥ Δ+1.
    pub optimal: bool,
}

pub fn tree_guarantees(g: &Graph, delta: u32) -> Result<TreeGuarantee, RadiusError> {
    if !g.is_tree() {
        return Err(RadiusError::NotATree);
    }
    Ok(TreeGuarantee { upper: Rational::new(i64::from(delta) + 1, 2), optimal: g.max_degree() > delta as usize })
}

/// Lower bound `(Δ+2)/4` on the optimum of any tree with an internal vertex.
pub fn tree_lower_bound(delta: u32) -> Rational {
    Rational::new(i64::from(delta) + 2, 4)
}
