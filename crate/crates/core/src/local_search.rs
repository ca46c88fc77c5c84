//! Local search over labelings: relabel at most `k` edges to reach a target
//! stretch.
//!
//! For a fixed set `F` of free edges, the labels on edges touching `F` cut
//! `[1, Δ]` into zones. A profile allocates every free edge to a zone and
//! fixes the relative order (with ties) of free labels inside each zone.
//! Each profile is searched independently: small zones exhaustively, large
//! zones by one pass of per-block binary search.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{candidate_alphas, SearchError};
use crate::graph::{DistanceMatrix, Graph};
use crate::rational::{self, Rational};
use crate::temporal::{evaluate_stretch, evaluate_stretch_with, meets_bounds, rotate_labeling, BoundMatrix, Labeling};

pub const DEFAULT_ZONE_EXHAUSTIVE_MAX: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelabelConfig {
    pub budget: u64,
    /// Zones with at most this many labels are searched exhaustively.
    pub zone_exhaustive_max: u32,
}

impl Default for RelabelConfig {
    fn default() -> Self {
        Self { budget: crate::exact::DEFAULT_BUDGET, zone_exhaustive_max: DEFAULT_ZONE_EXHAUSTIVE_MAX }
    }
}

/// Relabel the edges `free` of `labeling` (other labels stay fixed) so that
/// the stretch is at most `alpha0`.
#[derive(Clone, Debug)]
pub struct RelabelTask<'a> {
    pub graph: &'a Graph,
    pub labeling: Labeling,
    /// Edge indices, sorted and distinct.
    pub free: Vec<usize>,
    pub alpha0: Rational,
}

/// Inclusive label interval; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Zone {
    pub lo: u32,
    pub hi: u32,
}

impl Zone {
    pub fn len(&self) -> u32 {
        (self.hi + 1).saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZoneSystem {
    pub delta: u32,
    /// Rotation applied to the input labels so the smallest boundary label is 1.
    pub shift: i64,
    /// Distinct normalized labels on edges outside `F` touching `F`.
    pub boundary_labels: Vec<u32>,
    pub zones: Vec<Zone>,
}

impl ZoneSystem {
    pub fn normalize(&self, lab: &Labeling) -> Labeling {
        rotate_labeling(lab, self.shift)
    }

    pub fn denormalize(&self, lab: &Labeling) -> Labeling {
        rotate_labeling(lab, -self.shift)
    }

    pub fn nonempty_zones(&self) -> Vec<usize> {
        (0..self.zones.len()).filter(|&z| !self.zones[z].is_empty()).collect()
    }
}

pub fn zone_system(g: &Graph, lab: &Labeling, free: &[usize]) -> ZoneSystem {
    let delta = lab.delta();
    let mut in_free = vec![false; g.m()];
    for &e in free {
        in_free[e] = true;
    }
    let mut boundary: Vec<u32> = free
        .iter()
        .flat_map(|&e| {
            let (a, b) = g.edge(e);
            g.neighbors(a).iter().chain(g.neighbors(b))
        })
        .filter(|&&(_, e)| !in_free[e])
        .map(|&(_, e)| lab.get(e))
        .collect();
    boundary.sort_unstable();
    boundary.dedup();
    let Some(&first) = boundary.first() else {
        return ZoneSystem { delta, shift: 0, boundary_labels: vec![], zones: vec![Zone { lo: 1, hi: delta }] };
    };
    let shift = 1 - i64::from(first);
    let boundary_labels: Vec<u32> = boundary.iter().map(|&l| (i64::from(l) + shift) as u32).collect();
    let mut zones = Vec::with_capacity(2 * boundary_labels.len());
    for (j, &l) in boundary_labels.iter().enumerate() {
        let next = boundary_labels.get(j + 1).copied().unwrap_or(delta + 1);
        zones.push(Zone { lo: l, hi: l });
        zones.push(Zone { lo: l + 1, hi: next - 1 });
    }
    ZoneSystem { delta, shift, boundary_labels, zones }
}

/// A zone allocation plus, per zone, an ordered list of blocks of free-edge
/// positions. Positions in one block share a label; block labels strictly
/// increase along the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneProfile {
    /// Zone index of each free-edge position.
    pub allocation: Vec<usize>,
    /// Indexed by zone; empty for unused zones.
    pub order: Vec<Vec<Vec<usize>>>,
}

/// Ordered set partitions of `items` into at most `cap` blocks.
fn ordered_partitions(items: &[usize], cap: usize) -> Vec<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for &x in items {
        let mut next = Vec::new();
        for p in &acc {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            if p.len() < cap {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, vec![x]);
                    next.push(q);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Every profile for `k` free edges, in a fixed order.
pub fn enumerate_profiles(k: usize, zs: &ZoneSystem) -> Vec<ZoneProfile> {
    let nonempty = zs.nonempty_zones();
    let mut out = Vec::new();
    for allocation in (0..k).map(|_| nonempty.iter().copied()).multi_cartesian_product() {
        let per_zone: Vec<(usize, Vec<Vec<Vec<usize>>>)> = nonempty
            .iter()
            .filter_map(|&z| {
                let items: Vec<usize> = (0..k).filter(|&i| allocation[i] == z).collect();
                (!items.is_empty()).then(|| (z, ordered_partitions(&items, zs.zones[z].len() as usize)))
            })
            .collect();
        for choice in per_zone.iter().map(|(_, ps)| ps.iter()).multi_cartesian_product() {
            let mut order = vec![vec![]; zs.zones.len()];
            for ((z, _), blocks) in per_zone.iter().zip(choice) {
                order[*z] = blocks.clone();
            }
            out.push(ZoneProfile { allocation: allocation.clone(), order });
        }
    }
    out
}

/// `min(z^k·2^k·k!, Δ^k)` with `z` the number of nonempty zones.
pub fn profile_space(k: usize, zs: &ZoneSystem) -> u128 {
    let z = zs.nonempty_zones().len() as u128;
    let k32 = k as u32;
    let fact: u128 = (1..=k as u128).try_fold(1u128, |a, b| a.checked_mul(b)).unwrap_or(u128::MAX);
    let bound = z
        .checked_pow(k32)
        .and_then(|x| x.checked_mul(2u128.checked_pow(k32)?))
        .and_then(|x| x.checked_mul(fact))
        .unwrap_or(u128::MAX);
    let all = u128::from(zs.delta).checked_pow(k32).unwrap_or(u128::MAX);
    bound.min(all)
}

struct Ctx<'a> {
    g: &'a Graph,
    dist: &'a DistanceMatrix,
    bounds: BoundMatrix,
    alpha0: Rational,
}

impl Ctx<'_> {
    fn stretch(&self, lab: &Labeling) -> Rational {
        evaluate_stretch_with(self.g, self.dist, lab).stretch
    }
}

fn assign(lab: &mut Labeling, free: &[usize], block: &[usize], label: u32) {
    for &i in block {
        lab.set(free[i], label);
    }
}

/// One pass of binary search per block of a large zone, left to right.
fn binary_pass(ctx: &Ctx, lab: &mut Labeling, free: &[usize], zone: Zone, blocks: &[Vec<usize>]) {
    let b = blocks.len() as u32;
    let mut vals: Vec<u32> = (0..b).map(|i| zone.hi + 1 - b + i).collect();
    for (i, block) in blocks.iter().enumerate() {
        assign(lab, free, block, vals[i]);
    }
    for i in 0..blocks.len() {
        let mut lo = if i == 0 { zone.lo } else { vals[i - 1] + 1 };
        let mut hi = vals.get(i + 1).map_or(zone.hi, |v| v - 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            assign(lab, free, &blocks[i], mid);
            let at_mid = ctx.stretch(lab);
            assign(lab, free, &blocks[i], mid + 1);
            let at_next = ctx.stretch(lab);
            if at_mid <= at_next {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        vals[i] = lo;
        assign(lab, free, &blocks[i], lo);
    }
}

fn search_profile(
    ctx: &Ctx,
    base: &Labeling,
    free: &[usize],
    zs: &ZoneSystem,
    profile: &ZoneProfile,
    zmax: u32,
) -> Option<Labeling> {
    let used: Vec<usize> = (0..zs.zones.len()).filter(|&z| !profile.order[z].is_empty()).collect();
    let (small, large): (Vec<usize>, Vec<usize>) = used.into_iter().partition(|&z| zs.zones[z].len() <= zmax);
    let choices = small
        .iter()
        .map(|&z| zs.zones[z].labels().combinations(profile.order[z].len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    for pick in choices {
        let mut lab = base.clone();
        for (&z, vals) in small.iter().zip(&pick) {
            for (block, &v) in profile.order[z].iter().zip(vals) {
                assign(&mut lab, free, block, v);
            }
        }
        if large.is_empty() {
            if meets_bounds(ctx.g, &lab, &ctx.bounds) {
                return Some(lab);
            }
            continue;
        }
        for &z in &large {
            binary_pass(ctx, &mut lab, free, zs.zones[z], &profile.order[z]);
        }
        if ctx.stretch(&lab) <= ctx.alpha0 {
            return Some(lab);
        }
    }
    None
}

fn verified(g: &Graph, dist: &DistanceMatrix, lab: Labeling, alpha0: Rational) -> Result<Labeling, SearchError> {
    let stretch = evaluate_stretch_with(g, dist, &lab).stretch;
    if stretch > alpha0 {
        return Err(SearchError::VerificationFailed { stretch, alpha: alpha0 });
    }
    Ok(lab)
}

fn relabel_with(
    task: &RelabelTask,
    dist: &DistanceMatrix,
    cfg: &RelabelConfig,
) -> Result<Option<Labeling>, SearchError> {
    if task.alpha0 < Rational::from_integer(1) {
        return Ok(None);
    }
    let g = task.graph;
    if task.free.is_empty() {
        let ok = evaluate_stretch_with(g, dist, &task.labeling).stretch <= task.alpha0;
        return Ok(ok.then(|| task.labeling.clone()));
    }
    let zs = zone_system(g, &task.labeling, &task.free);
    let needed = profile_space(task.free.len(), &zs);
    if needed > u128::from(cfg.budget) {
        return Err(SearchError::BudgetExceeded { needed, budget: cfg.budget });
    }
    let ctx = Ctx { g, dist, bounds: BoundMatrix::new(dist, task.alpha0), alpha0: task.alpha0 };
    let base = zs.normalize(&task.labeling);
    for profile in enumerate_profiles(task.free.len(), &zs) {
        if let Some(lab) = search_profile(&ctx, &base, &task.free, &zs, &profile, cfg.zone_exhaustive_max) {
            return verified(g, dist, zs.denormalize(&lab), task.alpha0).map(Some);
        }
    }
    Ok(None)
}

/// A labeling that differs from the task's only on the free edges and has
/// stretch at most `alpha0`.
pub fn fixed_edges_relabel(task: &RelabelTask, cfg: &RelabelConfig) -> Result<Option<Labeling>, SearchError> {
    relabel_with(task, &task.graph.distance_matrix(), cfg)
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// A labeling within Hamming distance `k` of `lab` with stretch at most
/// `alpha0`. Free sets are tried by ascending size, then lexicographically;
/// the first set that admits a witness wins.
pub fn ls_decide(
    g: &Graph,
    lab: &Labeling,
    k: usize,
    alpha0: Rational,
    cfg: &RelabelConfig,
) -> Result<Option<Labeling>, SearchError> {
    let dist = g.distance_matrix();
    for size in 0..=k.min(g.m()) {
        let count = binomial(g.m(), size);
        if count > u128::from(cfg.budget) {
            return Err(SearchError::BudgetExceeded { needed: count, budget: cfg.budget });
        }
        let subsets: Vec<Vec<usize>> = (0..g.m()).combinations(size).collect();
        let hit = subsets.par_iter().find_map_first(|free| {
            let task = RelabelTask { graph: g, labeling: lab.clone(), free: free.clone(), alpha0 };
            relabel_with(&task, &dist, cfg).transpose()
        });
        if let Some(res) = hit {
            let w = res?;
            debug_assert!(w.hamming(lab) <= k);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Tries all `Δ^|F|` assignments in lexicographic order.
pub fn brute_force_relabel(task: &RelabelTask, budget: u64) -> Result<Option<Labeling>, SearchError> {
    let delta = task.labeling.delta();
    let k = task.free.len();
    let needed = u128::from(delta).checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > u128::from(budget) {
        return Err(SearchError::BudgetExceeded { needed, budget });
    }
    if task.alpha0 < Rational::from_integer(1) {
        return Ok(None);
    }
    let g = task.graph;
    let dist = g.distance_matrix();
    let bounds = BoundMatrix::new(&dist, task.alpha0);
    let d = u64::from(delta);
    let found = (0..needed as u64).into_par_iter().find_map_first(|idx| {
        let mut lab = task.labeling.clone();
        let mut rest = idx;
        for &e in task.free.iter().rev() {
            lab.set(e, (rest % d) as u32 + 1);
            rest /= d;
        }
        meets_bounds(g, &lab, &bounds).then_some(lab)
    });
    found.map(|lab| verified(g, &dist, lab, task.alpha0)).transpose()
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HittingSetError {
    #[error("hyperedge {0} is empty")]
    EmptyHyperedge(usize),
    #[error("hyperedge {set} contains element {element}, outside 1..={universe}")]
    ElementOutOfRange { set: usize, element: usize, universe: usize },
    #[error("universe is empty")]
    EmptyUniverse,
}

/// Local-search instance encoding a hitting-set question.
///
/// Vertex layout: elements `0..|U|`, then one vertex per hyperedge, then the
/// center `c`, then the `k+1` pendants of `c`. Every edge is labeled 1 with
/// `Δ = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HittingSetInstance {
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub labeling: Labeling,
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
    pub center: usize,
    #[serde(with = "rational::as_json")]
    pub initial_stretch: Rational,
    /// Largest candidate stretch strictly below the initial one.
    #[serde(with = "rational::as_json")]
    pub alpha0: Rational,
    /// Hyperedges (0-based) with fewer than `k` elements.
    pub undersized: Vec<usize>,
}

impl HittingSetInstance {
    pub fn element_vertex(&self, element: usize) -> usize {
        element - 1
    }

    pub fn set_vertex(&self, set: usize) -> usize {
        self.universe + set
    }

    /// The initial labeling with `c–u` relabeled to 2 for every `u` in `hitting`.
    pub fn witness_for(&self, hitting: &[usize]) -> Labeling {
        let mut lab = self.labeling.clone();
        for &u in hitting {
            let e = self.graph.edge_index(self.center, self.element_vertex(u)).expect("c is adjacent to U");
            lab.set(e, 2);
        }
        lab
    }
}

pub fn build_hitting_set_ls_instance(
    universe: usize,
    sets: &[Vec<usize>],
    k: usize,
) -> Result<HittingSetInstance, HittingSetError> {
    if universe == 0 {
        return Err(HittingSetError::EmptyUniverse);
    }
    let mut clean = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            return Err(HittingSetError::EmptyHyperedge(i + 1));
        }
        if let Some(&x) = s.iter().find(|&&x| x == 0 || x > universe) {
            return Err(HittingSetError::ElementOutOfRange { set: i + 1, element: x, universe });
        }
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        clean.push(s);
    }
    let nsets = clean.len();
    let center = universe + nsets;
    let n = center + k + 2;
    let mut edges = Vec::new();
    for (j, s) in clean.iter().enumerate() {
        edges.extend(s.iter().map(|&u| (u - 1, universe + j)));
        edges.extend((j + 1..nsets).map(|j2| (universe + j, universe + j2)));
    }
    edges.extend((0..universe).map(|u| (u, center)));
    edges.extend((1..=k + 1).map(|i| (center, center + i)));
    let graph = Graph::new(n, edges).expect("connected by construction");
    let labeling = Labeling::constant(&graph, 2, 1);
    let initial_stretch = evaluate_stretch(&graph, &labeling).stretch;
    let diam = graph.distance_matrix().diameter();
    let alpha0 =
        candidate_alphas(diam, 2).into_iter().rfind(|&a| a < initial_stretch).unwrap_or_else(|| Rational::new(1, 2));
    let undersized = (0..nsets).filter(|&j| clean[j].len() < k).collect();
    Ok(HittingSetInstance { graph, labeling, universe, sets: clean, k, center, initial_stretch, alpha0, undersized })
}
