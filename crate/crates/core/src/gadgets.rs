//! Sunglasses gadgets: a `2Δ`-cycle between two docking points with
//! shortcut, parallel and zigzag chords.
//!
//! Vertex ids: `0 = u`, `1 = v`, then `p^{u,1..Δ-1}`, then `p^{v,1..Δ-1}`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::temporal::Labeling;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("sunglasses gadgets need Δ ≥ 3, got {0}")]
    PeriodTooSmall(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeRole {
    Cycle,
    Shortcut,
    Parallel,
    Zigzag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetEdge {
    pub a: usize,
    pub b: usize,
    pub role: EdgeRole,
    /// Label under the sunglasses labeling.
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunglassesGadget {
    pub delta: u32,
    pub graph: Graph,
    /// Indexed like `graph.edges()`.
    pub edges: Vec<GadgetEdge>,
    pub centrals: Vec<usize>,
}

/// Vertex id of `p^{side,i}` for `i ∈ [0, Δ]`.
pub fn p(delta: u32, side: Side, i: u32) -> usize {
    let dock = |s: Side| if s == Side::U { 0 } else { 1 };
    if i == 0 {
        return dock(side);
    }
    if i == delta {
        return dock(side.other());
    }
    match side {
        Side::U => 1 + i as usize,
        Side::V => (delta + i) as usize,
    }
}

/// Label given to vertical (shortcut and parallel) edges.
pub fn vertical_label(delta: u32) -> u32 {
    if delta % 2 == 1 {
        delta.div_ceil(2)
    } else {
        delta / 2
    }
}

pub fn sunglasses_gadget(delta: u32) -> Result<SunglassesGadget, GadgetError> {
    if delta < 3 {
        return Err(GadgetError::PeriodTooSmall(delta));
    }
    let pu = |i| p(delta, Side::U, i);
    let pv = |i| p(delta, Side::V, i);
    let vert = vertical_label(delta);
    let odd = delta % 2 == 1;
    let mut specs: Vec<GadgetEdge> = Vec::new();
    let mut push = |a: usize, b: usize, role, label| {
        let (a, b) = (a.min(b), a.max(b));
        if !specs.iter().any(|e| e.a == a && e.b == b) {
            specs.push(GadgetEdge { a, b, role, label });
        }
    };
    for side in [Side::U, Side::V] {
        for i in 1..=delta {
            push(p(delta, side, i - 1), p(delta, side, i), EdgeRole::Cycle, i);
        }
    }
    let (lo, hi) = if odd { ((delta - 1) / 2, delta.div_ceil(2)) } else { (delta / 2 - 1, delta / 2 + 1) };
    push(pu(lo), pv(hi), EdgeRole::Shortcut, vert);
    push(pv(lo), pu(hi), EdgeRole::Shortcut, vert);
    push(pu(2), pv(delta - 2), EdgeRole::Parallel, vert);
    push(pv(2), pu(delta - 2), EdgeRole::Parallel, vert);
    let zig_max = if odd { (delta - 3) / 2 } else { delta / 2 - 1 };
    for i in 1..=zig_max {
        push(pu(i), pv(delta - i - 1), EdgeRole::Zigzag, i);
        push(pu(i + 1), pv(delta - i), EdgeRole::Zigzag, i);
        push(pv(i), pu(delta - i - 1), EdgeRole::Zigzag, i);
        push(pv(i + 1), pu(delta - i), EdgeRole::Zigzag, i);
    }
    let n = 2 * delta as usize;
    let graph = Graph::new(n, specs.iter().map(|e| (e.a, e.b))).expect("gadget is connected");
    let mut edges = specs.clone();
    edges.sort_by_key(|e| (e.a, e.b));
    let centrals = if odd { vec![pu(lo), pu(hi), pv(lo), pv(hi)] } else { vec![pu(delta / 2), pv(delta / 2)] };
    Ok(SunglassesGadget { delta, graph, edges, centrals })
}

pub fn sunglasses_labeling(g: &SunglassesGadget) -> Labeling {
    Labeling::new(g.delta, g.edges.iter().map(|e| e.label).collect()).expect("labels in range")
}

impl SunglassesGadget {
    pub fn is_central(&self, v: usize) -> bool {
        self.centrals.contains(&v)
    }

    /// `(side, p^{side,1}, …, p^{side,Δ-1}, other)`.
    pub fn chronological_path(&self, side: Side) -> Vec<usize> {
        (0..=self.delta).map(|i| p(self.delta, side, i)).collect()
    }

    /// The closed chronological cycle starting and ending at the docking point.
    pub fn chronological_cycle(&self, side: Side) -> Vec<usize> {
        let d = self.delta;
        let (lo, hi) = if d % 2 == 1 { ((d - 1) / 2, d.div_ceil(2)) } else { (d / 2 - 1, d / 2 + 1) };
        let mut cyc: Vec<usize> = (0..=lo).map(|i| p(d, side, i)).collect();
        cyc.extend((hi..d).map(|i| p(d, side.other(), i)));
        cyc.push(p(d, side, 0));
        cyc
    }

    /// The four paths from `p^{u,1}, p^{u,Δ-1}, p^{v,1}, p^{v,Δ-1}` along
    /// zigzag edges to a central vertex.
    pub fn zigzag_paths(&self) -> Vec<Vec<usize>> {
        let d = self.delta;
        let starts = [p(d, Side::U, 1), p(d, Side::U, d - 1), p(d, Side::V, 1), p(d, Side::V, d - 1)];
        starts
            .iter()
            .map(|&s| {
                let mut path = vec![s];
                while !self.is_central(*path.last().unwrap()) {
                    let at = *path.last().unwrap();
                    let prev = path.len().checked_sub(2).map(|i| path[i]);
                    let next = self
                        .edges
                        .iter()
                        .filter(|e| e.role == EdgeRole::Zigzag && (e.a == at || e.b == at))
                        .map(|e| if e.a == at { e.b } else { e.a })
                        .find(|&w| Some(w) != prev);
                    match next {
                        Some(w) => path.push(w),
                        None => break,
                    }
                }
                path
            })
            .collect()
    }

    pub fn label_along(&self, lab: &Labeling, walk: &[usize]) -> Vec<u32> {
        walk.windows(2).map(|w| lab.get(self.graph.edge_index(w[0], w[1]).expect("walk uses gadget edges"))).collect()
    }

    /// Structural checks of `lab` against the gadget; returns the failures.
    pub fn audit(&self, lab: &Labeling) -> Vec<String> {
        let d = self.delta;
        let mut fails = Vec::new();
        let cycle_edges = self.edges.iter().filter(|e| e.role == EdgeRole::Cycle).count();
        if cycle_edges != 2 * d as usize || self.graph.n() != 2 * d as usize {
            fails.push(format!("base cycle has {cycle_edges} edges on {} vertices", self.graph.n()));
        }
        for side in [Side::U, Side::V] {
            let path = self.chronological_path(side);
            let labels = self.label_along(lab, &path);
            if labels != (1..=d).collect::<Vec<_>>() {
                fails.push(format!("chronological path {side:?} labeled {labels:?}"));
            }
            let cyc = self.chronological_cycle(side);
            let want = if d % 2 == 1 { d } else { d - 1 } as usize;
            if cyc.len() - 1 != want {
                fails.push(format!("chronological cycle {side:?} has {} vertices", cyc.len() - 1));
            }
            let labels = self.label_along(lab, &cyc);
            if !labels.windows(2).all(|w| w[0] < w[1]) {
                fails.push(format!("chronological cycle {side:?} labeled {labels:?}"));
            }
        }
        for path in self.zigzag_paths() {
            if !self.is_central(*path.last().unwrap()) {
                fails.push(format!("zigzag path {path:?} does not reach a central vertex"));
            }
            let labels = self.label_along(lab, &path);
            let increasing = labels.windows(2).all(|w| w[0] < w[1]);
            if !labels.is_empty() && (labels[0] != 1 || !increasing) {
                fails.push(format!("zigzag path {path:?} labeled {labels:?}"));
            }
        }
        if self.edges.len() != self.graph.m() {
            fails.push("edge role table does not match the edge set".into());
        }
        fails
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::fastest_duration;

    #[test]
    fn vertex_ids() {
        assert_eq!(p(5, Side::U, 0), 0);
        assert_eq!(p(5, Side::U, 5), 1);
        assert_eq!(p(5, Side::V, 0), 1);
        assert_eq!(p(5, Side::V, 5), 0);
        assert_eq!(p(5, Side::U, 1), 2);
        assert_eq!(p(5, Side::U, 4), 5);
        assert_eq!(p(5, Side::V, 1), 6);
        assert_eq!(p(5, Side::V, 4), 9);
    }

    #[test]
    fn delta_three() {
        let g = sunglasses_gadget(3).unwrap();
        assert_eq!((g.graph.n(), g.graph.m()), (6, 8));
        assert_eq!(g.centrals.len(), 4);
        let lab = sunglasses_labeling(&g);
        for e in &g.edges {
            if e.role != EdgeRole::Cycle {
                assert_eq!(e.label, 2);
            }
        }
        assert_eq!(g.label_along(&lab, &g.chronological_path(Side::U)), vec![1, 2, 3]);
    }

    #[test]
    fn delta_four_central_edge() {
        let g = sunglasses_gadget(4).unwrap();
        assert_eq!(g.graph.n(), 8);
        let (u2, v2) = (p(4, Side::U, 2), p(4, Side::V, 2));
        let e = g.graph.edge_index(u2, v2).unwrap();
        assert_eq!(g.edges[e].role, EdgeRole::Parallel);
        assert_eq!(g.centrals, vec![u2, v2]);
    }

    #[test]
    fn delta_five_chords() {
        let g = sunglasses_gadget(5).unwrap();
        let pu = |i| p(5, Side::U, i);
        let pv = |i| p(5, Side::V, i);
        assert!(g.graph.has_edge(pu(2), pv(3)));
        assert!(g.graph.has_edge(pv(2), pu(3)));
        for (a, b) in [(pu(1), pv(3)), (pu(2), pv(4)), (pv(1), pu(3)), (pv(2), pu(4))] {
            let e = g.graph.edge_index(a, b).unwrap();
            assert!(matches!(g.edges[e].role, EdgeRole::Zigzag | EdgeRole::Shortcut));
        }
    }

    #[test]
    fn audits_and_docking_durations() {
        for delta in 3..=10 {
            let g = sunglasses_gadget(delta).unwrap();
            let lab = sunglasses_labeling(&g);
            assert_eq!(g.audit(&lab), Vec::<String>::new(), "Δ = {delta}");
            assert_eq!(fastest_duration(&g.graph, &lab, 0, 1).unwrap(), u64::from(delta));
            assert_eq!(fastest_duration(&g.graph, &lab, 1, 0).unwrap(), u64::from(delta));
        }
    }

    #[test]
    fn rejects_small_period() {
        assert_eq!(sunglasses_gadget(2), Err(GadgetError::PeriodTooSmall(2)));
    }
}
