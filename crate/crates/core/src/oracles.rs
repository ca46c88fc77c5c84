//! Brute-force reference computations for test suites.
//!
//! Nothing here shares code with the production search paths beyond the
//! waiting-time formula and the graph container.

use itertools::Itertools;

use crate::graph::Graph;
use crate::rational::Rational;
use crate::temporal::{path_duration, Labeling};

/// Fastest durations by enumerating every simple path and summing waiting
/// times along it.
pub fn simple_path_durations(g: &Graph, lab: &Labeling) -> Vec<Vec<u64>> {
    let n = g.n();
    let mut best = vec![vec![u64::MAX; n]; n];
    for s in 0..n {
        best[s][s] = 0;
        let mut visited = vec![false; n];
        let mut labels = Vec::new();
        visited[s] = true;
        dfs(g, lab, s, s, &mut visited, &mut labels, &mut best);
    }
    best
}

fn dfs(
    g: &Graph,
    lab: &Labeling,
    s: usize,
    at: usize,
    visited: &mut [bool],
    labels: &mut Vec<u32>,
    best: &mut [Vec<u64>],
) {
    for &(w, e) in g.neighbors(at) {
        if visited[w] {
            continue;
        }
        labels.push(lab.get(e));
        let d = path_duration(labels, lab.delta()).unwrap();
        best[s][w] = best[s][w].min(d);
        visited[w] = true;
        dfs(g, lab, s, w, visited, labels, best);
        visited[w] = false;
        labels.pop();
    }
}

/// Stretch of `lab` computed from [`simple_path_durations`].
pub fn brute_force_stretch(g: &Graph, lab: &Labeling) -> Rational {
    let dur = simple_path_durations(g, lab);
    let dist = g.distance_matrix();
    let mut best = Rational::from_integer(1);
    for (u, row) in dur.iter().enumerate() {
        for (v, &d) in row.iter().enumerate() {
            if u != v {
                best = best.max(Rational::new(d as i64, i64::from(dist.get(u, v))));
            }
        }
    }
    best
}

/// Every labeling in `[1, Δ]^m`, first edge unrestricted.
pub fn all_labelings(m: usize, delta: u32) -> impl Iterator<Item = Labeling> {
    (0..m).map(|_| 1..=delta).multi_cartesian_product().map(move |labels| Labeling::new(delta, labels).unwrap())
}

/// Minimum stretch over all `Δ^m` labelings.
pub fn enumerate_optimum(g: &Graph, delta: u32) -> Rational {
    all_labelings(g.m(), delta).map(|lab| brute_force_stretch(g, &lab)).min().unwrap()
}

/// Whether some labeling reaches stretch at most `alpha`.
pub fn enumerate_feasible(g: &Graph, delta: u32, alpha: Rational) -> bool {
    all_labelings(g.m(), delta).any(|lab| brute_force_stretch(g, &lab) <= alpha)
}

/// Whether `sets` over `1..=universe` has a hitting set of size at most `k`.
pub fn hitting_set_exists(universe: usize, sets: &[Vec<usize>], k: usize) -> bool {
    (0..=k.min(universe)).any(|size| {
        (1..=universe).combinations(size).any(|pick| sets.iter().all(|s| s.iter().any(|x| pick.contains(x))))
    })
}
