//! Static undirected graphs and their BFS metrics.
//!
//! Vertices are 0-based internally. The text format and every report use
//! 1-based ids, so conversion happens only at the I/O boundary.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex id out of range: {0}")]
    VertexOutOfRange(usize),
    #[error("disconnected graph")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected simple connected graph.
///
/// Edges are stored in canonical order: every pair is `(u, v)` with `u < v`
/// and the list is sorted lexicographically. Edge indices refer to this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from 0-based vertex pairs, rejecting loops, duplicates,
    /// out-of-range ids and disconnected input.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let g = Self::new_unchecked_connectivity(n, edges)?;
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn new_unchecked_connectivity(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange(a + 1));
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange(b + 1));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a + 1));
            }
            let key = (a.min(b), a.max(b));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0 + 1, key.1 + 1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for (idx, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, idx));
            adjacency[b].push((a, idx));
        }
        Ok(Self { n, edges, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize) {
        self.edges[idx]
    }

    /// Neighbors of `v` paired with the index of the connecting edge.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    fn is_connected(&self) -> bool {
        bfs_depths(self, 0).iter().all(|d| d.is_some())
    }

    /// Pairs `{u, v}` with `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS layering from `root`.
    pub fn layering(&self, root: usize) -> Layering {
        let layer = bfs_depths(self, root).into_iter().map(|d| d.expect("graph is connected")).collect();
        Layering { root, layer }
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let rows: Vec<Vec<u32>> = (0..self.n).into_par_iter().map(|s| self.layering(s).layer).collect();
        DistanceMatrix { n: self.n, dist: rows.concat() }
    }
}

/// Loosely-checked graph construction for callers that want to validate
/// connectivity themselves (used when parsing coloring instances, which need
/// not be connected).
pub(crate) fn graph_allow_disconnected(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Graph, GraphError> {
    Graph::new_unchecked_connectivity(n, edges)
}

fn bfs_depths(g: &Graph, root: usize) -> Vec<Option<u32>> {
    let mut depth = vec![None; g.n];
    let mut queue = VecDeque::new();
    depth[root] = Some(0);
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        let d = depth[v].unwrap();
        for &(w, _) in g.neighbors(v) {
            if depth[w].is_none() {
                depth[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    depth
}

/// All-pairs hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn metrics(&self) -> Metrics {
        let eccentricity: Vec<u32> = (0..self.n).map(|u| self.row(u).iter().copied().max().unwrap_or(0)).collect();
        let radius = eccentricity.iter().copied().min().unwrap_or(0);
        let diameter = eccentricity.iter().copied().max().unwrap_or(0);
        Metrics { eccentricity, radius, diameter }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub eccentricity: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
}

impl Metrics {
    /// Smallest vertex whose eccentricity equals the radius.
    pub fn first_center(&self) -> usize {
        self.eccentricity.iter().position(|&e| e == self.radius).expect("non-empty graph")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub root: usize,
    pub layer: Vec<u32>,
}

impl Layering {
    pub fn depth(&self) -> u32 {
        self.layer.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m())
    }
}

/// Small named graphs used throughout tests and generators (0-based).
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is valid")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is valid")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph is valid")
    }
}
