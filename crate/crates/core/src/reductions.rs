//! 3-coloring reductions and the labelings that witness them.
//!
//! Vertex layout of every instance: the source vertices keep ids `0..n`, then
//! the center `c`, then `c*` or the dummy leaves `V*`, then gadget (or
//! diamond) internals, then hat vertices or `c_1, c_2, c_3`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::gadgets::{sunglasses_gadget, SunglassesGadget};
use crate::graph::Graph;
use crate::rational::{self, Rational};
use crate::temporal::Labeling;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("graph has no non-edge, so no vertex has a non-neighbor")]
    NoNonEdge,
    #[error("reduction needs Δ ≥ 3, got {0}")]
    PeriodTooSmall(u32),
    #[error("coloring has {got} entries for {expected} vertices")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex {vertex} has color {color}, outside 1..=3")]
    ColorOutOfRange { vertex: usize, color: u32 },
    #[error("edge {{{0}, {1}}} is monochromatic")]
    NotProper(usize, usize),
    #[error("coloring uses only {0} of the three colors")]
    ColorsMissing(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Δ = 3`, diameter 2, target 1.
    Diameter2,
    /// `Δ = 3` with sunglasses gadgets, target 3/2.
    Tight3,
    /// `Δ ≥ 4`, target `Δ/2`.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    Element { source: usize },
    Center,
    CenterStar,
    Dummy { index: usize },
    Diamond { from: usize, to: usize },
    Central { gadget: usize },
    Internal { gadget: usize },
    Hat { of: usize },
    Aux { index: usize },
}

/// How an edge is labeled from a coloring `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", content = "value", rename_all = "snake_case")]
pub enum EdgeRule {
    Fixed(u32),
    /// `color_labels[χ(v) - 1]`
    Color(usize),
    /// `4 - χ(v)`
    Mirror(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionInstance {
    pub family: Family,
    pub delta: u32,
    #[serde(with = "rational::as_json")]
    pub alpha: Rational,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub source: Graph,
    pub center: usize,
    pub roles: Vec<Role>,
    /// Indexed like `graph.edges()`.
    pub rules: Vec<EdgeRule>,
    /// Labels standing for colors 1, 2, 3 on the edges `c–v`.
    pub color_labels: [u32; 3],
    /// Non-edges of the source, one gadget or diamond each, in this order.
    pub non_edges: Vec<(usize, usize)>,
    /// Source vertices without a non-neighbor.
    pub lonely: Vec<usize>,
}

struct Builder {
    roles: Vec<Role>,
    edges: Vec<(usize, usize)>,
    rules: Vec<EdgeRule>,
    seen: HashMap<(usize, usize), usize>,
}

impl Builder {
    fn new(source_n: usize) -> Self {
        let roles = (0..source_n).map(|source| Role::Element { source }).collect();
        Self { roles, edges: vec![], rules: vec![], seen: HashMap::new() }
    }

    fn vertex(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    /// Adds `{a, b}` unless present; the first rule for an edge wins.
    fn edge(&mut self, a: usize, b: usize, rule: EdgeRule) {
        let key = (a.min(b), a.max(b));
        if let std::collections::hash_map::Entry::Vacant(e) = self.seen.entry(key) {
            e.insert(self.edges.len());
            self.edges.push(key);
            self.rules.push(rule);
        }
    }

    fn clique(&mut self, vs: &[usize], rule: EdgeRule) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.edge(a, b, rule);
            }
        }
    }

    /// Embeds a gadget docked at `u, v`; returns its central vertices.
    fn gadget(&mut self, sg: &SunglassesGadget, idx: usize, u: usize, v: usize) -> Vec<usize> {
        let mut map = vec![u, v];
        for local in 2..sg.graph.n() {
            let role =
                if sg.is_central(local) { Role::Central { gadget: idx } } else { Role::Internal { gadget: idx } };
            map.push(self.vertex(role));
        }
        for e in &sg.edges {
            self.edge(map[e.a], map[e.b], EdgeRule::Fixed(e.label));
        }
        sg.centrals.iter().map(|&x| map[x]).collect()
    }

    fn finish(self) -> (Graph, Vec<Role>, Vec<EdgeRule>) {
        let graph = Graph::new(self.roles.len(), self.edges.iter().copied()).expect("connected by construction");
        let mut rules = vec![EdgeRule::Fixed(0); graph.m()];
        for (&(a, b), &rule) in self.edges.iter().zip(&self.rules) {
            rules[graph.edge_index(a, b).expect("edge present")] = rule;
        }
        (graph, self.roles, rules)
    }
}

fn lonely_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).collect()
}

/// Non-edges and lonely vertices of a source graph.
type SourceShape = (Vec<(usize, usize)>, Vec<usize>);

fn check_source(g: &Graph) -> Result<SourceShape, ReductionError> {
    let non_edges = g.non_edges();
    if non_edges.is_empty() {
        return Err(ReductionError::NoNonEdge);
    }
    Ok((non_edges, lonely_vertices(g)))
}

/// Diameter-2 instance with `Δ = 3` and target stretch 1.
pub fn reduce_3col_diam2(source: &Graph) -> Result<ReductionInstance, ReductionError> {
    let (non_edges, lonely) = check_source(source)?;
    let n = source.n();
    let mut b = Builder::new(n);
    let c = b.vertex(Role::Center);
    let cstar = b.vertex(Role::CenterStar);
    for v in 0..n {
        b.edge(c, v, EdgeRule::Color(v));
        b.edge(cstar, v, EdgeRule::Mirror(v));
    }
    let mut clique = vec![c, cstar];
    for &(u, v) in &non_edges {
        let xuv = b.vertex(Role::Diamond { from: u, to: v });
        let xvu = b.vertex(Role::Diamond { from: v, to: u });
        b.edge(u, xuv, EdgeRule::Fixed(1));
        b.edge(v, xvu, EdgeRule::Fixed(1));
        b.edge(u, xvu, EdgeRule::Fixed(3));
        b.edge(v, xuv, EdgeRule::Fixed(3));
        clique.extend([xuv, xvu]);
    }
    b.clique(&clique, EdgeRule::Fixed(2));
    let (graph, roles, rules) = b.finish();
    Ok(ReductionInstance {
        family: Family::Diameter2,
        delta: 3,
        alpha: Rational::from_integer(1),
        graph,
        source: source.clone(),
        center: c,
        roles,
        rules,
        color_labels: [1, 2, 3],
        non_edges,
        lonely,
    })
}

/// Sunglasses-gadget instance: `Δ = 3` gives the tight variant with target
/// 3/2; larger `Δ` gives target `Δ/2`.
pub fn reduce_3col(source: &Graph, delta: u32) -> Result<ReductionInstance, ReductionError> {
    if delta < 3 {
        return Err(ReductionError::PeriodTooSmall(delta));
    }
    let (non_edges, lonely) = check_source(source)?;
    let n = source.n();
    let sg = sunglasses_gadget(delta).expect("Δ ≥ 3");
    let mut b = Builder::new(n);
    let c = b.vertex(Role::Center);
    let l2 = if delta.is_multiple_of(2) { delta / 2 } else { delta.div_ceil(2) };
    let (l1, l3) = (l2 - 1, l2 + 1);
    let color_labels = if delta == 3 { [1, 2, 3] } else { [l1, l2, l3] };
    for v in 0..n {
        b.edge(c, v, EdgeRule::Color(v));
    }
    if delta > 3 {
        let dummy_labels = (1..l1).chain(l3 + 1..=delta);
        for (i, label) in dummy_labels.enumerate() {
            let w = b.vertex(Role::Dummy { index: i + 1 });
            b.edge(c, w, EdgeRule::Fixed(label));
        }
    }
    let mut xs = Vec::new();
    for (idx, &(u, v)) in non_edges.iter().enumerate() {
        xs.extend(b.gadget(&sg, idx, u, v));
    }
    let hats = |b: &mut Builder, to_x: u32, other: u32, with_center: bool| {
        let hs: Vec<usize> = xs.iter().map(|&x| b.vertex(Role::Hat { of: x })).collect();
        for (&h, &x) in hs.iter().zip(&xs) {
            b.edge(h, x, EdgeRule::Fixed(to_x));
        }
        for &h in &hs {
            for &x in &xs {
                b.edge(h, x, EdgeRule::Fixed(other));
            }
            if with_center {
                b.edge(h, c, EdgeRule::Fixed(other));
            }
        }
        b.clique(&hs, EdgeRule::Fixed(other));
    };
    let (family, alpha) = if delta == 3 {
        hats(&mut b, 1, 2, true);
        (Family::Tight3, Rational::new(3, 2))
    } else {
        if delta.is_multiple_of(2) {
            b.clique(&xs, EdgeRule::Fixed(l2));
        } else {
            hats(&mut b, l1, l2, false);
        }
        if delta == 4 {
            let cs: Vec<usize> = (1..=3).map(|index| b.vertex(Role::Aux { index })).collect();
            for (i, &ci) in cs.iter().enumerate() {
                b.edge(c, ci, EdgeRule::Fixed(i as u32 + 1));
                let to_x = if i == 2 { 2 } else { 4 };
                for &x in &xs {
                    b.edge(ci, x, EdgeRule::Fixed(to_x));
                }
            }
            b.edge(cs[0], cs[1], EdgeRule::Fixed(3));
            b.edge(cs[0], cs[2], EdgeRule::Fixed(2));
            b.edge(cs[1], cs[2], EdgeRule::Fixed(1));
        }
        (Family::General, Rational::new(i64::from(delta), 2))
    };
    let (graph, roles, rules) = b.finish();
    Ok(ReductionInstance {
        family,
        delta,
        alpha,
        graph,
        source: source.clone(),
        center: c,
        roles,
        rules,
        color_labels,
        non_edges,
        lonely,
    })
}

fn check_coloring(inst: &ReductionInstance, chi: &[u32]) -> Result<(), ReductionError> {
    let n = inst.source.n();
    if chi.len() != n {
        return Err(ReductionError::WrongLength { got: chi.len(), expected: n });
    }
    if let Some(v) = (0..n).find(|&v| !(1..=3).contains(&chi[v])) {
        return Err(ReductionError::ColorOutOfRange { vertex: v + 1, color: chi[v] });
    }
    if let Some(&(u, v)) = inst.source.edges().iter().find(|&&(u, v)| chi[u] == chi[v]) {
        return Err(ReductionError::NotProper(u + 1, v + 1));
    }
    if inst.family != Family::Diameter2 {
        let used = (1..=3).filter(|c| chi.contains(c)).count();
        if used < 3 {
            return Err(ReductionError::ColorsMissing(used));
        }
    }
    Ok(())
}

/// The labeling built from a proper 3-coloring (colors `1..=3`, indexed by
/// source vertex).
pub fn coloring_to_labeling(inst: &ReductionInstance, chi: &[u32]) -> Result<Labeling, ReductionError> {
    check_coloring(inst, chi)?;
    let labels = inst
        .rules
        .iter()
        .map(|rule| match *rule {
            EdgeRule::Fixed(l) => l,
            EdgeRule::Color(v) => inst.color_labels[chi[v] as usize - 1],
            EdgeRule::Mirror(v) => 4 - chi[v],
        })
        .collect();
    Ok(Labeling::for_graph(&inst.graph, inst.delta, labels).expect("labels in range"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractedColoring {
    /// `λ(c, v)` for every source vertex.
    pub colors: Vec<u32>,
    pub proper: bool,
    /// Source edges whose endpoints share a color (0-based).
    pub conflicts: Vec<(usize, usize)>,
}

/// Reads `χ(v) = λ(c, v)` off a labeling of the instance, or `None` when the
/// labeling does not fit the instance graph.
pub fn labeling_to_coloring(inst: &ReductionInstance, lab: &Labeling) -> Option<ExtractedColoring> {
    if lab.len() != inst.graph.m() || lab.delta() != inst.delta {
        return None;
    }
    let colors: Vec<u32> = (0..inst.source.n())
        .map(|v| lab.get(inst.graph.edge_index(inst.center, v).expect("c is adjacent to V")))
        .collect();
    let conflicts: Vec<(usize, usize)> =
        inst.source.edges().iter().copied().filter(|&(u, v)| colors[u] == colors[v]).collect();
    Some(ExtractedColoring { colors, proper: conflicts.is_empty(), conflicts })
}
