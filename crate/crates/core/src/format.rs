//! Line-oriented graph files.
//!
//! ```text
//! c comment
//! p stgr <n> <m> <Delta>
//! e <u> <v> [<label>]
//! ```
//!
//! Vertex ids are 1-based with `u < v`. Either every edge carries a label or
//! none does. Coloring instances use the header `p col <n> <m>` and never
//! carry labels; they may be disconnected.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{graph_allow_disconnected, Graph, GraphError};
use crate::temporal::{Labeling, TemporalError};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] TemporalError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Header {
    Stgr { delta: u32 },
    Col,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub header: Header,
    pub graph: Graph,
    pub labeling: Option<Labeling>,
}

impl GraphFile {
    pub fn delta(&self) -> Option<u32> {
        match self.header {
            Header::Stgr { delta } => Some(delta),
            Header::Col => None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("invalid {what} {tok:?}")))
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, FormatError> {
    let mut header: Option<(Header, usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Option<u32>)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut toks = trimmed.split_ascii_whitespace();
        match toks.next() {
            Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line, "second header line"));
                }
                let kind = toks.next().ok_or_else(|| syntax(line, "missing problem kind"))?;
                let n: usize = parse_num(toks.next(), line, "vertex count")?;
                let m: usize = parse_num(toks.next(), line, "edge count")?;
                let h = match kind {
                    "stgr" => {
                        let delta: u32 = parse_num(toks.next(), line, "period")?;
                        if delta == 0 {
                            return Err(syntax(line, "period must be at least 1"));
                        }
                        Header::Stgr { delta }
                    }
                    "col" => Header::Col,
                    other => return Err(syntax(line, format!("unknown problem kind {other:?}"))),
                };
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens in header"));
                }
                header = Some((h, n, m));
            }
            Some("e") => {
                let (h, n, m) = header.ok_or_else(|| syntax(line, "edge before header"))?;
                let u: usize = parse_num(toks.next(), line, "endpoint")?;
                let v: usize = parse_num(toks.next(), line, "endpoint")?;
                let label: Option<u32> = match toks.next() {
                    None => None,
                    Some(t) => Some(parse_num(Some(t), line, "label")?),
                };
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens in edge line"));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(u).into());
                }
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(GraphError::VertexOutOfRange(x).into());
                    }
                }
                if u > v {
                    return Err(syntax(line, "edge endpoints must satisfy u < v"));
                }
                if let Some(l) = label {
                    match h {
                        Header::Col => return Err(syntax(line, "coloring instances carry no labels")),
                        Header::Stgr { delta } if l == 0 || l > delta => {
                            return Err(syntax(line, format!("label {l} out of range [1, {delta}]")))
                        }
                        _ => {}
                    }
                }
                if let Some(first) = edges.first() {
                    if first.2.is_some() != label.is_some() {
                        return Err(syntax(line, "either all edges carry labels or none do"));
                    }
                }
                if edges.len() == m {
                    return Err(syntax(line, format!("more than {m} edges")));
                }
                edges.push((u - 1, v - 1, label));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type {other:?}"))),
            None => unreachable!(),
        }
    }
    let (header, n, m) = header.ok_or_else(|| syntax(last_line.max(1), "missing header line"))?;
    if edges.len() != m {
        return Err(syntax(last_line.max(1), format!("expected {m} edges, found {}", edges.len())));
    }
    let pairs = edges.iter().map(|&(u, v, _)| (u, v));
    let graph = match header {
        Header::Stgr { .. } => Graph::new(n, pairs)?,
        Header::Col => graph_allow_disconnected(n, pairs)?,
    };
    let labeling = match (header, edges.first().and_then(|e| e.2)) {
        (Header::Stgr { delta }, Some(_)) => {
            let mut labels = vec![0; graph.m()];
            for &(u, v, l) in &edges {
                labels[graph.edge_index(u, v).expect("edge present")] = l.expect("all labeled");
            }
            Some(Labeling::for_graph(&graph, delta, labels)?)
        }
        (Header::Stgr { delta }, None) if m == 0 => Some(Labeling::new(delta, vec![])?),
        _ => None,
    };
    Ok(GraphFile { header, graph, labeling })
}

/// Writes `p stgr` format in canonical edge order, with labels when given.
pub fn write_graph_file(g: &Graph, delta: u32, labeling: Option<&Labeling>, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p stgr {} {} {}", g.n(), g.m(), delta).unwrap();
    for (idx, &(u, v)) in g.edges().iter().enumerate() {
        match labeling {
            Some(lab) => writeln!(out, "e {} {} {}", u + 1, v + 1, lab.get(idx)).unwrap(),
            None => writeln!(out, "e {} {}", u + 1, v + 1).unwrap(),
        }
    }
    out
}

/// Writes a coloring instance (`p col`).
pub fn write_col_file(g: &Graph) -> String {
    let mut out = format!("p col {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Parses a vertex coloring: lines `v <vertex> <color>` (1-based vertex ids),
/// `c` comment lines allowed. Every vertex of an `n`-vertex graph must appear once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Vec<u32>, FormatError> {
    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_ascii_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("v") => {
                let v: usize = parse_num(toks.next(), line, "vertex")?;
                let color: u32 = parse_num(toks.next(), line, "color")?;
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange(v).into());
                }
                if colors[v - 1].replace(color).is_some() {
                    return Err(syntax(line, format!("vertex {v} colored twice")));
                }
            }
            Some(other) => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| syntax(0, format!("vertex {} has no color", v + 1))))
        .collect()
}

pub fn write_coloring(colors: &[u32]) -> String {
    colors.iter().enumerate().map(|(v, c)| format!("v {} {}\n", v + 1, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::path;

    #[test]
    fn parses_labeled_path() {
        let f = parse_graph_file("c a path\np stgr 3 2 5\ne 1 2 4\ne 2 3 1\n").unwrap();
        assert_eq!(f.graph, path(3));
        assert_eq!(f.delta(), Some(5));
        assert_eq!(f.labeling.unwrap().labels(), &[4, 1]);
    }

    #[test]
    fn parses_unlabeled_path() {
        let f = parse_graph_file("p stgr 3 2 5\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(f.graph, path(3));
        assert!(f.labeling.is_none());
    }

    #[test]
    fn labels_follow_canonical_order() {
        let f = parse_graph_file("p stgr 3 2 3\ne 2 3 1\ne 1 2 3\n").unwrap();
        assert_eq!(f.labeling.unwrap().labels(), &[3, 1]);
    }

    #[test]
    fn rejects_bad_files() {
        let cases = [
            ("p stgr 2 1 3\ne 1 1\n", "self-loop"),
            ("p stgr 4 2 3\ne 1 2\ne 3 4\n", "disconnected"),
            ("p stgr 2 2 3\ne 1 2\ne 1 2\n", "duplicate"),
            ("p stgr 2 1 3\ne 1 3\n", "out of range"),
            ("p stgr 3 2 3\ne 1 2 1\ne 2 3\n", "line 3"),
            ("p stgr 2 1 3\ne 1 2 4\n", "line 2"),
            ("p stgr 3 2 3\ne 1 2\n", "expected 2 edges"),
            ("e 1 2\n", "line 1"),
            ("p stgr 2 1 3\nx\n", "line 2"),
            ("p stgr 2 1 3\ne 2 1\n", "u < v"),
        ];
        for (text, needle) in cases {
            let err = parse_graph_file(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }

    #[test]
    fn col_files_may_be_disconnected() {
        let f = parse_graph_file("p col 4 1\ne 1 2\n").unwrap();
        assert_eq!(f.header, Header::Col);
        assert_eq!(f.graph.m(), 1);
    }

    #[test]
    fn writes_canonical_text() {
        let g = path(3);
        let lab = Labeling::new(2, vec![1, 2]).unwrap();
        assert_eq!(write_graph_file(&g, 2, Some(&lab), &[]), "p stgr 3 2 2\ne 1 2 1\ne 2 3 2\n");
        assert_eq!(write_col_file(&g), "p col 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn colorings() {
        assert_eq!(parse_coloring("c x\nv 2 3\nv 1 1\n", 2).unwrap(), vec![1, 3]);
        assert!(parse_coloring("v 1 1\n", 2).is_err());
        assert!(parse_coloring("v 1 1\nv 1 2\n", 1).is_err());
        assert_eq!(write_coloring(&[1, 2]), "v 1 1\nv 2 2\n");
    }
}
