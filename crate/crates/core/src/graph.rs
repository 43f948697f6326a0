//! Simple undirected graphs and (partial) vertex colorings.
//!
//! Vertices are `0..n` in memory and `1..=n` in files. Colors are `0..chi`
//! both in memory and in files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeSet<Vertex>>,
    edges: BTreeSet<(Vertex, Vertex)>,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    pub fn new(num_vertices: usize) -> Self {
        Graph {
            adjacency: vec![BTreeSet::new(); num_vertices],
            ..Graph::default()
        }
    }

    pub fn from_edges(num_vertices: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(num_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adjacency.push(BTreeSet::new());
        self.adjacency.len() - 1
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> Vertex {
        let v = self.add_vertex();
        self.labels.insert(v, label.into());
        v
    }

    /// Adds `{u, v}`. Returns false when the edge was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        let n = self.num_vertices();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!("edge ({u}, {v}) outside 0..{n}")));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Ok(false);
        }
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(true)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Edges as `(smaller, larger)` pairs in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    /// DIMACS `p edge` text. Labels go into `c vertex <idx> <label>` lines.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (v, label) in &self.labels {
            let _ = writeln!(out, "c vertex {} {}", v + 1, label);
        }
        let _ = writeln!(out, "p edge {} {}", self.num_vertices(), self.num_edges());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Parses a DIMACS `p edge n m` document with `e u v` lines (1-based).
///
/// The number of `e` lines must equal `m`. Repeated edges are accepted and
/// stored once.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0usize;
    let mut header_line = 0usize;
    let mut seen = 0usize;
    let mut labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("c") => {
                if parts.next() == Some("vertex") {
                    if let Some(Ok(v)) = parts.next().map(str::parse::<usize>) {
                        let label: Vec<&str> = parts.collect();
                        if v >= 1 && !label.is_empty() {
                            labels.push((v - 1, label.join(" ")));
                        }
                    }
                }
            }
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                if parts.next() != Some("edge") {
                    return Err(Error::parse(line_no, "expected `p edge <vertices> <edges>`"));
                }
                let n = parse_count(parts.next(), line_no, "vertex count")?;
                declared = parse_count(parts.next(), line_no, "edge count")?;
                if parts.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after problem line"));
                }
                graph = Some(Graph::new(n));
                header_line = line_no;
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "edge before problem line"))?;
                let u = parse_count(parts.next(), line_no, "edge endpoint")?;
                let v = parse_count(parts.next(), line_no, "edge endpoint")?;
                if parts.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after edge"));
                }
                let n = g.num_vertices();
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(line_no, format!("edge endpoint outside 1..={n}")));
                }
                if u == v {
                    return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
                }
                g.add_edge(u - 1, v - 1)?;
                seen += 1;
            }
            Some(other) => return Err(Error::parse(line_no, format!("unexpected line type `{other}`"))),
            None => {}
        }
    }
    let mut g = graph.ok_or_else(|| Error::parse(1, "missing `p edge` problem line"))?;
    if seen != declared {
        return Err(Error::parse(
            header_line,
            format!("problem line declares {declared} edges, found {seen}"),
        ));
    }
    for (v, label) in labels {
        if v < g.num_vertices() {
            g.set_label(v, label);
        }
    }
    Ok(g)
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    token
        .ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what}")))
}

/// Total vertex coloring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// One past the largest color used.
    pub fn palette_size(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Covers every vertex of `g` and gives adjacent vertices distinct colors.
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.num_vertices() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn restricted_to(&self, vertices: impl IntoIterator<Item = Vertex>) -> PartialColoring {
        PartialColoring::from_pairs(vertices.into_iter().map(|v| (v, self.colors[v])))
    }

    pub fn to_partial(&self) -> PartialColoring {
        self.restricted_to(0..self.len())
    }

    /// Builds a total coloring of `n` vertices from a partial one.
    pub fn from_partial(partial: &PartialColoring, n: usize) -> Result<Self> {
        if partial.len() != n || partial.support().any(|v| v >= n) {
            return Err(Error::InvalidInput(format!("coloring must bind exactly vertices 1..={n}")));
        }
        Ok(Coloring::new(partial.iter().map(|(_, c)| c).collect()))
    }

    pub fn to_text(&self) -> String {
        self.to_partial().to_text()
    }
}

/// Sparse vertex-to-color map.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialColoring {
    colors: BTreeMap<Vertex, Color>,
}

impl PartialColoring {
    pub fn new() -> Self {
        PartialColoring::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Color)>) -> Self {
        PartialColoring {
            colors: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    pub fn insert(&mut self, v: Vertex, c: Color) -> Option<Color> {
        self.colors.insert(v, c)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    pub fn is_restriction_of(&self, total: &Coloring) -> bool {
        self.iter().all(|(v, c)| total.colors.get(v) == Some(&c))
    }

    pub fn to_dense(&self, n: usize) -> Vec<Option<Color>> {
        let mut out = vec![None; n];
        for (v, c) in self.iter() {
            if v < n {
                out[v] = Some(c);
            }
        }
        out
    }

    /// One `v <vertex> <color>` line per bound vertex, vertices 1-based.
    pub fn to_text(&self) -> String {
        self.iter().map(|(v, c)| format!("v {} {}\n", v + 1, c)).collect()
    }
}

/// Parses `v <vertex> <color>` lines (1-based vertices). `c` lines are
/// comments.
pub fn parse_coloring(text: &str) -> Result<PartialColoring> {
    let mut out = PartialColoring::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        if parts.next() != Some("v") {
            return Err(Error::parse(line_no, "expected `v <vertex> <color>`"));
        }
        let v = parse_count(parts.next(), line_no, "vertex")?;
        let c = parse_count(parts.next(), line_no, "color")?;
        if parts.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens after color"));
        }
        if v == 0 {
            return Err(Error::parse(line_no, "vertices are numbered from 1"));
        }
        if out.insert(v - 1, c).is_some() {
            return Err(Error::parse(line_no, format!("vertex {v} colored twice")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_normalized_and_deduplicated() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(2, 0).unwrap());
        assert!(!g.add_edge(0, 2).unwrap());
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn dimacs_round_trip_keeps_labels() {
        let mut g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        g.set_label(1, "w1");
        let text = g.to_dimacs();
        assert!(text.contains("p edge 3 3\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("e 1 2\np edge 2 1\n").is_err());
        assert!(parse_graph("p cnf 2 1\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn coloring_text_round_trip() {
        let c = Coloring::new(vec![0, 2, 1]);
        assert_eq!(c.to_text(), "v 1 0\nv 2 2\nv 3 1\n");
        let p = parse_coloring(&c.to_text()).unwrap();
        assert_eq!(Coloring::from_partial(&p, 3).unwrap(), c);
        assert!(Coloring::from_partial(&p, 4).is_err());
        assert!(parse_coloring("v 1 0\nv 1 1\n").is_err());
        assert!(parse_coloring("v 0 1\n").is_err());
    }

    #[test]
    fn properness() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Coloring::new(vec![0, 1, 0]).is_proper(&g));
        assert!(!Coloring::new(vec![0, 0, 1]).is_proper(&g));
        assert!(!Coloring::new(vec![0, 1]).is_proper(&g));
    }
}
