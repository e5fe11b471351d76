use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: missing `vertices <n>` header before edges")]
    MissingHeader { line: usize },
    #[error("missing `vertices <n>` header")]
    NoHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u},{v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("random trees need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
}

/// A simple undirected graph on vertices `1..=n`.
///
/// Edges are stored as `(min, max)` pairs in a sorted set, so edge input
/// order never affects anything downstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Self {
            n,
            edges: BTreeSet::new(),
        };
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<(), GraphError> {
        for vertex in [u, v] {
            if vertex == 0 || vertex > self.n {
                return Err(GraphError::VertexOutOfRange {
                    line,
                    vertex,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::LoopEdge { line, vertex: u });
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        Ok(())
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i, i + 1))).expect("path is well-formed")
    }

    /// Star with centre 1 and leaves `2..=n`.
    pub fn star(n: usize) -> Self {
        Self::new(n, (2..=n).map(|i| (1, i))).expect("star is well-formed")
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("cycle is well-formed for n >= 3")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(min, max)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length");
        Self::new(self.n, self.edges().map(|(u, v)| (perm[u - 1], perm[v - 1])))
    }

    /// Serializes to the text format accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

/// Parses the graph text format:
///
/// ```text
/// # optional comments
/// vertices 3
/// edge 1 2
/// edge 2 3
/// ```
///
/// Blank lines are ignored. Tokens are separated by ASCII spaces.
pub fn parse_graph(bytes: &[u8]) -> Result<Graph, GraphError> {
    let text = std::str::from_utf8(bytes).map_err(|_| GraphError::NotUtf8)?;
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim_end_matches('\r');
        if content.trim().is_empty() || content.trim_start().starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split(' ').filter(|t| !t.is_empty()).collect();
        let malformed = |message: &str| GraphError::Malformed {
            line,
            message: message.to_string(),
        };
        let number = |tok: &str| {
            tok.parse::<usize>().map_err(|_| GraphError::Malformed {
                line,
                message: format!("expected a non-negative integer, found `{tok}`"),
            })
        };
        match tokens.as_slice() {
            ["vertices", n] => {
                if graph.is_some() {
                    return Err(malformed("repeated `vertices` header"));
                }
                let n = number(n)?;
                if n == 0 {
                    return Err(malformed("vertex count must be at least 1"));
                }
                graph = Some(Graph {
                    n,
                    edges: BTreeSet::new(),
                });
            }
            ["edge", u, v] => {
                let g = graph.as_mut().ok_or(GraphError::MissingHeader { line })?;
                g.add_edge(number(u)?, number(v)?, line)?;
            }
            ["vertices", ..] => return Err(malformed("expected `vertices <n>`")),
            ["edge", ..] => return Err(malformed("expected `edge <u> <v>`")),
            _ => return Err(malformed(&format!("unrecognized line `{content}`"))),
        }
    }
    graph.ok_or(GraphError::NoHeader)
}

/// Connectivity and tree verdicts for a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub connected: bool,
    pub is_tree: bool,
}

pub fn validate(g: &Graph) -> Validation {
    let mut adjacency = vec![Vec::new(); g.n + 1];
    for (u, v) in g.edges() {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let mut seen = vec![false; g.n + 1];
    let mut queue = VecDeque::from([1usize]);
    seen[1] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    let connected = reached == g.n;
    Validation {
        connected,
        is_tree: connected && g.edge_count() + 1 == g.n,
    }
}

/// A directed arrow `source -> target` of the doubled quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn reversed(self) -> Self {
        Self {
            source: self.target,
            target: self.source,
        }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// The doubled quiver of a graph: one arrow in each direction per edge,
/// sorted by `(source, target)`. This order indexes arrows everywhere
/// downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_index(&self, source: usize, target: usize) -> Option<usize> {
        self.arrows.binary_search(&Arrow { source, target }).ok()
    }

    /// Index of the arrow running the other way along the same edge.
    pub fn reverse_index(&self, arrow: usize) -> usize {
        let a = self.arrows[arrow];
        self.arrow_index(a.target, a.source)
            .expect("doubled quiver contains both directions")
    }
}

pub fn double_quiver(g: &Graph) -> Quiver {
    let mut arrows: Vec<Arrow> = g
        .edges()
        .flat_map(|(u, v)| {
            [
                Arrow { source: u, target: v },
                Arrow { source: v, target: u },
            ]
        })
        .collect();
    arrows.sort_unstable();
    Quiver {
        vertex_count: g.n,
        arrows,
    }
}
