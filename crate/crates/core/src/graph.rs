//! Undirected, unweighted graph instances.
//!
//! Files number vertices from 1; everything inside the crate numbers them from 0.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Edges as `(i, j)` with `i < j`, 0-indexed.
    edges: BTreeSet<(usize, usize)>,
}

/// Supported input formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// First line `n`, then one 1-indexed `i j` pair per line.
    EdgeList,
    /// `{"n":3,"adj":[[0,1,1],[1,0,1],[1,1,0]]}`
    AdjacencyJson,
    /// DIMACS `.col`: `p edge n m` and `e i j` lines; everything else ignored.
    DimacsCol,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" => Ok(GraphFormat::EdgeList),
            "adjacency-json" => Ok(GraphFormat::AdjacencyJson),
            "dimacs-col" | "dimacs" => Ok(GraphFormat::DimacsCol),
            other => Err(Error::Parameter(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AdjacencyDoc {
    n: usize,
    adj: Vec<Vec<u8>>,
}

impl Graph {
    /// Build from 0-indexed edges. Each unordered pair may appear once.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({}, {}) references a vertex outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop on vertex {}", a + 1)));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::Validation(format!(
                    "duplicate edge ({}, {})",
                    e.0 + 1,
                    e.1 + 1
                )));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter("a cycle needs at least 3 vertices".into()));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Validate a 0/1 adjacency matrix: square, symmetric, zero diagonal.
    pub fn from_adjacency(adj: &[Vec<u8>]) -> Result<Self> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (i, row) in adj.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "adjacency row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if a > 1 {
                    return Err(Error::Validation(format!(
                        "adjacency entry a({},{}) = {a} is not 0/1",
                        i + 1,
                        j + 1
                    )));
                }
                if i == j && a != 0 {
                    return Err(Error::Validation(format!(
                        "self-loop: a({},{}) = 1",
                        i + 1,
                        j + 1
                    )));
                }
                if j > i {
                    if a != adj[j][i] {
                        return Err(Error::Validation(format!(
                            "asymmetric adjacency: a({},{}) = {a} but a({},{}) = {}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1,
                            adj[j][i]
                        )));
                    }
                    if a == 1 {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Symmetric 0/1 matrix with zero diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.n]; self.n];
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    /// Edge-list text (1-indexed), parseable by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        s
    }

    pub fn to_adjacency_json(&self) -> String {
        serde_json::to_string(&AdjacencyDoc {
            n: self.n,
            adj: self.adjacency(),
        })
        .expect("adjacency document serializes")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, edges=[", self.n)?;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}-{}", a + 1, b + 1)?;
        }
        f.write_str("])")
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn one_based(tok: &str, line: usize, n: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a vertex number, found `{tok}`")))?;
    if v == 0 || v > n {
        return Err(Error::Validation(format!(
            "line {line}: vertex {v} out of range 1..={n}"
        )));
    }
    Ok(v - 1)
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = significant_lines(text);
    let (line, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty edge list"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(line, format!("expected vertex count, found `{first}`")))?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(line, format!("expected `i j`, found `{l}`")));
        }
        edges.push((one_based(toks[0], line, n)?, one_based(toks[1], line, n)?));
    }
    Graph::new(n, edges)
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            Some(&"p") => {
                if toks.len() < 3 || !toks[1].starts_with("edge") && toks[1] != "col" {
                    return Err(Error::parse(line, "expected `p edge <n> <m>`"));
                }
                let count: usize = toks[2]
                    .parse()
                    .map_err(|_| Error::parse(line, "bad vertex count"))?;
                n = Some(count);
            }
            Some(&"e") => {
                let n = n.ok_or_else(|| Error::parse(line, "`e` line before `p` line"))?;
                if toks.len() < 3 {
                    return Err(Error::parse(line, "expected `e <i> <j>`"));
                }
                let a = one_based(toks[1], line, n)?;
                let b = one_based(toks[2], line, n)?;
                if a == b {
                    return Err(Error::Validation(format!(
                        "line {line}: self-loop on vertex {}",
                        a + 1
                    )));
                }
                // both orientations of an edge commonly appear in .col files
                edges.insert((a.min(b), a.max(b)));
            }
            _ => {}
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `p edge` line"))?;
    Graph::new(n, edges)
}

/// Parse graph text in the given format.
///
/// ```
/// use qudit_color::graph::{parse_graph, GraphFormat};
/// let k3 = parse_graph("3\n1 2\n2 3\n1 3", GraphFormat::EdgeList).unwrap();
/// assert_eq!(k3.num_edges(), 3);
/// ```
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    if text.trim().is_empty() {
        return Err(Error::parse(1, "empty graph text"));
    }
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::DimacsCol => parse_dimacs(text),
        GraphFormat::AdjacencyJson => {
            let doc: AdjacencyDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
            if doc.adj.len() != doc.n {
                return Err(Error::Validation(format!(
                    "n = {} but adjacency has {} rows",
                    doc.n,
                    doc.adj.len()
                )));
            }
            Graph::from_adjacency(&doc.adj)
        }
    }
}
