//! Sampled graphs, their directed versions, and the plain-text edge-list format.
//!
//! ```text
//! n m          undirected header, then m lines "i j" with 0 <= i < j < n
//! d n m        directed header, then m lines "i j" for the arc i -> j
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected simple graph drawn from a graphon, with node coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    pub n: usize,
    pub coordinates: Vec<f64>,
    /// Sorted pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub seed: u64,
}

impl SampledGraph {
    pub fn directify(&self) -> DirectedGraph {
        directify_edges(self.n, &self.edges)
    }

    pub fn to_edge_list(&self) -> String {
        write_undirected(self.n, &self.edges)
    }

    /// Sidecar listing `i x_i` per line, full round-trip precision.
    pub fn coordinates_sidecar(&self) -> String {
        let mut s = String::new();
        for (i, x) in self.coordinates.iter().enumerate() {
            let _ = writeln!(s, "{i} {x:?}");
        }
        s
    }
}

/// Digraph on `n` vertices; arcs sorted and unique. Self-loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        if let Some(&(i, j)) = arcs.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::Parse(format!(
                "arc ({i}, {j}) out of range for {n} vertices"
            )));
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.binary_search(&(i, j)).is_ok()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, _) in &self.arcs {
            d[i] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, j) in &self.arcs {
            d[j] += 1;
        }
        d
    }

    /// Same digraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::new(self.n, self.arcs.iter().map(|&(i, j)| (perm[i], perm[j])))
            .expect("a permutation keeps arcs in range")
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("d {} {}\n", self.n, self.arcs.len());
        for &(i, j) in &self.arcs {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }
}

/// Replaces every undirected edge by two opposite arcs.
pub fn directify_edges(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
    let arcs = edges.iter().flat_map(|&(i, j)| [(i, j), (j, i)]);
    DirectedGraph::new(n, arcs).expect("edges are in range")
}

pub fn write_undirected(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for &(i, j) in edges {
        let _ = writeln!(s, "{i} {j}");
    }
    s
}

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Undirected {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    Directed(DirectedGraph),
}

impl GraphFile {
    /// The digraph to decide on: undirected files are directified.
    pub fn into_directed(self) -> DirectedGraph {
        match self {
            GraphFile::Undirected { n, edges } => directify_edges(n, &edges),
            GraphFile::Directed(d) => d,
        }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (directed, n, m) = match fields.as_slice() {
        ["d", n, m] => (true, parse_usize(n, 1)?, parse_usize(m, 1)?),
        [n, m] => (false, parse_usize(n, 1)?, parse_usize(m, 1)?),
        _ => return Err(Error::Parse(format!("bad header {header:?}"))),
    };

    let mut pairs = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let [i, j] = f.as_slice() else {
            return Err(Error::Parse(format!(
                "line {lineno}: expected two vertex indices"
            )));
        };
        let (i, j) = (parse_usize(i, lineno)?, parse_usize(j, lineno)?);
        if i >= n || j >= n {
            return Err(Error::Parse(format!(
                "line {lineno}: vertex out of range for n = {n}"
            )));
        }
        if !directed && i == j {
            return Err(Error::Parse(format!(
                "line {lineno}: self-loop in undirected graph"
            )));
        }
        pairs.push((i, j));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            pairs.len()
        )));
    }

    if directed {
        Ok(GraphFile::Directed(DirectedGraph::new(n, pairs)?))
    } else {
        let mut edges: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Ok(GraphFile::Undirected { n, edges })
    }
}

fn parse_usize(s: &str, lineno: usize) -> Result<usize> {
    s.parse().map_err(|_| {
        Error::Parse(format!(
            "line {lineno}: {s:?} is not a non-negative integer"
        ))
    })
}
