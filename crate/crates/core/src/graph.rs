use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`, adjacency stored as bit rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        SmallGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SmallGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{parts[0], parts[1], ...}` with parts laid out consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut owner = Vec::with_capacity(n);
        for (i, &size) in parts.iter().enumerate() {
            owner.extend(std::iter::repeat(i).take(size));
        }
        let mut g = SmallGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if owner[u] != owner[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SmallGraph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(Error::Malformed(format!("self-loop at vertex {}", u + 1)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u * self.words..(u + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Missing pairs `(u, v)` with `u < v`, lexicographically ordered.
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

    pub fn complement(&self) -> Self {
        let mut g = SmallGraph::empty(self.n);
        for (u, v) in self.non_edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// One `u v` pair per line, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses the edge-list text format. Blank lines and `#` comments are
    /// skipped. The order is the largest of `min_order` and the largest
    /// vertex id mentioned.
    pub fn parse_edge_list(text: &str, min_order: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Malformed(format!("line {}: expected \"u v\"", lineno + 1));
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(bad());
            };
            let u: usize = a.parse().map_err(|_| bad())?;
            let v: usize = b.parse().map_err(|_| bad())?;
            if u == 0 || v == 0 {
                return Err(Error::Malformed(format!(
                    "line {}: vertex ids are 1-based",
                    lineno + 1
                )));
            }
            edges.push((u - 1, v - 1));
        }
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
            .max(min_order);
        SmallGraph::from_edges(n, &edges)
    }
}
