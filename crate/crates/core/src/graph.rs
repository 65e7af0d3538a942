//! Undirected simple graphs over vertices `0..n` with a dense adjacency matrix.

use std::cmp::Ordering;
use std::fmt;

use crate::coloring::Coloring;
use crate::error::DomainError;
use crate::perm::Permutation;

/// A vertex index, zero-based.
pub type Vertex = u32;

/// Undirected graph without loops or parallel edges.
///
/// Rows of the adjacency matrix are packed into 64-bit words with column 0 in
/// the most significant bit, so comparing the packed words in order is the
/// same as comparing the full matrices bit by bit in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate and reversed edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, DomainError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(DomainError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(DomainError::SelfLoop(u));
            }
            g.set_bit(u, v);
            g.set_bit(v, u);
        }
        g.rebuild_lists();
        Ok(g)
    }

    fn bit(&self, u: Vertex, v: Vertex) -> (usize, u64) {
        let v = v as usize;
        (u as usize * self.words + v / 64, 1u64 << (63 - v % 64))
    }

    fn set_bit(&mut self, u: Vertex, v: Vertex) {
        let (w, mask) = self.bit(u, v);
        self.rows[w] |= mask;
    }

    fn rebuild_lists(&mut self) {
        for u in 0..self.n {
            let row = &self.rows[u * self.words..(u + 1) * self.words];
            let list = &mut self.adj[u];
            list.clear();
            for (wi, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let lz = bits.leading_zeros() as usize;
                    list.push((wi * 64 + lz) as Vertex);
                    bits &= !(1u64 << (63 - lz));
                }
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (w, mask) = self.bit(u, v);
        self.rows[w] & mask != 0
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            let u = u as Vertex;
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// `G^σ`: the edge `(u, v)` becomes `(u^σ, v^σ)`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Graph, DomainError> {
        check_size(self.n, sigma.len())?;
        let mut g = Graph::empty(self.n);
        for (u, list) in self.adj.iter().enumerate() {
            let su = sigma.apply(u as Vertex);
            for &v in list {
                g.set_bit(su, sigma.apply(v));
            }
        }
        g.rebuild_lists();
        Ok(g)
    }

    /// `G^π` for a discrete coloring read as the permutation `v ↦ π(v)`.
    pub fn relabel_by_coloring(&self, pi: &Coloring) -> Result<Graph, DomainError> {
        let sigma = pi.to_permutation().ok_or(DomainError::NotDiscrete)?;
        self.relabel(&sigma)
    }

    /// Row-major lexicographic comparison of the adjacency matrices; a set bit
    /// beats a clear one.
    pub fn compare(&self, other: &Graph) -> Result<Ordering, DomainError> {
        check_size(self.n, other.n)?;
        Ok(self.rows.cmp(&other.rows))
    }

    /// Packed adjacency rows, `words_per_row()` words per vertex.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

pub(crate) fn check_size(expected: usize, found: usize) -> Result<(), DomainError> {
    if expected == found {
        Ok(())
    } else {
        Err(DomainError::SizeMismatch { expected, found })
    }
}

/// A graph paired with a vertex coloring of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    graph: Graph,
    coloring: Coloring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: Coloring) -> Result<Self, DomainError> {
        check_size(graph.n(), coloring.n())?;
        Ok(ColoredGraph { graph, coloring })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// `(G, π)^σ = (G^σ, π^σ)`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<ColoredGraph, DomainError> {
        Ok(ColoredGraph {
            graph: self.graph.relabel(sigma)?,
            coloring: self.coloring.act(sigma)?,
        })
    }

    /// Whether `σ` fixes both the graph and the coloring.
    pub fn is_automorphism(&self, sigma: &Permutation) -> bool {
        if sigma.len() != self.graph.n() {
            return false;
        }
        let colors = self.coloring.colors();
        (0..self.graph.n() as Vertex).all(|v| {
            colors[sigma.apply(v) as usize] == colors[v as usize]
                && self
                    .graph
                    .neighbors(v)
                    .iter()
                    .all(|&u| self.graph.has_edge(sigma.apply(v), sigma.apply(u)))
        })
    }
}
