//! Label-invariant hashing of colored graphs and the per-node invariant.
//!
//! The hash digests the quotient graph: the word stream `m`, then the cell
//! sizes, then the edge counts between cells `i <= j` in lexicographic pair
//! order. Words are fed to 64-bit FNV-1a as eight big-endian bytes each.

use crate::coloring::Coloring;
use crate::graph::Graph;

pub const FNV_OFFSET: u64 = 14695981039346656037;
pub const FNV_PRIME: u64 = 1099511628211;

/// Cells as vertices, labelled by position and size; edges labelled by the
/// number of graph edges between the two cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub cell_sizes: Vec<u64>,
    /// Upper triangle `(i, j)`, `i <= j`, row by row.
    pub edge_counts: Vec<u64>,
}

impl QuotientGraph {
    pub fn cell_count(&self) -> usize {
        self.cell_sizes.len()
    }

    /// Edges between cells `i` and `j` (order irrelevant).
    pub fn count(&self, i: usize, j: usize) -> u64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let offset = tri_offset(self.cell_count(), i);
        self.edge_counts[offset + (j - i)]
    }

    /// The word stream that is hashed.
    pub fn words(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(self.cell_count() as u64)
            .chain(self.cell_sizes.iter().copied())
            .chain(self.edge_counts.iter().copied())
    }

    pub fn digest(&self) -> u64 {
        fnv1a_words(self.words())
    }
}

fn tri_offset(m: usize, i: usize) -> usize {
    // sum_{r < i} (m - r)
    i * m - i * i.saturating_sub(1) / 2
}

pub fn fnv1a_words<I: IntoIterator<Item = u64>>(words: I) -> u64 {
    let mut h = FNV_OFFSET;
    for w in words {
        for b in w.to_be_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
    }
    h
}

pub fn quotient_graph(g: &Graph, pi: &Coloring) -> QuotientGraph {
    let m = pi.num_cells();
    let mut edge_counts = vec![0u64; m * (m + 1) / 2];
    for (u, v) in g.edges() {
        let (a, b) = (pi.cell_of(u), pi.cell_of(v));
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        edge_counts[tri_offset(m, i) + (j - i)] += 1;
    }
    QuotientGraph {
        cell_sizes: pi.cells().iter().map(|c| c.len() as u64).collect(),
        edge_counts,
    }
}

/// `hash(G, π)`; invariant under relabelling `(G, π)` by any permutation.
pub fn hash_colored(g: &Graph, pi: &Coloring) -> u64 {
    quotient_graph(g, pi).digest()
}

/// `φ̄(ν) = [h_1, …, h_k]`, compared lexicographically with a proper prefix
/// below its extensions. The root carries the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeInvariant(pub Vec<u64>);

impl NodeInvariant {
    pub fn root() -> Self {
        NodeInvariant(Vec::new())
    }

    pub fn extend(&self, h: u64) -> Self {
        let mut v = self.0.clone();
        v.push(h);
        NodeInvariant(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hashes(&self) -> &[u64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;
    use crate::refine::refine;

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let k3 = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let q = quotient_graph(&k3, &Coloring::unit(3));
        assert_eq!(q.cell_sizes, vec![3]);
        assert_eq!(q.edge_counts, vec![3]);

        let pi = Coloring::from_cells(4, vec![vec![0], vec![2], vec![1, 3]]).unwrap();
        let q = quotient_graph(&c4(), &pi);
        assert_eq!(q.cell_sizes, vec![1, 1, 2]);
        // (1,1) (1,2) (1,3) (2,2) (2,3) (3,3)
        assert_eq!(q.edge_counts, vec![0, 0, 2, 0, 2, 0]);
        assert_eq!(q.count(2, 0), 2);
        assert_eq!(q.count(1, 2), 2);
    }

    #[test]
    fn discrete_quotient_reproduces_adjacency() {
        let g = c4();
        let pi = Coloring::discrete_identity(4);
        let q = quotient_graph(&g, &pi);
        for u in 0..4 {
            for v in u..4 {
                assert_eq!(q.count(u, v) == 1, g.has_edge(u as u32, v as u32));
            }
        }
    }

    #[test]
    fn fnv_reference_vectors() {
        // FNV-1a 64 of the empty input and of a single zero byte
        assert_eq!(fnv1a_words([]), 0xcbf29ce484222325);
        let mut h = FNV_OFFSET;
        h ^= 0;
        h = h.wrapping_mul(FNV_PRIME);
        assert_eq!(h, 0xaf63bd4c8601b7df);
    }

    #[test]
    fn c4_golden_digest() {
        // reference value computed by an independent script over the word
        // stream [3, 1,1,2, 0,0,2,0,2,0]
        let pi = Coloring::from_cells(4, vec![vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(hash_colored(&c4(), &pi), C4_GOLDEN);
    }

    const C4_GOLDEN: u64 = 5407533569738538226;

    #[test]
    fn invariant_extend_and_order() {
        let r = NodeInvariant::root();
        assert_eq!(r.extend(7), NodeInvariant(vec![7]));
        assert_eq!(r.extend(7).extend(9), NodeInvariant(vec![7, 9]));
        let a = NodeInvariant(vec![5]);
        assert_eq!(a.cmp(&NodeInvariant(vec![5])), Ordering::Equal);
        assert_eq!(a.cmp(&NodeInvariant(vec![5, 1])), Ordering::Less);
        assert_eq!(
            NodeInvariant(vec![2, 9]).cmp(&NodeInvariant(vec![2, 3])),
            Ordering::Greater
        );
        assert!(NodeInvariant::root() < NodeInvariant(vec![0]));
    }

    #[test]
    fn invariant_along_c4_path() {
        let g = c4();
        let unit = Coloring::unit(4);
        let h1 = hash_colored(&g, &refine(&g, &unit, &[0]));
        let h2 = hash_colored(&g, &refine(&g, &unit, &[0, 1]));
        let inv = NodeInvariant::root().extend(h1).extend(h2);
        assert_eq!(inv.hashes(), &[h1, h2]);
        assert_ne!(h1, h2);
    }
}
