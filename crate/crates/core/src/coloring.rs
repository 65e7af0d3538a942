//! Ordered partitions of the vertex set.

use std::fmt;

use crate::error::DomainError;
use crate::graph::{check_size, Vertex};
use crate::perm::Permutation;

/// A surjective map from vertices to colors `0..m`.
///
/// Cell `k` is the preimage of color `k`; cells are kept with their vertices
/// in increasing order. A discrete coloring doubles as the permutation
/// `v ↦ π(v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<u32>,
    cells: Vec<Vec<Vertex>>,
}

impl Coloring {
    /// The coloring with a single cell.
    pub fn unit(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            cells: if n == 0 {
                Vec::new()
            } else {
                vec![(0..n as Vertex).collect()]
            },
        }
    }

    pub fn discrete_identity(n: usize) -> Self {
        Coloring {
            colors: (0..n as u32).collect(),
            cells: (0..n as Vertex).map(|v| vec![v]).collect(),
        }
    }

    pub fn from_colors(colors: Vec<u32>) -> Result<Self, DomainError> {
        let n = colors.len();
        let m = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        if m > n {
            return Err(DomainError::NotSurjective { colors: m });
        }
        let mut cells = vec![Vec::new(); m];
        for (v, &c) in colors.iter().enumerate() {
            cells[c as usize].push(v as Vertex);
        }
        if cells.iter().any(Vec::is_empty) {
            return Err(DomainError::NotSurjective { colors: m });
        }
        Ok(Coloring { colors, cells })
    }

    /// Builds a coloring from its cells in color order. Every vertex must
    /// appear exactly once; the order inside each cell is irrelevant.
    pub fn from_cells(n: usize, cells: Vec<Vec<Vertex>>) -> Result<Self, DomainError> {
        let mut colors = vec![u32::MAX; n];
        let mut seen = 0usize;
        for (k, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(DomainError::NotSurjective { colors: cells.len() });
            }
            for &v in cell {
                let slot = colors
                    .get_mut(v as usize)
                    .ok_or(DomainError::VertexOutOfRange { vertex: v, n })?;
                if *slot != u32::MAX {
                    return Err(DomainError::DuplicateVertex(v));
                }
                *slot = k as u32;
                seen += 1;
            }
        }
        if seen != n {
            return Err(DomainError::SizeMismatch {
                expected: n,
                found: seen,
            });
        }
        Coloring::from_colors(colors)
    }

    /// Assembles a coloring from cells already known to be a valid ordered
    /// partition with sorted cells.
    pub(crate) fn from_sorted_cells_unchecked(n: usize, cells: Vec<Vec<Vertex>>) -> Self {
        let mut colors = vec![0; n];
        for (k, cell) in cells.iter().enumerate() {
            debug_assert!(cell.windows(2).all(|w| w[0] < w[1]));
            for &v in cell {
                colors[v as usize] = k as u32;
            }
        }
        Coloring { colors, cells }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Color of each vertex, indexed by vertex.
    #[inline]
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> u32 {
        self.colors[v as usize]
    }

    pub fn cells(&self) -> &[Vec<Vertex>] {
        &self.cells
    }

    pub fn cell(&self, k: usize) -> &[Vertex] {
        &self.cells[k]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.colors.len()
    }

    /// Reads a discrete coloring as the permutation `v ↦ π(v)`.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.is_discrete() {
            Some(Permutation::from_images_unchecked(self.colors.clone()))
        } else {
            None
        }
    }

    /// `π^σ`, defined by `π^σ(v^σ) = π(v)`.
    pub fn act(&self, sigma: &Permutation) -> Result<Coloring, DomainError> {
        check_size(self.n(), sigma.len())?;
        let mut colors = vec![0; self.n()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[sigma.apply(v as Vertex) as usize] = c;
        }
        let cells = self
            .cells
            .iter()
            .map(|cell| {
                let mut c: Vec<Vertex> = cell.iter().map(|&v| sigma.apply(v)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Coloring { colors, cells })
    }

    /// `self ⪯ coarser`: whenever `coarser(u) < coarser(v)`, also
    /// `self(u) < self(v)`.
    pub fn is_finer(&self, coarser: &Coloring) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        // For every split point k of `coarser`, all colors of `self` on cells
        // 0..=k must lie strictly below those on cells k+1...
        let spans: Vec<(u32, u32)> = coarser
            .cells
            .iter()
            .map(|cell| {
                cell.iter().fold((u32::MAX, 0), |(lo, hi), &v| {
                    let c = self.colors[v as usize];
                    (lo.min(c), hi.max(c))
                })
            })
            .collect();
        let mut suffix_min = vec![u32::MAX; spans.len() + 1];
        for k in (0..spans.len()).rev() {
            suffix_min[k] = suffix_min[k + 1].min(spans[k].0);
        }
        let mut prefix_max = 0u32;
        for k in 0..spans.len().saturating_sub(1) {
            prefix_max = prefix_max.max(spans[k].1);
            if prefix_max >= suffix_min[k + 1] {
                return false;
            }
        }
        true
    }

    /// `self ≺ coarser`.
    pub fn is_strictly_finer(&self, coarser: &Coloring) -> bool {
        self != coarser && self.is_finer(coarser)
    }

    /// Index of the cell containing `v`.
    pub fn cell_of(&self, v: Vertex) -> usize {
        self.colors[v as usize] as usize
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{cell:?}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(n: usize, c: &[&[Vertex]]) -> Coloring {
        Coloring::from_cells(n, c.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(Coloring::from_colors(vec![0, 2, 2]).is_err());
        assert!(Coloring::from_colors(vec![3, 0, 1]).is_err());
        assert!(Coloring::from_cells(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Coloring::from_cells(3, vec![vec![0], vec![1]]).is_err());
        let c = cells(4, &[&[3, 0], &[1, 2]]);
        assert_eq!(c.colors(), &[0, 1, 1, 0]);
        assert_eq!(c.cell(0), &[0, 3]);
    }

    #[test]
    fn discreteness() {
        assert!(!Coloring::unit(3).is_discrete());
        assert!(Coloring::discrete_identity(3).is_discrete());
        assert!(Coloring::unit(1).is_discrete());
        assert!(Coloring::unit(0).is_discrete());
    }

    #[test]
    fn act_identity_and_swap() {
        let pi = cells(3, &[&[0], &[1, 2]]);
        assert_eq!(pi.act(&Permutation::identity(3)).unwrap(), pi);
        // [{1},{2,3}] under the swap 1<->3 (one-based) is [{3},{1,2}]
        let s = Permutation::from_images(vec![2, 1, 0]).unwrap();
        let r = pi.act(&s).unwrap();
        assert_eq!(r, cells(3, &[&[2], &[0, 1]]));
        assert_eq!(r.colors(), &[1, 1, 0]);
    }

    #[test]
    fn act_on_discrete_is_inverse_then_pi() {
        let pi = Coloring::from_colors(vec![2, 0, 3, 1]).unwrap();
        let s = Permutation::from_images(vec![1, 3, 0, 2]).unwrap();
        let lhs = pi.act(&s).unwrap().to_permutation().unwrap();
        let rhs = s.inverse().compose(&pi.to_permutation().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn finer_examples() {
        let a = cells(3, &[&[1], &[0, 2]]);
        assert!(a.is_finer(&a));
        assert!(a.is_finer(&Coloring::unit(3)));
        let b = cells(3, &[&[0], &[1, 2]]);
        let c = cells(3, &[&[1], &[0, 2]]);
        assert!(!b.is_finer(&c));
        assert!(!Coloring::unit(3).is_finer(&b));
        assert!(b.is_strictly_finer(&Coloring::unit(3)));
        assert!(!b.is_strictly_finer(&b));
    }

    #[test]
    fn finer_matches_pairwise_definition() {
        // exhaustive over all colorings of 4 vertices
        let mut all = Vec::new();
        for code in 0..256u32 {
            let colors: Vec<u32> = (0..4).map(|i| code >> (2 * i) & 3).collect();
            if let Ok(c) = Coloring::from_colors(colors) {
                all.push(c);
            }
        }
        assert_eq!(all.len(), 75);
        for p in &all {
            for q in &all {
                let brute = (0..4).all(|u| {
                    (0..4).all(|v| q.color(u) >= q.color(v) || p.color(u) < p.color(v))
                });
                assert_eq!(p.is_finer(q), brute, "{p:?} vs {q:?}");
            }
        }
    }
}
