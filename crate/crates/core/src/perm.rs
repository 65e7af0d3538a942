use std::fmt;

use crate::error::DomainError;
use crate::graph::{check_size, Vertex};

/// A permutation of `0..n`, stored as the image of each vertex.
///
/// Composition reads left to right: `a.compose(b)` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<Vertex>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as Vertex).collect(),
        }
    }

    pub fn from_images(images: Vec<Vertex>) -> Result<Self, DomainError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            match seen.get_mut(v as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(DomainError::NotBijection),
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Vertex>) -> Self {
        Permutation { images }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.images[v as usize]
    }

    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as Vertex == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (v, &img) in self.images.iter().enumerate() {
            inv[img as usize] = v as Vertex;
        }
        Permutation { images: inv }
    }

    /// `v ↦ (v^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, DomainError> {
        check_size(self.len(), other.len())?;
        Ok(Permutation {
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    /// Pointwise image of a vertex sequence.
    pub fn apply_seq(&self, seq: &[Vertex]) -> Vec<Vertex> {
        seq.iter().map(|&v| self.apply(v)).collect()
    }

    /// Whether every vertex of `seq` is a fixed point.
    pub fn fixes_pointwise(&self, seq: &[Vertex]) -> bool {
        seq.iter().all(|&v| self.apply(v) == v)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[Vertex]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::from_images(vec![0, 0, 1]),
            Err(DomainError::NotBijection)
        );
        assert_eq!(
            Permutation::from_images(vec![0, 3, 1]),
            Err(DomainError::NotBijection)
        );
    }

    #[test]
    fn compose_examples() {
        let s = p(&[2, 0, 3, 1]);
        assert_eq!(s.compose(&Permutation::identity(4)).unwrap(), s);
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        // (1 2) then (2 3), one-based: images [3,1,2]
        let r = p(&[1, 0, 2]).compose(&p(&[0, 2, 1])).unwrap();
        assert_eq!(r.images(), &[2, 0, 1]);
        assert!(s.compose(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn sequence_action() {
        let s = p(&[2, 1, 0]);
        assert_eq!(s.apply_seq(&[0, 1]), vec![2, 1]);
        assert!(s.fixes_pointwise(&[1]));
        assert!(!s.fixes_pointwise(&[0, 1]));
    }
}
