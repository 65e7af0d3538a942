//! Facts about the search tree and their integer keys.

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};

/// A statement derived by a rule.
///
/// Keys start with a type code (the discriminant order below), followed by
/// the parameters: sequences and sets length-prefixed, colorings as one
/// color per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fact {
    /// `R̄(ν) = π`.
    REqual { nu: Vec<Vertex>, pi: Coloring },
    /// `R̄(ν) ⪯ π`.
    RFiner { nu: Vec<Vertex>, pi: Coloring },
    /// `T̄(ν) = W`.
    TargetIs { nu: Vec<Vertex>, cell: Vec<Vertex> },
    /// `Ω` lies inside one orbit at `ν`.
    OrbitSubset { nu: Vec<Vertex>, omega: Vec<Vertex> },
    /// `φ̄(ν') = φ̄(ν'')`.
    PhiEqual { nu1: Vec<Vertex>, nu2: Vec<Vertex> },
    /// `ν` is not an ancestor of the canonical leaf.
    Pruned { nu: Vec<Vertex> },
    /// `ν` is an ancestor of the canonical leaf.
    OnPath { nu: Vec<Vertex> },
    /// The canonical form.
    Canonical { graph: Graph, pi: Coloring },
}

impl Fact {
    pub fn code(&self) -> u32 {
        match self {
            Fact::REqual { .. } => 0,
            Fact::RFiner { .. } => 1,
            Fact::TargetIs { .. } => 2,
            Fact::OrbitSubset { .. } => 3,
            Fact::PhiEqual { .. } => 4,
            Fact::Pruned { .. } => 5,
            Fact::OnPath { .. } => 6,
            Fact::Canonical { .. } => 7,
        }
    }

    pub fn key(&self) -> Vec<u32> {
        let mut k = vec![self.code()];
        match self {
            Fact::REqual { nu, pi } | Fact::RFiner { nu, pi } => {
                push_seq(&mut k, nu);
                k.extend_from_slice(pi.colors());
            }
            Fact::TargetIs { nu, cell: s } | Fact::OrbitSubset { nu, omega: s } => {
                push_seq(&mut k, nu);
                push_seq(&mut k, s);
            }
            Fact::PhiEqual { nu1, nu2 } => {
                push_seq(&mut k, nu1);
                push_seq(&mut k, nu2);
            }
            Fact::Pruned { nu } | Fact::OnPath { nu } => push_seq(&mut k, nu),
            Fact::Canonical { graph, pi } => {
                let edges = graph.edges();
                k.push(edges.len() as u32);
                for (u, v) in edges {
                    k.push(u);
                    k.push(v);
                }
                k.extend_from_slice(pi.colors());
            }
        }
        k
    }
}

/// `fact_key(f)`.
pub fn fact_key(f: &Fact) -> Vec<u32> {
    f.key()
}

pub(crate) fn push_seq(out: &mut Vec<u32>, s: &[Vertex]) {
    out.push(s.len() as u32);
    out.extend_from_slice(s);
}
