//! The eighteen proof rules and their integer encodings.

use crate::coloring::Coloring;
use crate::graph::Vertex;
use crate::perm::Permutation;

use super::codec::{FormatError, IntReader};
use super::fact::{push_seq, Fact};

/// A rule application as written to a proof.
///
/// Colorings are premise colorings; conclusions are recomputed by whoever
/// checks the rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    ColoringAxiom,
    Individualize { nu: Vec<Vertex>, v: Vertex, pi: Coloring },
    SplitColoring { nu: Vec<Vertex>, pi: Coloring },
    Equitable { nu: Vec<Vertex>, pi: Coloring },
    TargetCell { nu: Vec<Vertex>, pi: Coloring },
    InvariantAxiom { nu: Vec<Vertex> },
    /// `nu1 = [ν', v']`, `nu2 = [ν'', v'']`, both non-empty.
    InvariantsEqual { nu1: Vec<Vertex>, pi1: Coloring, nu2: Vec<Vertex>, pi2: Coloring },
    InvariantsEqualSym { nu1: Vec<Vertex>, nu2: Vec<Vertex> },
    OrbitsAxiom { v: Vertex, nu: Vec<Vertex> },
    MergeOrbits {
        omega1: Vec<Vertex>,
        omega2: Vec<Vertex>,
        nu: Vec<Vertex>,
        sigma: Permutation,
        w1: Vertex,
        w2: Vertex,
    },
    /// Same layout as [`Rule::InvariantsEqual`]; prunes `nu2`.
    PruneInvariant { nu1: Vec<Vertex>, pi1: Coloring, nu2: Vec<Vertex>, pi2: Coloring },
    PruneLeaf { nu1: Vec<Vertex>, pi1: Coloring, nu2: Vec<Vertex>, pi2: Coloring },
    PruneAutomorphism { nu1: Vec<Vertex>, nu2: Vec<Vertex>, sigma: Permutation },
    PruneParent { nu: Vec<Vertex>, cell: Vec<Vertex> },
    PruneOrbits { omega: Vec<Vertex>, nu: Vec<Vertex>, w1: Vertex, w2: Vertex },
    PathAxiom,
    ExtendPath { nu: Vec<Vertex>, cell: Vec<Vertex>, w: Vertex },
    CanonicalLeaf { nu: Vec<Vertex>, pi: Coloring },
}

pub const RULE_NAMES: [&str; 18] = [
    "ColoringAxiom",
    "Individualize",
    "SplitColoring",
    "Equitable",
    "TargetCell",
    "InvariantAxiom",
    "InvariantsEqual",
    "InvariantsEqualSym",
    "OrbitsAxiom",
    "MergeOrbits",
    "PruneInvariant",
    "PruneLeaf",
    "PruneAutomorphism",
    "PruneParent",
    "PruneOrbits",
    "PathAxiom",
    "ExtendPath",
    "CanonicalLeaf",
];

impl Rule {
    pub fn code(&self) -> u32 {
        match self {
            Rule::ColoringAxiom => 0,
            Rule::Individualize { .. } => 1,
            Rule::SplitColoring { .. } => 2,
            Rule::Equitable { .. } => 3,
            Rule::TargetCell { .. } => 4,
            Rule::InvariantAxiom { .. } => 5,
            Rule::InvariantsEqual { .. } => 6,
            Rule::InvariantsEqualSym { .. } => 7,
            Rule::OrbitsAxiom { .. } => 8,
            Rule::MergeOrbits { .. } => 9,
            Rule::PruneInvariant { .. } => 10,
            Rule::PruneLeaf { .. } => 11,
            Rule::PruneAutomorphism { .. } => 12,
            Rule::PruneParent { .. } => 13,
            Rule::PruneOrbits { .. } => 14,
            Rule::PathAxiom => 15,
            Rule::ExtendPath { .. } => 16,
            Rule::CanonicalLeaf { .. } => 17,
        }
    }

    pub fn name(&self) -> &'static str {
        RULE_NAMES[self.code() as usize]
    }

    /// Appends the encoding to `out`.
    pub fn encode_into(&self, out: &mut Vec<u32>) {
        out.push(self.code());
        match self {
            Rule::ColoringAxiom | Rule::PathAxiom => {}
            Rule::Individualize { nu, v, pi } => {
                push_seq(out, nu);
                out.push(*v);
                out.extend_from_slice(pi.colors());
            }
            Rule::SplitColoring { nu, pi }
            | Rule::Equitable { nu, pi }
            | Rule::TargetCell { nu, pi }
            | Rule::CanonicalLeaf { nu, pi } => {
                push_seq(out, nu);
                out.extend_from_slice(pi.colors());
            }
            Rule::InvariantAxiom { nu } => push_seq(out, nu),
            Rule::InvariantsEqual { nu1, pi1, nu2, pi2 }
            | Rule::PruneInvariant { nu1, pi1, nu2, pi2 }
            | Rule::PruneLeaf { nu1, pi1, nu2, pi2 } => {
                push_seq(out, nu1);
                out.extend_from_slice(pi1.colors());
                push_seq(out, nu2);
                out.extend_from_slice(pi2.colors());
            }
            Rule::InvariantsEqualSym { nu1, nu2 } => {
                push_seq(out, nu1);
                push_seq(out, nu2);
            }
            Rule::OrbitsAxiom { v, nu } => {
                out.push(*v);
                push_seq(out, nu);
            }
            Rule::MergeOrbits { omega1, omega2, nu, sigma, w1, w2 } => {
                push_seq(out, omega1);
                push_seq(out, omega2);
                push_seq(out, nu);
                out.extend_from_slice(sigma.images());
                out.push(*w1);
                out.push(*w2);
            }
            Rule::PruneAutomorphism { nu1, nu2, sigma } => {
                push_seq(out, nu1);
                push_seq(out, nu2);
                out.extend_from_slice(sigma.images());
            }
            Rule::PruneParent { nu, cell } => {
                push_seq(out, nu);
                push_seq(out, cell);
            }
            Rule::PruneOrbits { omega, nu, w1, w2 } => {
                push_seq(out, omega);
                push_seq(out, nu);
                out.push(*w1);
                out.push(*w2);
            }
            Rule::ExtendPath { nu, cell, w } => {
                push_seq(out, nu);
                push_seq(out, cell);
                out.push(*w);
            }
        }
    }

    pub fn encode(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.encode_into(&mut out);
        out
    }

    /// Reads one rule for a graph on `n` vertices.
    pub fn decode(r: &mut IntReader<'_>, n: usize) -> Result<Rule, FormatError> {
        let code = r.int()?;
        Ok(match code {
            0 => Rule::ColoringAxiom,
            1 => Rule::Individualize {
                nu: r.sequence(n)?,
                v: r.vertex(n)?,
                pi: r.coloring(n)?,
            },
            2 => Rule::SplitColoring { nu: r.sequence(n)?, pi: r.coloring(n)? },
            3 => Rule::Equitable { nu: r.sequence(n)?, pi: r.coloring(n)? },
            4 => Rule::TargetCell { nu: r.sequence(n)?, pi: r.coloring(n)? },
            5 => Rule::InvariantAxiom { nu: r.sequence(n)? },
            6 | 10 => {
                let nu1 = nonempty(r.sequence(n)?)?;
                let pi1 = r.coloring(n)?;
                let nu2 = nonempty(r.sequence(n)?)?;
                let pi2 = r.coloring(n)?;
                if code == 6 {
                    Rule::InvariantsEqual { nu1, pi1, nu2, pi2 }
                } else {
                    Rule::PruneInvariant { nu1, pi1, nu2, pi2 }
                }
            }
            7 => Rule::InvariantsEqualSym { nu1: r.sequence(n)?, nu2: r.sequence(n)? },
            8 => Rule::OrbitsAxiom { v: r.vertex(n)?, nu: r.sequence(n)? },
            9 => Rule::MergeOrbits {
                omega1: r.set(n)?,
                omega2: r.set(n)?,
                nu: r.sequence(n)?,
                sigma: r.permutation(n)?,
                w1: r.vertex(n)?,
                w2: r.vertex(n)?,
            },
            11 => Rule::PruneLeaf {
                nu1: r.sequence(n)?,
                pi1: r.coloring(n)?,
                nu2: r.sequence(n)?,
                pi2: r.coloring(n)?,
            },
            12 => Rule::PruneAutomorphism {
                nu1: r.sequence(n)?,
                nu2: r.sequence(n)?,
                sigma: r.permutation(n)?,
            },
            13 => Rule::PruneParent { nu: r.sequence(n)?, cell: r.set(n)? },
            14 => Rule::PruneOrbits {
                omega: r.set(n)?,
                nu: r.sequence(n)?,
                w1: r.vertex(n)?,
                w2: r.vertex(n)?,
            },
            15 => Rule::PathAxiom,
            16 => Rule::ExtendPath {
                nu: r.sequence(n)?,
                cell: r.set(n)?,
                w: r.vertex(n)?,
            },
            17 => Rule::CanonicalLeaf { nu: r.sequence(n)?, pi: r.coloring(n)? },
            c => return Err(FormatError::UnknownCode(c)),
        })
    }

    /// Facts that must already be derived for this rule to apply.
    pub fn premises(&self) -> Vec<Fact> {
        let child = |nu: &[Vertex], w: Vertex| {
            let mut c = nu.to_vec();
            c.push(w);
            Fact::Pruned { nu: c }
        };
        match self {
            Rule::ColoringAxiom
            | Rule::InvariantAxiom { .. }
            | Rule::OrbitsAxiom { .. }
            | Rule::PruneAutomorphism { .. }
            | Rule::PathAxiom => Vec::new(),
            Rule::Individualize { nu, pi, .. } | Rule::TargetCell { nu, pi } => {
                vec![Fact::REqual { nu: nu.clone(), pi: pi.clone() }]
            }
            Rule::SplitColoring { nu, pi } | Rule::Equitable { nu, pi } => {
                vec![Fact::RFiner { nu: nu.clone(), pi: pi.clone() }]
            }
            Rule::InvariantsEqual { nu1, pi1, nu2, pi2 }
            | Rule::PruneInvariant { nu1, pi1, nu2, pi2 } => vec![
                Fact::PhiEqual {
                    nu1: nu1[..nu1.len() - 1].to_vec(),
                    nu2: nu2[..nu2.len() - 1].to_vec(),
                },
                Fact::REqual { nu: nu1.clone(), pi: pi1.clone() },
                Fact::REqual { nu: nu2.clone(), pi: pi2.clone() },
            ],
            Rule::InvariantsEqualSym { nu1, nu2 } => vec![Fact::PhiEqual {
                nu1: nu1.clone(),
                nu2: nu2.clone(),
            }],
            Rule::MergeOrbits { omega1, omega2, nu, .. } => vec![
                Fact::OrbitSubset { nu: nu.clone(), omega: omega1.clone() },
                Fact::OrbitSubset { nu: nu.clone(), omega: omega2.clone() },
            ],
            Rule::PruneLeaf { nu1, pi1, nu2, pi2 } => vec![
                Fact::REqual { nu: nu1.clone(), pi: pi1.clone() },
                Fact::REqual { nu: nu2.clone(), pi: pi2.clone() },
                Fact::PhiEqual { nu1: nu1.clone(), nu2: nu2.clone() },
            ],
            Rule::PruneParent { nu, cell } => {
                let mut out = vec![Fact::TargetIs { nu: nu.clone(), cell: cell.clone() }];
                out.extend(cell.iter().map(|&w| child(nu, w)));
                out
            }
            Rule::PruneOrbits { omega, nu, .. } => {
                vec![Fact::OrbitSubset { nu: nu.clone(), omega: omega.clone() }]
            }
            Rule::ExtendPath { nu, cell, w } => {
                let mut out = vec![
                    Fact::OnPath { nu: nu.clone() },
                    Fact::TargetIs { nu: nu.clone(), cell: cell.clone() },
                ];
                out.extend(cell.iter().filter(|&x| x != w).map(|&x| child(nu, x)));
                out
            }
            Rule::CanonicalLeaf { nu, pi } => vec![
                Fact::OnPath { nu: nu.clone() },
                Fact::REqual { nu: nu.clone(), pi: pi.clone() },
            ],
        }
    }
}

fn nonempty(s: Vec<Vertex>) -> Result<Vec<Vertex>, FormatError> {
    if s.is_empty() {
        Err(FormatError::Parameter("node sequence must be non-empty".into()))
    } else {
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(r: &Rule, n: usize) {
        let ints = r.encode();
        let mut rd = IntReader::new(&ints);
        assert_eq!(&Rule::decode(&mut rd, n).unwrap(), r);
        assert!(rd.is_at_end());
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(Rule::ColoringAxiom.encode(), vec![0]);
        assert_eq!(Rule::PathAxiom.encode(), vec![15]);
        let pi = Coloring::from_cells(4, vec![vec![0], vec![2], vec![1, 3]]).unwrap();
        let r = Rule::Individualize { nu: vec![0], v: 1, pi };
        assert_eq!(r.encode(), vec![1, 1, 0, 1, 0, 2, 1, 2]);
        round_trip(&r, 4);
    }

    #[test]
    fn decode_rejects_bad_input() {
        let mut rd = IntReader::new(&[18]);
        assert_eq!(Rule::decode(&mut rd, 4), Err(FormatError::UnknownCode(18)));
        // InvariantsEqual with an empty first node
        let bad = [6, 0, 0, 0, 0, 1, 0, 0, 0, 0];
        assert!(Rule::decode(&mut IntReader::new(&bad), 4).unwrap_err().is_parameter());
        // PruneParent with a descending cell
        let bad = [13, 0, 2, 3, 1];
        assert!(Rule::decode(&mut IntReader::new(&bad), 4).unwrap_err().is_parameter());
        assert_eq!(
            Rule::decode(&mut IntReader::new(&[16, 0, 2, 1]), 4),
            Err(FormatError::TruncatedRule)
        );
    }

    #[test]
    fn every_variant_round_trips() {
        let n = 4;
        let pi = Coloring::from_colors(vec![0, 2, 1, 2]).unwrap();
        let sigma = Permutation::from_images(vec![0, 3, 2, 1]).unwrap();
        let rules = vec![
            Rule::ColoringAxiom,
            Rule::Individualize { nu: vec![2], v: 1, pi: pi.clone() },
            Rule::SplitColoring { nu: vec![], pi: pi.clone() },
            Rule::Equitable { nu: vec![3, 1], pi: pi.clone() },
            Rule::TargetCell { nu: vec![0], pi: pi.clone() },
            Rule::InvariantAxiom { nu: vec![] },
            Rule::InvariantsEqual { nu1: vec![0], pi1: pi.clone(), nu2: vec![2], pi2: pi.clone() },
            Rule::InvariantsEqualSym { nu1: vec![1], nu2: vec![3] },
            Rule::OrbitsAxiom { v: 3, nu: vec![0] },
            Rule::MergeOrbits {
                omega1: vec![1],
                omega2: vec![3],
                nu: vec![0],
                sigma: sigma.clone(),
                w1: 1,
                w2: 3,
            },
            Rule::PruneInvariant { nu1: vec![0, 1], pi1: pi.clone(), nu2: vec![0, 3], pi2: pi.clone() },
            Rule::PruneLeaf { nu1: vec![], pi1: pi.clone(), nu2: vec![1, 2], pi2: pi.clone() },
            Rule::PruneAutomorphism { nu1: vec![0, 1], nu2: vec![0, 3], sigma },
            Rule::PruneParent { nu: vec![1], cell: vec![0, 2] },
            Rule::PruneOrbits { omega: vec![1, 3], nu: vec![0], w1: 1, w2: 3 },
            Rule::PathAxiom,
            Rule::ExtendPath { nu: vec![], cell: vec![0, 1, 2, 3], w: 0 },
            Rule::CanonicalLeaf { nu: vec![0, 1], pi },
        ];
        for (code, r) in rules.iter().enumerate() {
            assert_eq!(r.code() as usize, code);
            round_trip(r, n);
        }
    }

    #[test]
    fn premise_examples() {
        let r = Rule::ExtendPath { nu: vec![0], cell: vec![1, 3], w: 1 };
        assert_eq!(
            r.premises(),
            vec![
                Fact::OnPath { nu: vec![0] },
                Fact::TargetIs { nu: vec![0], cell: vec![1, 3] },
                Fact::Pruned { nu: vec![0, 3] },
            ]
        );
        let pi = Coloring::unit(2);
        let r = Rule::InvariantsEqual { nu1: vec![0], pi1: pi.clone(), nu2: vec![1], pi2: pi };
        assert_eq!(r.premises()[0], Fact::PhiEqual { nu1: vec![], nu2: vec![] });
    }
}
