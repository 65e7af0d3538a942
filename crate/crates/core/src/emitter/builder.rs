//! Rule emission with premise tracking.

use std::collections::{HashMap, HashSet};
use std::io::{self, Write};

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};
use crate::perm::Permutation;
use crate::proof::{Fact, ProofWriter, Rule};
use crate::refine::{individualize, make_equitable_traced, target_cell, SplittingQueue};

use super::EmitError;

/// Destination of emitted rules.
pub trait RuleSink {
    fn accept(&mut self, rule: Rule, conclusion: &Fact) -> io::Result<()>;
}

impl<W: Write> RuleSink for ProofWriter<W> {
    fn accept(&mut self, rule: Rule, _: &Fact) -> io::Result<()> {
        self.write_rule(&rule)
    }
}

impl RuleSink for Vec<Rule> {
    fn accept(&mut self, rule: Rule, _: &Fact) -> io::Result<()> {
        self.push(rule);
        Ok(())
    }
}

/// Keeps each rule with its conclusion.
#[derive(Default)]
pub struct Buffered {
    pub rules: Vec<(Rule, Fact)>,
}

impl RuleSink for Buffered {
    fn accept(&mut self, rule: Rule, conclusion: &Fact) -> io::Result<()> {
        self.rules.push((rule, conclusion.clone()));
        Ok(())
    }
}

/// Emits rules whose premises are already derived, skipping rules whose
/// conclusion is known.
pub struct ProofBuilder<'g, S> {
    g: &'g Graph,
    pi0: &'g Coloring,
    sink: S,
    known: HashSet<Vec<u32>>,
    colorings: HashMap<Vec<Vertex>, Coloring>,
    emitted: u64,
}

impl<'g, S: RuleSink> ProofBuilder<'g, S> {
    pub fn new(g: &'g Graph, pi0: &'g Coloring, sink: S) -> Self {
        ProofBuilder {
            g,
            pi0,
            sink,
            known: HashSet::new(),
            colorings: HashMap::new(),
            emitted: 0,
        }
    }

    pub fn into_sink(self) -> S {
        self.sink
    }

    pub fn rules_emitted(&self) -> u64 {
        self.emitted
    }

    pub fn knows(&self, f: &Fact) -> bool {
        self.known.contains(&f.key())
    }

    fn emit(&mut self, rule: Rule, conclusion: Fact) -> Result<(), EmitError> {
        let key = conclusion.key();
        if self.known.contains(&key) {
            return Ok(());
        }
        for p in rule.premises() {
            if !self.known.contains(&p.key()) {
                return Err(EmitError::MissingPremise {
                    rule: rule.name(),
                    fact: Box::new(p),
                });
            }
        }
        self.sink.accept(rule, &conclusion)?;
        self.known.insert(key);
        self.emitted += 1;
        Ok(())
    }

    pub fn coloring(&self, nu: &[Vertex]) -> Result<&Coloring, EmitError> {
        self.colorings
            .get(nu)
            .ok_or_else(|| EmitError::Inconsistent(format!("no coloring derived for {nu:?}")))
    }

    /// Derives `R̄(nu) = expected`, from `π0` for the root or from the
    /// parent coloring otherwise.
    pub fn refine_node(
        &mut self,
        nu: &[Vertex],
        parent: Option<&Coloring>,
        expected: &Coloring,
    ) -> Result<(), EmitError> {
        if self.colorings.contains_key(nu) {
            return Ok(());
        }
        let (start, alpha) = match (nu.split_last(), parent) {
            (None, None) => {
                self.emit(
                    Rule::ColoringAxiom,
                    Fact::RFiner { nu: Vec::new(), pi: self.pi0.clone() },
                )?;
                (self.pi0.clone(), SplittingQueue::all_cells(self.pi0))
            }
            (Some((&v, up)), Some(p)) => {
                let start = individualize(p, v);
                self.emit(
                    Rule::Individualize { nu: up.to_vec(), v, pi: p.clone() },
                    Fact::RFiner { nu: nu.to_vec(), pi: start.clone() },
                )?;
                (start, SplittingQueue::single(v))
            }
            _ => return Err(EmitError::Inconsistent("parent coloring mismatch".into())),
        };
        let mut steps = Vec::new();
        let fin = make_equitable_traced(self.g, &start, &alpha, &mut |s| {
            steps.push((s.before.clone(), s.after.clone()))
        });
        if &fin != expected {
            return Err(EmitError::Inconsistent(format!("refinement of {nu:?} differs")));
        }
        for (before, after) in steps {
            self.emit(
                Rule::SplitColoring { nu: nu.to_vec(), pi: before },
                Fact::RFiner { nu: nu.to_vec(), pi: after },
            )?;
        }
        self.emit(
            Rule::Equitable { nu: nu.to_vec(), pi: fin.clone() },
            Fact::REqual { nu: nu.to_vec(), pi: fin.clone() },
        )?;
        self.colorings.insert(nu.to_vec(), fin);
        Ok(())
    }

    pub fn target(&mut self, nu: &[Vertex]) -> Result<Vec<Vertex>, EmitError> {
        let pi = self.coloring(nu)?.clone();
        let cell = target_cell(&pi)
            .ok_or_else(|| EmitError::Inconsistent(format!("{nu:?} is a leaf")))?
            .to_vec();
        self.emit(
            Rule::TargetCell { nu: nu.to_vec(), pi },
            Fact::TargetIs { nu: nu.to_vec(), cell: cell.clone() },
        )?;
        Ok(cell)
    }

    pub fn ensure_phi_equal(&mut self, a: &[Vertex], b: &[Vertex]) -> Result<(), EmitError> {
        let fact = Fact::PhiEqual { nu1: a.to_vec(), nu2: b.to_vec() };
        if self.knows(&fact) {
            return Ok(());
        }
        if a == b {
            return self.emit(Rule::InvariantAxiom { nu: a.to_vec() }, fact);
        }
        let rev = Fact::PhiEqual { nu1: b.to_vec(), nu2: a.to_vec() };
        if self.knows(&rev) {
            return self.emit(
                Rule::InvariantsEqualSym { nu1: b.to_vec(), nu2: a.to_vec() },
                fact,
            );
        }
        Err(EmitError::MissingPremise { rule: "InvariantsEqualSym", fact: Box::new(rev) })
    }

    fn pair(&self, a: &[Vertex], b: &[Vertex]) -> Result<(Coloring, Coloring), EmitError> {
        Ok((self.coloring(a)?.clone(), self.coloring(b)?.clone()))
    }

    fn ensure_parents_equal(&mut self, a: &[Vertex], b: &[Vertex]) -> Result<(), EmitError> {
        if a.is_empty() || b.is_empty() {
            return Err(EmitError::Inconsistent("root has no parent".into()));
        }
        self.ensure_phi_equal(&a[..a.len() - 1], &b[..b.len() - 1])
    }

    /// `φ̄(a) = φ̄(b)` for two children with equal-invariant parents.
    pub fn invariants_equal(&mut self, a: &[Vertex], b: &[Vertex]) -> Result<(), EmitError> {
        self.ensure_parents_equal(a, b)?;
        let (pi1, pi2) = self.pair(a, b)?;
        self.emit(
            Rule::InvariantsEqual { nu1: a.to_vec(), pi1, nu2: b.to_vec(), pi2 },
            Fact::PhiEqual { nu1: a.to_vec(), nu2: b.to_vec() },
        )
    }

    pub fn prune_invariant(&mut self, winner: &[Vertex], loser: &[Vertex]) -> Result<(), EmitError> {
        self.ensure_parents_equal(winner, loser)?;
        let (pi1, pi2) = self.pair(winner, loser)?;
        self.emit(
            Rule::PruneInvariant { nu1: winner.to_vec(), pi1, nu2: loser.to_vec(), pi2 },
            Fact::Pruned { nu: loser.to_vec() },
        )
    }

    pub fn prune_leaf(&mut self, winner: &[Vertex], loser: &[Vertex]) -> Result<(), EmitError> {
        self.ensure_phi_equal(winner, loser)?;
        let (pi1, pi2) = self.pair(winner, loser)?;
        self.emit(
            Rule::PruneLeaf { nu1: winner.to_vec(), pi1, nu2: loser.to_vec(), pi2 },
            Fact::Pruned { nu: loser.to_vec() },
        )
    }

    pub fn prune_automorphism(
        &mut self,
        from: &[Vertex],
        to: &[Vertex],
        sigma: &Permutation,
    ) -> Result<(), EmitError> {
        self.emit(
            Rule::PruneAutomorphism { nu1: from.to_vec(), nu2: to.to_vec(), sigma: sigma.clone() },
            Fact::Pruned { nu: to.to_vec() },
        )
    }

    fn ensure_orbit(&mut self, nu: &[Vertex], class: &[Vertex]) -> Result<(), EmitError> {
        let fact = Fact::OrbitSubset { nu: nu.to_vec(), omega: class.to_vec() };
        if let [v] = class {
            self.emit(Rule::OrbitsAxiom { v: *v, nu: nu.to_vec() }, fact)
        } else if self.knows(&fact) {
            Ok(())
        } else {
            Err(EmitError::MissingPremise { rule: "MergeOrbits", fact: Box::new(fact) })
        }
    }

    pub fn merge_orbits(
        &mut self,
        nu: &[Vertex],
        class1: &[Vertex],
        class2: &[Vertex],
        sigma: &Permutation,
        w1: Vertex,
        w2: Vertex,
    ) -> Result<(), EmitError> {
        self.ensure_orbit(nu, class1)?;
        self.ensure_orbit(nu, class2)?;
        let mut union = [class1, class2].concat();
        union.sort_unstable();
        self.emit(
            Rule::MergeOrbits {
                omega1: class1.to_vec(),
                omega2: class2.to_vec(),
                nu: nu.to_vec(),
                sigma: sigma.clone(),
                w1,
                w2,
            },
            Fact::OrbitSubset { nu: nu.to_vec(), omega: union },
        )
    }

    pub fn prune_orbit(
        &mut self,
        nu: &[Vertex],
        class: &[Vertex],
        w1: Vertex,
        w2: Vertex,
    ) -> Result<(), EmitError> {
        self.ensure_orbit(nu, class)?;
        self.emit(
            Rule::PruneOrbits { omega: class.to_vec(), nu: nu.to_vec(), w1, w2 },
            Fact::Pruned { nu: child(nu, w2) },
        )
    }

    pub fn prune_parent(&mut self, nu: &[Vertex], cell: &[Vertex]) -> Result<(), EmitError> {
        self.emit(
            Rule::PruneParent { nu: nu.to_vec(), cell: cell.to_vec() },
            Fact::Pruned { nu: nu.to_vec() },
        )
    }

    /// Walks the path to `leaf` and derives the canonical form.
    pub fn finish(&mut self, leaf: &[Vertex], path_targets: &[Vec<Vertex>]) -> Result<(), EmitError> {
        self.emit(Rule::PathAxiom, Fact::OnPath { nu: Vec::new() })?;
        for (j, cell) in path_targets.iter().enumerate() {
            self.emit(
                Rule::ExtendPath { nu: leaf[..j].to_vec(), cell: cell.clone(), w: leaf[j] },
                Fact::OnPath { nu: leaf[..j + 1].to_vec() },
            )?;
        }
        let pi = self.coloring(leaf)?.clone();
        let sigma = pi
            .to_permutation()
            .ok_or_else(|| EmitError::Inconsistent("canonical leaf is not discrete".into()))?;
        let graph = self.g.relabel(&sigma)?;
        let colors = self.pi0.act(&sigma)?;
        self.emit(
            Rule::CanonicalLeaf { nu: leaf.to_vec(), pi },
            Fact::Canonical { graph, pi: colors },
        )
    }
}

pub(crate) fn child(nu: &[Vertex], w: Vertex) -> Vec<Vertex> {
    let mut c = nu.to_vec();
    c.push(w);
    c
}
