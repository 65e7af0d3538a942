//! Emission after the search, knowing the canonical leaf and the
//! automorphisms found.
//!
//! The canonical path is walked from the root; every child off the path is
//! cut as high as possible, preferring an automorphism image of a smaller
//! sibling, then the invariant, and only then descending. Rules that do not
//! contribute to the final canonical fact are dropped.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::io::Write;

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};
use crate::invariant::hash_colored;
use crate::perm::Permutation;
use crate::proof::{Fact, ProofWriter, Rule};
use crate::refine::{refine_child, refine_root};
use crate::search::{discover_automorphism, BestLeaf, SearchResult};

use super::builder::child;
use super::{Buffered, EmitError, ProofBuilder, ProofSize};

/// Writes a proof for a finished search.
pub fn emit_post<W: Write>(
    g: &Graph,
    pi0: &Coloring,
    result: &SearchResult,
    out: W,
) -> Result<(ProofSize, W), EmitError> {
    let rules = post_rules(g, pi0, result)?;
    let mut w = ProofWriter::new(out, g.n())?;
    for r in &rules {
        w.write_rule(r)?;
    }
    let size = ProofSize { rules: w.rules_written(), bytes: w.bytes_written() };
    Ok((size, w.finish()?))
}

/// The rules of the post-search proof, in order.
pub fn post_rules(g: &Graph, pi0: &Coloring, result: &SearchResult) -> Result<Vec<Rule>, EmitError> {
    let mut p = Post {
        g,
        best: &result.best,
        gens: result
            .generators
            .generators()
            .iter()
            .map(|s| (s.clone(), s.inverse()))
            .collect(),
        b: ProofBuilder::new(g, pi0, Buffered::default()),
    };
    let star = &result.best.nu_star;
    let mut col = refine_root(g, pi0);
    p.b.refine_node(&[], None, &col)?;
    let mut targets = Vec::with_capacity(star.len());
    for j in 0..star.len() {
        let mu = &star[..j];
        let target = p.b.target(mu)?;
        let next = refine_child(g, &col, star[j]);
        p.b.refine_node(&star[..j + 1], Some(&col), &next)?;
        for &w in target.iter().filter(|&&w| w != star[j]) {
            p.prune_child(mu, &col, w)?;
        }
        targets.push(target);
        col = next;
    }
    if col != result.best.coloring_star {
        return Err(EmitError::Inconsistent("canonical leaf coloring differs".into()));
    }
    p.b.finish(star, &targets)?;
    Ok(slice(p.b.into_sink().rules))
}

struct Post<'a> {
    g: &'a Graph,
    best: &'a BestLeaf,
    gens: Vec<(Permutation, Permutation)>,
    b: ProofBuilder<'a, Buffered>,
}

impl Post<'_> {
    /// Derives `pruned([parent, w])`, where `parent` has the same invariant
    /// as the canonical path node at its depth.
    fn prune_child(&mut self, parent: &[Vertex], parent_col: &Coloring, w: Vertex) -> Result<(), EmitError> {
        let nu = child(parent, w);
        if let Some((w1, sigma)) = self.orbit_witness(parent, w) {
            return self.b.prune_automorphism(&child(parent, w1), &nu, &sigma);
        }
        let d = parent.len();
        let star = &self.best.nu_star;
        if d >= star.len() {
            return Err(EmitError::Inconsistent(format!("{nu:?} lies below the canonical depth")));
        }
        let path = &star[..d + 1];
        let c = refine_child(self.g, parent_col, w);
        self.b.refine_node(&nu, Some(parent_col), &c)?;
        match hash_colored(self.g, &c).cmp(&self.best.invariant_star.hashes()[d]) {
            Ordering::Less => self.b.prune_invariant(path, &nu),
            Ordering::Greater => Err(EmitError::Inconsistent(format!("{nu:?} beats the canonical path"))),
            Ordering::Equal => {
                self.b.invariants_equal(path, &nu)?;
                if !c.is_discrete() {
                    if d + 1 == star.len() {
                        return Err(EmitError::Inconsistent(format!("{nu:?} beats the canonical leaf")));
                    }
                    let target = self.b.target(&nu)?;
                    for &x in &target {
                        self.prune_child(&nu, &c, x)?;
                    }
                    return self.b.prune_parent(&nu, &target);
                }
                if d + 1 < star.len() {
                    return self.b.prune_leaf(path, &nu);
                }
                let graph = self.g.relabel_by_coloring(&c)?;
                match graph.compare(&self.best.graph_star)? {
                    Ordering::Less => self.b.prune_leaf(star, &nu),
                    Ordering::Equal => {
                        let sigma = discover_automorphism(&self.best.coloring_star, &c, self.g)
                            .ok_or_else(|| EmitError::Inconsistent("leaf graphs differ".into()))?;
                        self.b.prune_automorphism(star, &nu, &sigma)
                    }
                    Ordering::Greater => {
                        Err(EmitError::Inconsistent(format!("{nu:?} beats the canonical leaf")))
                    }
                }
            }
        }
    }

    /// The smallest `w1` mapped onto `w` by a product of generators fixing
    /// `parent`, with that product, if `w1 < w`.
    fn orbit_witness(&self, parent: &[Vertex], w: Vertex) -> Option<(Vertex, Permutation)> {
        let gens: Vec<&(Permutation, Permutation)> =
            self.gens.iter().filter(|(s, _)| s.fixes_pointwise(parent)).collect();
        if gens.is_empty() {
            return None;
        }
        // tau[y] maps y to w
        let n = self.g.n();
        let mut tau: Vec<Option<Permutation>> = vec![None; n];
        tau[w as usize] = Some(Permutation::identity(n));
        let mut queue = VecDeque::from([w]);
        let mut best = w;
        while let Some(y) = queue.pop_front() {
            for (s, s_inv) in &gens {
                for (fwd, back) in [(s, s_inv), (s_inv, s)] {
                    let z = fwd.apply(y);
                    if tau[z as usize].is_none() {
                        // z^back = y, so back then tau[y] sends z to w
                        let t = back.compose(tau[y as usize].as_ref().unwrap()).ok()?;
                        tau[z as usize] = Some(t);
                        best = best.min(z);
                        queue.push_back(z);
                    }
                }
            }
        }
        if best < w {
            tau[best as usize].take().map(|t| (best, t))
        } else {
            None
        }
    }
}

/// Keeps the rules the last rule depends on, transitively.
fn slice(rules: Vec<(Rule, Fact)>) -> Vec<Rule> {
    let mut needed: HashSet<Vec<u32>> = HashSet::new();
    let mut keep = vec![false; rules.len()];
    for (i, (rule, fact)) in rules.iter().enumerate().rev() {
        if i + 1 == rules.len() || needed.contains(&fact.key()) {
            keep[i] = true;
            needed.extend(rule.premises().iter().map(Fact::key));
        }
    }
    rules
        .into_iter()
        .zip(keep)
        .filter_map(|((r, _), k)| k.then_some(r))
        .collect()
}
