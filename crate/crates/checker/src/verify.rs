//! Rule application and whole-proof verification.

use std::fmt;

use certcanon_core::proof::{decode_ints, FormatError, Rule, RuleReader};
use certcanon_core::{Coloring, ColoredGraph, Graph, Permutation, Vertex};

use crate::db::{Backend, FactDatabase};
use crate::ops;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Decode,
    MalformedParameter,
    MissingPremise,
    SideConditionFailed,
    NEndMismatch,
    NoCanonicalFact,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::Decode => "decode",
            Reason::MalformedParameter => "malformed-parameter",
            Reason::MissingPremise => "missing-premise",
            Reason::SideConditionFailed => "side-condition-failed",
            Reason::NEndMismatch => "n-mismatch",
            Reason::NoCanonicalFact => "no-canonical-fact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Zero-based index of the offending rule, if any.
    pub rule_index: Option<usize>,
    pub reason: Reason,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule_index {
            Some(i) => write!(f, "rule {}: {}: {}", i, self.reason.as_str(), self.detail),
            None => write!(f, "{}: {}", self.reason.as_str(), self.detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub canonical: Option<ColoredGraph>,
    pub failure: Option<Failure>,
    pub rules_checked: usize,
}

/// Error from a single rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleError {
    pub reason: Reason,
    pub detail: String,
}

fn missing(what: &str) -> RuleError {
    RuleError { reason: Reason::MissingPremise, detail: what.to_string() }
}

fn violated(what: &str) -> RuleError {
    RuleError { reason: Reason::SideConditionFailed, detail: what.to_string() }
}

/// Fact keys, built here rather than borrowed from the prover.
mod key {
    use super::Vertex;

    fn seq(k: &mut Vec<u32>, s: &[Vertex]) {
        k.push(s.len() as u32);
        k.extend_from_slice(s);
    }

    pub fn r_equal(nu: &[Vertex], pi: &[u32]) -> Vec<u32> {
        let mut k = vec![0];
        seq(&mut k, nu);
        k.extend_from_slice(pi);
        k
    }

    pub fn r_finer(nu: &[Vertex], pi: &[u32]) -> Vec<u32> {
        let mut k = r_equal(nu, pi);
        k[0] = 1;
        k
    }

    fn pair(code: u32, a: &[Vertex], b: &[Vertex]) -> Vec<u32> {
        let mut k = vec![code];
        seq(&mut k, a);
        seq(&mut k, b);
        k
    }

    pub fn target(nu: &[Vertex], cell: &[Vertex]) -> Vec<u32> {
        pair(2, nu, cell)
    }

    pub fn orbit(nu: &[Vertex], omega: &[Vertex]) -> Vec<u32> {
        pair(3, nu, omega)
    }

    pub fn phi_equal(a: &[Vertex], b: &[Vertex]) -> Vec<u32> {
        pair(4, a, b)
    }

    pub fn pruned(nu: &[Vertex]) -> Vec<u32> {
        let mut k = vec![5];
        seq(&mut k, nu);
        k
    }

    pub fn on_path(nu: &[Vertex]) -> Vec<u32> {
        let mut k = vec![6];
        seq(&mut k, nu);
        k
    }

    pub fn canonical(edges: &[(Vertex, Vertex)], colors: &[u32]) -> Vec<u32> {
        let mut k = vec![7, edges.len() as u32];
        for &(u, v) in edges {
            k.push(u);
            k.push(v);
        }
        k.extend_from_slice(colors);
        k
    }
}

fn extend(nu: &[Vertex], w: Vertex) -> Vec<Vertex> {
    let mut c = nu.to_vec();
    c.push(w);
    c
}

/// A canonical form derived by [`Checker::apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub edges: Vec<(Vertex, Vertex)>,
    pub colors: Vec<u32>,
}

/// Verifier state for one proof.
pub struct Checker<'g> {
    g: &'g Graph,
    pi0: Vec<u32>,
    db: Box<dyn FactDatabase + Send>,
    canonical: Option<CanonicalForm>,
}

impl<'g> Checker<'g> {
    pub fn new(g: &'g Graph, pi0: &Coloring, backend: Backend) -> Self {
        Checker { g, pi0: pi0.colors().to_vec(), db: backend.create(), canonical: None }
    }

    pub fn facts(&self) -> usize {
        self.db.len()
    }

    pub fn canonical(&self) -> Option<&CanonicalForm> {
        self.canonical.as_ref()
    }

    fn need(&self, k: &[u32], what: &str) -> Result<(), RuleError> {
        if self.db.contains(k) {
            Ok(())
        } else {
            Err(missing(what))
        }
    }

    fn aut(&self, sigma: &Permutation) -> bool {
        ops::is_automorphism(self.g, &self.pi0, sigma.images())
    }

    /// Checks `r` against the facts derived so far and records its conclusion.
    pub fn apply(&mut self, r: &Rule) -> Result<(), RuleError> {
        let g = self.g;
        let conclusion = match r {
            Rule::ColoringAxiom => key::r_finer(&[], &self.pi0),
            Rule::Individualize { nu, v, pi } => {
                self.need(&key::r_equal(nu, pi.colors()), "R(nu) = pi")?;
                if nu.contains(v) {
                    return Err(violated("v already individualized in nu"));
                }
                key::r_finer(&extend(nu, *v), &ops::individualize(pi.colors(), *v))
            }
            Rule::SplitColoring { nu, pi } => {
                self.need(&key::r_finer(nu, pi.colors()), "R(nu) finer than pi")?;
                let i = ops::first_refining_cell(g, pi.colors())
                    .ok_or_else(|| violated("no cell refines pi"))?;
                key::r_finer(nu, &ops::split(g, pi.colors(), i))
            }
            Rule::Equitable { nu, pi } => {
                self.need(&key::r_finer(nu, pi.colors()), "R(nu) finer than pi")?;
                if ops::first_refining_cell(g, pi.colors()).is_some() {
                    return Err(violated("pi is not equitable"));
                }
                key::r_equal(nu, pi.colors())
            }
            Rule::TargetCell { nu, pi } => {
                self.need(&key::r_equal(nu, pi.colors()), "R(nu) = pi")?;
                let cell = ops::target_cell(pi.colors())
                    .ok_or_else(|| violated("pi is discrete"))?;
                key::target(nu, &cell)
            }
            Rule::InvariantAxiom { nu } => key::phi_equal(nu, nu),
            Rule::InvariantsEqual { nu1, pi1, nu2, pi2 }
            | Rule::PruneInvariant { nu1, pi1, nu2, pi2 } => {
                let (p1, p2) = (&nu1[..nu1.len() - 1], &nu2[..nu2.len() - 1]);
                self.need(&key::phi_equal(p1, p2), "parent invariants equal")?;
                self.need(&key::r_equal(nu1, pi1.colors()), "R(nu1) = pi1")?;
                self.need(&key::r_equal(nu2, pi2.colors()), "R(nu2) = pi2")?;
                let (h1, h2) = (ops::hash(g, pi1.colors()), ops::hash(g, pi2.colors()));
                if let Rule::InvariantsEqual { .. } = r {
                    if h1 != h2 {
                        return Err(violated("hashes differ"));
                    }
                    key::phi_equal(nu1, nu2)
                } else {
                    if h1 <= h2 {
                        return Err(violated("hash of pi1 not greater"));
                    }
                    key::pruned(nu2)
                }
            }
            Rule::InvariantsEqualSym { nu1, nu2 } => {
                self.need(&key::phi_equal(nu1, nu2), "invariants equal")?;
                key::phi_equal(nu2, nu1)
            }
            Rule::OrbitsAxiom { v, nu } => key::orbit(nu, &[*v]),
            Rule::MergeOrbits { omega1, omega2, nu, sigma, w1, w2 } => {
                self.need(&key::orbit(nu, omega1), "omega1 in orbit")?;
                self.need(&key::orbit(nu, omega2), "omega2 in orbit")?;
                if !self.aut(sigma) {
                    return Err(violated("sigma is not an automorphism"));
                }
                if !sigma.fixes_pointwise(nu) {
                    return Err(violated("sigma does not fix nu"));
                }
                if omega1.binary_search(w1).is_err() || omega2.binary_search(w2).is_err() {
                    return Err(violated("witness outside its set"));
                }
                if sigma.apply(*w1) != *w2 {
                    return Err(violated("sigma does not map w1 to w2"));
                }
                let mut union: Vec<Vertex> = omega1.iter().chain(omega2).copied().collect();
                union.sort_unstable();
                union.dedup();
                key::orbit(nu, &union)
            }
            Rule::PruneLeaf { nu1, pi1, nu2, pi2 } => {
                self.need(&key::r_equal(nu1, pi1.colors()), "R(nu1) = pi1")?;
                self.need(&key::r_equal(nu2, pi2.colors()), "R(nu2) = pi2")?;
                self.need(&key::phi_equal(nu1, nu2), "invariants equal")?;
                if !ops::is_discrete(pi2.colors()) {
                    return Err(violated("pi2 is not discrete"));
                }
                if ops::is_discrete(pi1.colors())
                    && ops::compare_relabelled(g, pi1.colors(), pi2.colors()).is_le()
                {
                    return Err(violated("leaf graph of nu1 not greater"));
                }
                key::pruned(nu2)
            }
            Rule::PruneAutomorphism { nu1, nu2, sigma } => {
                if nu1.len() != nu2.len() || nu1 >= nu2 {
                    return Err(violated("nu1 not lexicographically below nu2"));
                }
                if !self.aut(sigma) {
                    return Err(violated("sigma is not an automorphism"));
                }
                if sigma.apply_seq(nu1) != *nu2 {
                    return Err(violated("sigma does not map nu1 to nu2"));
                }
                key::pruned(nu2)
            }
            Rule::PruneParent { nu, cell } => {
                self.need(&key::target(nu, cell), "target cell")?;
                for &w in cell {
                    self.need(&key::pruned(&extend(nu, w)), "child pruned")?;
                }
                key::pruned(nu)
            }
            Rule::PruneOrbits { omega, nu, w1, w2 } => {
                self.need(&key::orbit(nu, omega), "omega in orbit")?;
                if omega.binary_search(w1).is_err() || omega.binary_search(w2).is_err() {
                    return Err(violated("witness outside omega"));
                }
                if w1 >= w2 {
                    return Err(violated("w1 not below w2"));
                }
                if nu.contains(w2) {
                    return Err(violated("w2 already in nu"));
                }
                key::pruned(&extend(nu, *w2))
            }
            Rule::PathAxiom => key::on_path(&[]),
            Rule::ExtendPath { nu, cell, w } => {
                self.need(&key::on_path(nu), "nu on path")?;
                self.need(&key::target(nu, cell), "target cell")?;
                if cell.binary_search(w).is_err() {
                    return Err(violated("w outside target cell"));
                }
                for &x in cell.iter().filter(|&x| x != w) {
                    self.need(&key::pruned(&extend(nu, x)), "sibling pruned")?;
                }
                key::on_path(&extend(nu, *w))
            }
            Rule::CanonicalLeaf { nu, pi } => {
                self.need(&key::on_path(nu), "nu on path")?;
                self.need(&key::r_equal(nu, pi.colors()), "R(nu) = pi")?;
                if !ops::is_discrete(pi.colors()) {
                    return Err(violated("pi is not discrete"));
                }
                let form = canonical_form(g, &self.pi0, pi.colors());
                let k = key::canonical(&form.edges, &form.colors);
                if self.canonical.is_none() {
                    self.canonical = Some(form);
                }
                k
            }
        };
        self.db.insert(&conclusion);
        Ok(())
    }
}

/// `(G^π, π0^π)` for a discrete `π`.
fn canonical_form(g: &Graph, pi0: &[u32], perm: &[u32]) -> CanonicalForm {
    let n = perm.len();
    let m = ops::relabelled_matrix(g, perm);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if m[u * n + v] {
                edges.push((u as Vertex, v as Vertex));
            }
        }
    }
    let mut colors = vec![0; n];
    for v in 0..n {
        colors[perm[v] as usize] = pi0[v];
    }
    CanonicalForm { edges, colors }
}

fn reject(rule_index: Option<usize>, reason: Reason, detail: String, rules: usize) -> Verdict {
    Verdict {
        accepted: false,
        canonical: None,
        failure: Some(Failure { rule_index, reason, detail }),
        rules_checked: rules,
    }
}

fn decode_failure(e: &FormatError) -> Reason {
    if e.is_parameter() {
        Reason::MalformedParameter
    } else {
        Reason::Decode
    }
}

/// Verifies a proof given as its integer sequence.
pub fn verify_ints(g: &Graph, pi0: &Coloring, ints: &[u32], backend: Backend) -> Verdict {
    if pi0.n() != g.n() {
        return reject(None, Reason::NEndMismatch, "coloring size differs from graph".into(), 0);
    }
    let reader = match RuleReader::new(ints) {
        Ok(r) => r,
        Err(e) => return reject(None, Reason::Decode, e.to_string(), 0),
    };
    if reader.n() != g.n() {
        let detail = format!("proof is for {} vertices, graph has {}", reader.n(), g.n());
        return reject(None, Reason::NEndMismatch, detail, 0);
    }
    let mut checker = Checker::new(g, pi0, backend);
    let mut count = 0;
    for (i, rule) in reader.enumerate() {
        let rule = match rule {
            Ok(r) => r,
            Err(e) => return reject(Some(i), decode_failure(&e), e.to_string(), i),
        };
        if let Err(e) = checker.apply(&rule) {
            let detail = format!("{}: {}", rule.name(), e.detail);
            return reject(Some(i), e.reason, detail, i);
        }
        count = i + 1;
    }
    match checker.canonical {
        Some(form) => {
            let graph = Graph::from_edges(g.n(), form.edges).expect("edges in range");
            let coloring = Coloring::from_colors(form.colors).expect("relabelled coloring");
            Verdict {
                accepted: true,
                canonical: Some(ColoredGraph::new(graph, coloring).expect("sizes agree")),
                failure: None,
                rules_checked: count,
            }
        }
        None => reject(None, Reason::NoCanonicalFact, "no canonical leaf derived".into(), count),
    }
}

/// Verifies a proof file's bytes.
pub fn verify_proof(g: &Graph, pi0: &Coloring, bytes: &[u8], backend: Backend) -> Verdict {
    match decode_ints(bytes) {
        Ok(ints) => verify_ints(g, pi0, &ints, backend),
        Err(e) => reject(None, Reason::Decode, e.to_string(), 0),
    }
}

/// One independent verification job.
pub struct Job<'a> {
    pub graph: &'a Graph,
    pub pi0: &'a Coloring,
    pub proof: &'a [u8],
}

/// Verifies many proofs, each on its own database.
pub fn verify_batch(jobs: &[Job<'_>], backend: Backend) -> Vec<Verdict> {
    let run = |j: &Job<'_>| verify_proof(j.graph, j.pi0, j.proof, backend);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(run).collect()
    }
}
