//! Emission interleaved with the search.

use std::io::Write;

use crate::coloring::Coloring;
use crate::graph::Graph;
use crate::proof::ProofWriter;
use crate::search::{canonical_form_observed, SearchEvent, SearchObserver, SearchOptions, SearchResult};

use super::{EmitError, ProofBuilder, ProofSize, RuleSink};

/// Observer turning search events into rules. The first failure is kept
/// and later events are ignored.
pub struct DuringEmitter<'g, S> {
    builder: ProofBuilder<'g, S>,
    error: Option<EmitError>,
}

impl<'g, S: RuleSink> DuringEmitter<'g, S> {
    pub fn new(g: &'g Graph, pi0: &'g Coloring, sink: S) -> Self {
        DuringEmitter { builder: ProofBuilder::new(g, pi0, sink), error: None }
    }

    pub fn finish(self) -> Result<ProofBuilder<'g, S>, EmitError> {
        match self.error {
            Some(e) => Err(e),
            None => Ok(self.builder),
        }
    }

    fn handle(&mut self, event: SearchEvent<'_>) -> Result<(), EmitError> {
        let b = &mut self.builder;
        match event {
            SearchEvent::NodeEntered { nu, parent, coloring } => b.refine_node(nu, parent, coloring),
            SearchEvent::Expand { nu, target } => {
                if b.target(nu)? != target {
                    return Err(EmitError::Inconsistent(format!("target of {nu:?} differs")));
                }
                Ok(())
            }
            SearchEvent::InvariantEqual { best, node } => b.invariants_equal(best, node),
            SearchEvent::PrunedInvariant { winner, loser } => b.prune_invariant(winner, loser),
            SearchEvent::PrunedLeaf { winner, loser } => b.prune_leaf(winner, loser),
            SearchEvent::NewBest { .. } | SearchEvent::Automorphism { .. } => Ok(()),
            SearchEvent::OrbitMerge { nu, class1, class2, sigma, w1, w2 } => {
                b.merge_orbits(nu, class1, class2, sigma, w1, w2)
            }
            SearchEvent::PrunedAutomorphism { from, to, sigma } => b.prune_automorphism(from, to, sigma),
            SearchEvent::PrunedOrbit { nu, class, w1, w2 } => b.prune_orbit(nu, class, w1, w2),
            SearchEvent::PrunedParent { nu, target } => b.prune_parent(nu, target),
            SearchEvent::Finished { leaf, path_targets, .. } => b.finish(leaf, path_targets),
        }
    }
}

impl<S: RuleSink> SearchObserver for DuringEmitter<'_, S> {
    fn on_event(&mut self, event: SearchEvent<'_>) {
        if self.error.is_none() {
            if let Err(e) = self.handle(event) {
                self.error = Some(e);
            }
        }
    }
}

/// Runs the search and writes its proof to `out` as it goes.
pub fn emit_during<W: Write>(
    g: &Graph,
    pi0: &Coloring,
    out: W,
) -> Result<(SearchResult, ProofSize, W), EmitError> {
    let writer = ProofWriter::new(out, g.n())?;
    let mut em = DuringEmitter::new(g, pi0, writer);
    let result = canonical_form_observed(g, pi0, SearchOptions::default(), &mut em);
    let writer = em.finish()?.into_sink();
    let size = ProofSize { rules: writer.rules_written(), bytes: writer.bytes_written() };
    Ok((result, size, writer.finish()?))
}
