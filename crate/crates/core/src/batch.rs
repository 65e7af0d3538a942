//! Canonical forms of many graphs at once.
//!
//! Each search is independent, so the batch is split across the rayon pool
//! when the `parallel` feature is on.

use crate::coloring::Coloring;
use crate::graph::{ColoredGraph, Graph};
use crate::search::{canonical_form, SearchOptions};

fn one(g: &Graph, options: SearchOptions) -> ColoredGraph {
    canonical_form(g, &Coloring::unit(g.n()), options).canonical
}

/// Canonical forms of uncolored graphs, in input order.
pub fn canonicalize_batch(graphs: &[Graph], options: SearchOptions) -> Vec<ColoredGraph> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        graphs.par_iter().map(|g| one(g, options)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        canonicalize_batch_seq(graphs, options)
    }
}

/// Single-threaded version of [`canonicalize_batch`].
pub fn canonicalize_batch_seq(graphs: &[Graph], options: SearchOptions) -> Vec<ColoredGraph> {
    graphs.iter().map(|g| one(g, options)).collect()
}

/// Groups graphs into isomorphism classes; returns a class id per input,
/// numbered by first occurrence.
pub fn isomorphism_classes(graphs: &[Graph]) -> Vec<usize> {
    let forms = canonicalize_batch(graphs, SearchOptions::default());
    let mut seen: std::collections::HashMap<&ColoredGraph, usize> = Default::default();
    forms
        .iter()
        .map(|f| {
            let next = seen.len();
            *seen.entry(f).or_insert(next)
        })
        .collect()
}
