//! Proof emission, either interleaved with the search or after it.

pub mod builder;
pub mod during;
pub mod post;

use std::io;

use thiserror::Error;

use crate::error::DomainError;
use crate::proof::Fact;

pub use builder::{Buffered, ProofBuilder, RuleSink};
pub use during::{emit_during, DuringEmitter};
pub use post::emit_post;

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("i/o error writing proof: {0}")]
    Io(#[from] io::Error),
    #[error("{rule} needs an underived premise {fact:?}")]
    MissingPremise { rule: &'static str, fact: Box<Fact> },
    #[error("inconsistent search state: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// When proof rules are produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// While searching.
    During,
    /// After the search, with the canonical leaf and generators known.
    #[default]
    Post,
}

/// Size of an emitted proof.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProofSize {
    pub rules: u64,
    pub bytes: u64,
}
