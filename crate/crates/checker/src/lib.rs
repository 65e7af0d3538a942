//! Independent checker for canonical-labelling proofs.
//!
//! Every rule is validated by recomputing its side condition from the input
//! graph; nothing derived by the prover is trusted.

pub mod db;
pub mod ops;
pub mod verify;

pub use db::{Backend, FactDatabase, FlatDb, TrieDb};
pub use verify::{verify_batch, verify_ints, verify_proof, CanonicalForm, Checker, Failure, Job, Reason, RuleError, Verdict};
