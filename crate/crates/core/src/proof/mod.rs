//! Proof data model and the binary proof format.
//!
//! A proof is a sequence of integers: the vertex count `n`, then the rules
//! in application order, each as its code followed by its parameters.

pub mod codec;
pub mod fact;
pub mod rule;

use std::io::{self, Write};

pub use codec::{decode_int, decode_ints, encode_int, encode_ints, FormatError, IntReader, MAX_INT};
pub use fact::{fact_key, Fact};
pub use rule::{Rule, RULE_NAMES};

use codec::IntWriter;

/// Writes a proof incrementally.
pub struct ProofWriter<W: Write> {
    out: IntWriter<W>,
    buf: Vec<u32>,
    rules: u64,
}

impl<W: Write> ProofWriter<W> {
    pub fn new(out: W, n: usize) -> io::Result<Self> {
        let mut out = IntWriter::new(out);
        let n = u32::try_from(n).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "n too large"))?;
        out.write(&[n])?;
        Ok(ProofWriter { out, buf: Vec::new(), rules: 0 })
    }

    pub fn write_rule(&mut self, rule: &Rule) -> io::Result<()> {
        self.buf.clear();
        rule.encode_into(&mut self.buf);
        self.out.write(&self.buf)?;
        self.rules += 1;
        Ok(())
    }

    pub fn rules_written(&self) -> u64 {
        self.rules
    }

    pub fn bytes_written(&self) -> u64 {
        self.out.bytes_written()
    }

    pub fn finish(self) -> io::Result<W> {
        let mut w = self.out.into_inner();
        w.flush()?;
        Ok(w)
    }
}

/// Decodes rules one at a time, stopping after the first error.
pub struct RuleReader<'a> {
    r: IntReader<'a>,
    n: usize,
    failed: bool,
}

impl<'a> RuleReader<'a> {
    /// Reads the leading vertex count; the rules follow.
    pub fn new(ints: &'a [u32]) -> Result<Self, FormatError> {
        let mut r = IntReader::new(ints);
        let n = r.int().map_err(|_| FormatError::Empty)? as usize;
        Ok(RuleReader { r, n, failed: false })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl Iterator for RuleReader<'_> {
    type Item = Result<Rule, FormatError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.r.is_at_end() {
            return None;
        }
        let out = Rule::decode(&mut self.r, self.n);
        self.failed = out.is_err();
        Some(out)
    }
}

/// A fully decoded proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStream {
    pub n: usize,
    pub rules: Vec<Rule>,
}

impl ProofStream {
    pub fn to_ints(&self) -> Vec<u32> {
        let mut out = vec![self.n as u32];
        for r in &self.rules {
            r.encode_into(&mut out);
        }
        out
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>, FormatError> {
        encode_ints(&self.to_ints())
    }

    pub fn from_ints(ints: &[u32]) -> Result<Self, FormatError> {
        let reader = RuleReader::new(ints)?;
        let n = reader.n();
        Ok(ProofStream { n, rules: reader.collect::<Result<_, _>>()? })
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        Self::from_ints(&decode_ints(bytes)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writer_and_reader_agree() {
        let rules = vec![
            Rule::ColoringAxiom,
            Rule::PruneParent { nu: vec![1], cell: vec![0, 2] },
            Rule::PathAxiom,
        ];
        let mut w = ProofWriter::new(Vec::new(), 3).unwrap();
        for r in &rules {
            w.write_rule(r).unwrap();
        }
        assert_eq!(w.rules_written(), 3);
        let bytes_written = w.bytes_written();
        let bytes = w.finish().unwrap();
        assert_eq!(bytes.len() as u64, bytes_written);
        let p = ProofStream::from_bytes(&bytes).unwrap();
        assert_eq!(p, ProofStream { n: 3, rules: rules.clone() });
        assert_eq!(p.to_bytes().unwrap(), bytes);
    }

    #[test]
    fn reader_stops_after_error() {
        let ints = [3, 0, 99, 0];
        let out: Vec<_> = RuleReader::new(&ints).unwrap().collect();
        assert_eq!(out.len(), 2);
        assert!(out[1].is_err());
        assert_eq!(RuleReader::new(&[]).err(), Some(FormatError::Empty));
    }
}
