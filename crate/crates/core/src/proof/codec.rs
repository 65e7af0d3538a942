//! Fixed-width integer codec and the integer cursor used by rule decoding.
//!
//! Every integer occupies six bytes in the RFC 2279 six-byte pattern:
//! a lead byte `1111110x` followed by five `10xxxxxx` continuation bytes,
//! carrying 31 payload bits.

use std::io::{self, Write};

use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::Vertex;
use crate::perm::Permutation;

/// Largest value representable on the wire.
pub const MAX_INT: u32 = (1 << 31) - 1;
pub const INT_BYTES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("value {0} exceeds the 31-bit wire limit")]
    Range(u64),
    #[error("malformed integer at byte {offset}")]
    Malformed { offset: usize },
    #[error("stream truncated inside an integer at byte {offset}")]
    TruncatedBytes { offset: usize },
    #[error("unknown rule code {0}")]
    UnknownCode(u32),
    #[error("stream ends inside a rule")]
    TruncatedRule,
    #[error("empty proof stream")]
    Empty,
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl FormatError {
    /// Whether the error concerns a parameter value rather than the framing.
    pub fn is_parameter(&self) -> bool {
        matches!(self, FormatError::Parameter(_))
    }
}

pub fn encode_int(v: u32) -> Result<[u8; INT_BYTES], FormatError> {
    if v > MAX_INT {
        return Err(FormatError::Range(v as u64));
    }
    Ok([
        0xFC | (v >> 30) as u8,
        0x80 | ((v >> 24) & 0x3F) as u8,
        0x80 | ((v >> 18) & 0x3F) as u8,
        0x80 | ((v >> 12) & 0x3F) as u8,
        0x80 | ((v >> 6) & 0x3F) as u8,
        0x80 | (v & 0x3F) as u8,
    ])
}

/// Decodes exactly one six-byte integer.
pub fn decode_int(bytes: &[u8]) -> Result<u32, FormatError> {
    decode_at(bytes, 0)
}

fn decode_at(bytes: &[u8], offset: usize) -> Result<u32, FormatError> {
    if bytes.len() < INT_BYTES {
        return Err(FormatError::TruncatedBytes { offset });
    }
    if bytes.len() > INT_BYTES || bytes[0] & 0xFE != 0xFC {
        return Err(FormatError::Malformed { offset });
    }
    let mut v = (bytes[0] & 1) as u32;
    for (i, &b) in bytes[1..].iter().enumerate() {
        if b & 0xC0 != 0x80 {
            return Err(FormatError::Malformed { offset: offset + 1 + i });
        }
        v = v << 6 | (b & 0x3F) as u32;
    }
    Ok(v)
}

pub fn encode_ints(ints: &[u32]) -> Result<Vec<u8>, FormatError> {
    let mut out = Vec::with_capacity(ints.len() * INT_BYTES);
    for &v in ints {
        out.extend_from_slice(&encode_int(v)?);
    }
    Ok(out)
}

pub fn decode_ints(bytes: &[u8]) -> Result<Vec<u32>, FormatError> {
    let chunks = bytes.chunks(INT_BYTES);
    let mut out = Vec::with_capacity(chunks.len());
    for (i, chunk) in chunks.enumerate() {
        out.push(decode_at(chunk, i * INT_BYTES)?);
    }
    Ok(out)
}

/// Streams integers to a byte sink, counting the bytes written.
pub struct IntWriter<W: Write> {
    out: W,
    bytes: u64,
}

impl<W: Write> IntWriter<W> {
    pub fn new(out: W) -> Self {
        IntWriter { out, bytes: 0 }
    }

    pub fn write(&mut self, ints: &[u32]) -> io::Result<()> {
        for &v in ints {
            let b = encode_int(v).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
            self.out.write_all(&b)?;
            self.bytes += INT_BYTES as u64;
        }
        Ok(())
    }

    pub fn bytes_written(&self) -> u64 {
        self.bytes
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Reads typed parameters from a decoded integer stream.
pub struct IntReader<'a> {
    ints: &'a [u32],
    pos: usize,
}

impl<'a> IntReader<'a> {
    pub fn new(ints: &'a [u32]) -> Self {
        IntReader { ints, pos: 0 }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos >= self.ints.len()
    }

    pub fn int(&mut self) -> Result<u32, FormatError> {
        let v = *self.ints.get(self.pos).ok_or(FormatError::TruncatedRule)?;
        self.pos += 1;
        Ok(v)
    }

    pub fn vertex(&mut self, n: usize) -> Result<Vertex, FormatError> {
        let v = self.int()?;
        if v as usize >= n {
            return Err(param(format!("vertex {v} out of range for n = {n}")));
        }
        Ok(v)
    }

    fn len(&mut self, n: usize) -> Result<usize, FormatError> {
        let l = self.int()? as usize;
        if l > n {
            return Err(param(format!("length {l} exceeds n = {n}")));
        }
        Ok(l)
    }

    /// Length-prefixed sequence of distinct vertices.
    pub fn sequence(&mut self, n: usize) -> Result<Vec<Vertex>, FormatError> {
        let l = self.len(n)?;
        self.sequence_of_len(l, n)
    }

    pub fn sequence_of_len(&mut self, l: usize, n: usize) -> Result<Vec<Vertex>, FormatError> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(l);
        for _ in 0..l {
            let v = self.vertex(n)?;
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(param(format!("vertex {v} repeated in a sequence")));
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Length-prefixed, strictly ascending vertex set.
    pub fn set(&mut self, n: usize) -> Result<Vec<Vertex>, FormatError> {
        let l = self.len(n)?;
        let mut out: Vec<Vertex> = Vec::with_capacity(l);
        for _ in 0..l {
            let v = self.vertex(n)?;
            if out.last().is_some_and(|&last| last >= v) {
                return Err(param("set not strictly ascending".into()));
            }
            out.push(v);
        }
        Ok(out)
    }

    /// `n` colors, one per vertex.
    pub fn coloring(&mut self, n: usize) -> Result<Coloring, FormatError> {
        let mut colors = Vec::with_capacity(n);
        for _ in 0..n {
            colors.push(self.int()?);
        }
        Coloring::from_colors(colors).map_err(|e| param(e.to_string()))
    }

    /// `n` images, one per vertex.
    pub fn permutation(&mut self, n: usize) -> Result<Permutation, FormatError> {
        let mut images = Vec::with_capacity(n);
        for _ in 0..n {
            images.push(self.int()?);
        }
        Permutation::from_images(images).map_err(|e| param(e.to_string()))
    }
}

fn param(msg: String) -> FormatError {
    FormatError::Parameter(msg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        assert_eq!(encode_int(0).unwrap(), [0xFC, 0x80, 0x80, 0x80, 0x80, 0x80]);
        assert_eq!(encode_int(17).unwrap(), [0xFC, 0x80, 0x80, 0x80, 0x80, 0x91]);
        assert_eq!(encode_int(MAX_INT).unwrap(), [0xFD, 0xBF, 0xBF, 0xBF, 0xBF, 0xBF]);
        assert_eq!(encode_int(1 << 31), Err(FormatError::Range(1 << 31)));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_int(&[0xFC, 0x80, 0x80, 0x80, 0x80, 0x80]), Ok(0));
        assert_eq!(decode_int(&[0xFC, 0x80, 0x80, 0x80, 0x80, 0x91]), Ok(17));
        assert!(matches!(
            decode_int(&[0xFF, 0x80, 0x80, 0x80, 0x80, 0x80]),
            Err(FormatError::Malformed { .. })
        ));
        assert!(matches!(
            decode_int(&[0xFC, 0x80, 0xC0, 0x80, 0x80, 0x80]),
            Err(FormatError::Malformed { offset: 2 })
        ));
        assert!(matches!(
            decode_int(&[0xFC, 0x80]),
            Err(FormatError::TruncatedBytes { .. })
        ));
    }

    #[test]
    fn boundary_round_trip() {
        for v in [0, 1, 1 << 6, 1 << 12, 1 << 18, 1 << 24, 1 << 30, MAX_INT] {
            assert_eq!(decode_int(&encode_int(v).unwrap()), Ok(v));
        }
    }

    #[test]
    fn stream_truncation_is_reported() {
        let mut b = encode_ints(&[3, 4]).unwrap();
        b.pop();
        assert_eq!(decode_ints(&b), Err(FormatError::TruncatedBytes { offset: 6 }));
    }

    #[test]
    fn reader_validates_parameters() {
        let ints = [2, 1, 1];
        assert!(IntReader::new(&ints).sequence(3).is_err());
        assert!(IntReader::new(&ints).set(3).is_err());
        assert!(IntReader::new(&[2, 0, 2]).set(3).is_ok());
        assert!(IntReader::new(&[4, 0, 1, 2, 0]).sequence(3).is_err());
        assert!(IntReader::new(&[0, 2, 2]).coloring(3).is_err());
        assert!(IntReader::new(&[0, 2, 1]).coloring(3).is_ok());
        assert!(IntReader::new(&[0, 0, 1]).permutation(3).is_err());
        assert_eq!(IntReader::new(&[1]).sequence(3), Err(FormatError::TruncatedRule));
    }
}
