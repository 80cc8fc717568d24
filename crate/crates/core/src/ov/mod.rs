//! Orthogonal-vectors primitives.
//!
//! A [`BitVector`] is one 0/1 vector of dimension `l`; an [`OvInstance`] is a
//! deduplicated, indexed list of them. Coordinates and vector ids are
//! 0-based throughout the crate.

mod format;
mod generate;
mod search;

use std::fmt;

use thiserror::Error;

pub use generate::{
    gen_no_instance, gen_planted_distinct, gen_random, planted_blocks, NoInstanceMode,
    DEFAULT_REJECTION_ATTEMPTS, DEFAULT_REJECTION_DENSITY,
};
pub use search::{classify, find_orthogonal_tuple, ClassTag, InstanceClass, MAX_BRUTE_FORCE_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OvError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("vectors must have dimension at least 1")]
    EmptyDimension,
    #[error("an instance needs at least one vector")]
    EmptyInstance,
    #[error("tuple size {0} outside 1..=4")]
    TupleSize(usize),
    #[error("no index where all four vectors are 1: the quadruple is orthogonal")]
    UndefinedIndex,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("rejection sampling exhausted after {0} attempts")]
    Exhausted(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A fixed-length 0/1 vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Parses a string over `{0,1}` such as `"0110"`.
    pub fn parse(s: &str) -> Result<Self, OvError> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(OvError::Parse {
                        line: 0,
                        msg: format!("invalid character {other:?} at column {}", pos + 1),
                    })
                }
            }
        }
        if bits.is_empty() {
            return Err(OvError::EmptyDimension);
        }
        Ok(Self::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "coordinate {i} out of range for dimension {}",
            self.len
        );
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(
            i < self.len,
            "coordinate {i} out of range for dimension {}",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The vector as a single word, for dimensions up to 64.
    pub fn as_mask(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

fn check_same_dim(tuple: &[&BitVector]) -> Result<usize, OvError> {
    let dim = tuple.first().map(|v| v.len()).unwrap_or(0);
    for v in tuple {
        if v.len() != dim {
            return Err(OvError::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(dim)
}

/// Coordinatewise AND of all members of `tuple`.
fn common_ones(tuple: &[&BitVector]) -> Vec<u64> {
    let mut acc = tuple[0].words.clone();
    for v in &tuple[1..] {
        for (a, w) in acc.iter_mut().zip(&v.words) {
            *a &= w;
        }
    }
    acc
}

/// True iff every coordinate has a zero in some member of `tuple`.
pub fn is_orthogonal(tuple: &[&BitVector]) -> Result<bool, OvError> {
    if tuple.is_empty() || tuple.len() > 4 {
        return Err(OvError::TupleSize(tuple.len()));
    }
    check_same_dim(tuple)?;
    Ok(common_ones(tuple).iter().all(|&w| w == 0))
}

/// Smallest coordinate at which all four vectors are 1.
pub fn ind_min(
    a: &BitVector,
    b: &BitVector,
    c: &BitVector,
    d: &BitVector,
) -> Result<usize, OvError> {
    let tuple = [a, b, c, d];
    check_same_dim(&tuple)?;
    common_ones(&tuple)
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
        .ok_or(OvError::UndefinedIndex)
}

#[inline]
pub fn maj3(x: bool, y: bool, z: bool) -> bool {
    (x as u8 + y as u8 + z as u8) >= 2
}

/// A set of distinct 0/1 vectors of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    vectors: Vec<BitVector>,
    dim: usize,
}

impl OvInstance {
    /// Builds an instance, dropping repeated vectors (first occurrence wins).
    pub fn new(vectors: Vec<BitVector>) -> Result<Self, OvError> {
        let dim = vectors.first().ok_or(OvError::EmptyInstance)?.len();
        if dim == 0 {
            return Err(OvError::EmptyDimension);
        }
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != dim {
                return Err(OvError::Dimension {
                    expected: dim,
                    found: v.len(),
                });
            }
            if seen.insert(v.clone()) {
                kept.push(v);
            }
        }
        Ok(OvInstance { vectors: kept, dim })
    }

    /// Convenience constructor from strings like `["111", "110"]`.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, OvError> {
        let vectors = rows
            .iter()
            .map(|s| BitVector::parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(vectors)
    }

    /// Number of (distinct) vectors.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    pub fn vector(&self, id: usize) -> &BitVector {
        &self.vectors[id]
    }

    /// One word per vector; only available when `dim <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        self.vectors.iter().map(BitVector::as_mask).collect()
    }

    /// Whether the vectors with the given ids form an orthogonal tuple.
    pub fn ids_orthogonal(&self, ids: &[usize]) -> bool {
        let tuple: Vec<&BitVector> = ids.iter().map(|&i| &self.vectors[i]).collect();
        is_orthogonal(&tuple).unwrap_or(false)
    }
}
