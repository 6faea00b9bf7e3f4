//! Fixed-length computational basis labels.
//!
//! A [`Bitstring`] stores qubit `j` in bit `j` of an integer (qubit 0 is the
//! least significant bit of the basis index). The textual form lists qubit 0
//! first, so the one-hot TSP string `010001100` reads position block by
//! position block from left to right.

use std::fmt;
use std::str::FromStr;

use crate::error::{QaoaError, Result};

/// Largest register width a [`Bitstring`] can label.
pub const MAX_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring {
    value: u64,
    len: usize,
}

impl Bitstring {
    pub fn new(value: u64, len: usize) -> Result<Self> {
        if len > MAX_BITS {
            return Err(QaoaError::invalid(format!(
                "bitstring length {len} exceeds {MAX_BITS}"
            )));
        }
        if len < MAX_BITS && value >> len != 0 {
            return Err(QaoaError::invalid(format!(
                "value {value} does not fit in {len} bits"
            )));
        }
        Ok(Self { value, len })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// Builds a bitstring from per-qubit values, qubit 0 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let value = bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &b)| if b { acc | (1u64 << j) } else { acc });
        Self::new(value, bits.len())
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bit(&self, qubit: usize) -> bool {
        qubit < self.len && (self.value >> qubit) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self {
            value: !self.value & mask(self.len),
            len: self.len,
        }
    }
}

/// All-ones mask over the low `len` bits.
#[inline]
pub fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|j| if self.bit(j) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for Bitstring {
    type Err = QaoaError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(QaoaError::invalid(format!(
                    "unexpected character {other:?} in bitstring"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}
