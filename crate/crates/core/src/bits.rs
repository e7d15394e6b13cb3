//! Length-`n` bit-strings `j_1 ... j_n` over the qubit array.
//!
//! A bit-string doubles as a basis-state label: its basis index is
//! `sum_k j_k * 2^(n-k)`, so qubit 1 is the most significant bit and the
//! stored word *is* the index. Text form is leftmost = qubit 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::MAX_QUBITS;

/// An `n`-bit string stored as its lexicographic basis index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: u8,
    bits: u64,
}

impl BitString {
    /// Builds a bit-string from its basis index (`j_1` = most significant).
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        check_width(n)?;
        if n < 64 && index >> n != 0 {
            return Err(Error::invalid(format!(
                "index {index} out of range for {n} qubits"
            )));
        }
        Ok(BitString {
            n: n as u8,
            bits: index,
        })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_index(n, 0)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The lexicographic basis index `sum_k j_k 2^(n-k)`.
    pub fn index(&self) -> u64 {
        self.bits
    }

    /// Value of `j_k` for 1-based qubit `k`.
    pub fn bit(&self, k: usize) -> u8 {
        debug_assert!(k >= 1 && k <= self.n());
        ((self.bits >> (self.n() - k)) & 1) as u8
    }

    /// Number of 1s in the string.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Complements every bit; an involution that maps weight `w` to `n - w`.
    pub fn flip_all(&self) -> Self {
        let mask = full_mask(self.n());
        BitString {
            n: self.n,
            bits: self.bits ^ mask,
        }
    }
}

/// All-ones mask over `n` bit positions.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::ResourceCap {
            what: "bit-string width",
            n,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=self.n() {
            write!(f, "{}", self.bit(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        check_width(s.len())?;
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            bits <<= 1;
            match ch {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::invalid(format!(
                        "bit-string may contain only 0/1, found {ch:?} at position {i}"
                    )))
                }
            }
        }
        Ok(BitString {
            n: s.len() as u8,
            bits,
        })
    }
}
