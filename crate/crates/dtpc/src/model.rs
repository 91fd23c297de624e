//! Core types: channel parameters, particle sequences, delay assignments,
//! and codebooks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact count type for codebook sizes and enumerative indices. Sizes grow
/// like `r^n` for a root `r > 1`, so fixed-width integers overflow quickly.
pub type BigCount = num_bigint::BigUint;

/// Channel parameters: at most `max_per_slot` particles enter per slot, and
/// each particle is delayed by 0 to `max_delay` slots.
///
/// Both bounds may be zero. `max_per_slot = 0` leaves only all-zero inputs;
/// `max_delay = 0` makes the channel an identity on counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelParams {
    pub max_per_slot: u32,
    pub max_delay: u32,
}

impl ChannelParams {
    pub fn new(max_per_slot: u32, max_delay: u32) -> Self {
        ChannelParams {
            max_per_slot,
            max_delay,
        }
    }
}

/// A finite sequence of per-slot particle counts.
///
/// Used for both channel inputs and channel outputs; outputs may hold more
/// than `max_per_slot` particles per slot because delayed particles pile up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParticleSeq {
    symbols: Vec<u32>,
}

impl ParticleSeq {
    pub fn new(symbols: Vec<u32>) -> Self {
        ParticleSeq { symbols }
    }

    /// The all-zero sequence of the given length.
    pub fn zeros(len: usize) -> Self {
        ParticleSeq {
            symbols: vec![0; len],
        }
    }

    pub fn empty() -> Self {
        ParticleSeq::default()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Total number of particles in the sequence.
    pub fn weight(&self) -> u64 {
        self.symbols.iter().map(|&s| u64::from(s)).sum()
    }

    /// Concatenation; the empty sequence is the identity.
    pub fn concat(&self, other: &ParticleSeq) -> ParticleSeq {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        ParticleSeq { symbols }
    }

    /// Whether the last `min(len, max_delay)` symbols are all zero, i.e. the
    /// tail leaves room for every particle's delay inside the block.
    pub fn is_zero_padded(&self, params: ChannelParams) -> bool {
        let pad = self.len().min(params.max_delay as usize);
        self.symbols[self.len() - pad..].iter().all(|&s| s == 0)
    }
}

impl From<Vec<u32>> for ParticleSeq {
    fn from(symbols: Vec<u32>) -> Self {
        ParticleSeq::new(symbols)
    }
}

impl<const L: usize> From<[u32; L]> for ParticleSeq {
    fn from(symbols: [u32; L]) -> Self {
        ParticleSeq::new(symbols.to_vec())
    }
}

impl FromIterator<u32> for ParticleSeq {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        ParticleSeq::new(iter.into_iter().collect())
    }
}

/// Space-separated decimal counts, e.g. `2 1 0 1 0`. The empty sequence
/// prints as the empty string.
impl fmt::Display for ParticleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for ParticleSeq {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| tok.parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(ParticleSeq::new)
    }
}

/// One delay per particle: slot `i` of the input carries `x_i` particles, so
/// `per_slot[i]` must hold exactly `x_i` delays, each in `0..=max_delay`.
/// Particles are identical, so the delays per slot form a multiset; order
/// within a slot does not matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayAssignment {
    per_slot: Vec<Vec<u32>>,
}

impl DelayAssignment {
    pub fn new(per_slot: Vec<Vec<u32>>) -> Self {
        DelayAssignment { per_slot }
    }

    /// The assignment that delays nothing: every particle of `x` gets 0.
    pub fn all_zero(x: &ParticleSeq) -> Self {
        DelayAssignment {
            per_slot: x.symbols().iter().map(|&s| vec![0; s as usize]).collect(),
        }
    }

    pub fn per_slot(&self) -> &[Vec<u32>] {
        &self.per_slot
    }

    /// Check this assignment against an input sequence and the channel
    /// bounds: one delay per particle, every delay within range.
    pub fn validate(&self, params: ChannelParams, x: &ParticleSeq) -> Result<()> {
        if self.per_slot.len() != x.len() {
            let slot = self.per_slot.len().min(x.len());
            return Err(Error::DelayCountMismatch {
                slot,
                expected: x.symbols().get(slot).copied().unwrap_or(0),
                got: self.per_slot.get(slot).map_or(0, |d| d.len()),
            });
        }
        for (slot, (delays, &sent)) in self.per_slot.iter().zip(x.symbols()).enumerate() {
            if delays.len() != sent as usize {
                return Err(Error::DelayCountMismatch {
                    slot,
                    expected: sent,
                    got: delays.len(),
                });
            }
            if let Some(&delay) = delays.iter().find(|&&d| d > params.max_delay) {
                return Err(Error::DelayOutOfRange {
                    slot,
                    delay,
                    max: params.max_delay,
                });
            }
        }
        Ok(())
    }
}

/// A set of equal-length words over the channel's input alphabet, kept in
/// inverse-lexicographic order (larger symbol at the first differing slot
/// first). That is the order the optimal construction produces and the order
/// every external listing uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    params: ChannelParams,
    word_len: usize,
    words: Vec<ParticleSeq>,
}

impl Codebook {
    /// Build a codebook from arbitrary words, validating lengths and symbol
    /// bounds, sorting into canonical order, and rejecting duplicates.
    pub fn new(
        params: ChannelParams,
        word_len: usize,
        words: impl IntoIterator<Item = ParticleSeq>,
    ) -> Result<Self> {
        let mut words: Vec<ParticleSeq> = words.into_iter().collect();
        for w in &words {
            if w.len() != word_len {
                return Err(Error::WordLengthMismatch {
                    expected: word_len,
                    got: w.len(),
                });
            }
            for (slot, &symbol) in w.symbols().iter().enumerate() {
                if symbol > params.max_per_slot {
                    return Err(Error::SymbolOutOfRange {
                        slot,
                        symbol,
                        max: params.max_per_slot,
                    });
                }
            }
        }
        words.sort_by(|a, b| b.cmp(a));
        if let Some(dup) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateWord {
                word: dup[0].clone(),
            });
        }
        Ok(Codebook {
            params,
            word_len,
            words,
        })
    }

    /// Construction-internal constructor: `words` must already be distinct,
    /// in-bounds, and in inverse-lexicographic order.
    pub(crate) fn from_sorted_unchecked(
        params: ChannelParams,
        word_len: usize,
        words: Vec<ParticleSeq>,
    ) -> Self {
        debug_assert!(words.windows(2).all(|w| w[0] > w[1]));
        Codebook {
            params,
            word_len,
            words,
        }
    }

    pub fn params(&self) -> ChannelParams {
        self.params
    }

    /// Blocklength of every word.
    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in inverse-lexicographic order.
    pub fn words(&self) -> &[ParticleSeq] {
        &self.words
    }

    pub fn contains(&self, word: &ParticleSeq) -> bool {
        self.words.binary_search_by(|probe| word.cmp(probe)).is_ok()
    }

    pub fn is_zero_padded(&self) -> bool {
        self.words.iter().all(|w| w.is_zero_padded(self.params))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ParticleSeq> {
        self.words.iter()
    }
}

impl<'a> IntoIterator for &'a Codebook {
    type Item = &'a ParticleSeq;
    type IntoIter = std::slice::Iter<'a, ParticleSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.words.iter()
    }
}
