//! Linear-time decoding of received count sequences back to codewords.
//!
//! The decoder walks the received word left to right and resolves one
//! recursion step at a time. Let `q` be the number of particles in the next
//! `max_delay + 1` slots. If `q < max_per_slot`, the codeword prefix can only
//! have been a partial slot of `q` particles followed by forced zeros: those
//! slots are consumed whole. Otherwise the prefix slot was full; whatever is
//! missing from the first received slot was delayed, so the decoder returns
//! the missing particles from the earliest following slots and consumes a
//! single slot. Each step takes `O(max_delay)` and consumes at least one
//! slot, so decoding is linear in the blocklength.

use crate::error::{Error, Result};
use crate::model::{ChannelParams, ParticleSeq};

/// Decode a received word back to the unique codeword of blocklength `n`
/// that can produce it. Accepts `y` of length `n`, or of length
/// `n + max_delay` when the tail past `n` is all zero (the full transmit
/// window of a zero-padded word). Fails fast with a slot diagnostic when no
/// codeword can explain the counts.
pub fn decode(params: ChannelParams, n: usize, y: &ParticleSeq) -> Result<ParticleSeq> {
    let k = params.max_delay as usize;
    let full = params.max_per_slot;

    if y.len() == n + k {
        if let Some(offset) = y.symbols()[n..].iter().position(|&s| s != 0) {
            return Err(Error::UndecodableTail { slot: n + offset });
        }
    } else if y.len() != n {
        return Err(Error::UndecodableLength {
            got: y.len(),
            expected: n,
            padded: n + k,
        });
    }

    let mut counts = y.symbols()[..n].to_vec();
    let mut word = Vec::with_capacity(n);
    let mut at = 0; // slots before `at` are fully resolved
    while n - at > k {
        let head: u64 = counts[at..=at + k].iter().map(|&v| u64::from(v)).sum();
        if head < u64::from(full) {
            // Partial slot: all `head` particles were sent at `at`, the next
            // `max_delay` slots of the codeword are forced zeros, and no
            // later particle can land this early. Consume the whole window.
            word.push(head as u32);
            word.extend(std::iter::repeat_n(0, k));
            at += k + 1;
        } else {
            // Full slot. More arrivals than a full slot is impossible: only
            // slot `at` can reach slot `at` of the remaining output.
            if counts[at] > full {
                return Err(Error::UndecodableSlot {
                    slot: at,
                    observed: counts[at],
                });
            }
            // Return the delayed part of the full slot from the earliest
            // following slots; afterwards the tail is again a clean output
            // of the remaining codeword.
            let mut missing = u64::from(full) - u64::from(counts[at]);
            for v in counts[at + 1..=at + k].iter_mut() {
                let taken = missing.min(u64::from(*v));
                *v -= taken as u32;
                missing -= taken;
            }
            // head >= full guarantees the window covers the missing part.
            debug_assert_eq!(missing, 0);
            word.push(full);
            at += 1;
        }
    }
    // Base case: the codeword ends in silence, so must the counts.
    if let Some(offset) = counts[at..].iter().position(|&s| s != 0) {
        return Err(Error::UndecodableTail { slot: at + offset });
    }
    word.extend(std::iter::repeat_n(0, n - at));
    Ok(ParticleSeq::new(word))
}

/// Decode a back-to-back stream of `m` blocks of blocklength `n` (received
/// length exactly `m * n`, `m >= 1`). Zero-padding confines every block's
/// particles to its own block, so blocks decode independently; a failure
/// reports the index of the offending block.
pub fn decode_stream(params: ChannelParams, n: usize, y: &ParticleSeq) -> Result<Vec<ParticleSeq>> {
    if n == 0 || y.is_empty() || !y.len().is_multiple_of(n) {
        return Err(Error::StreamLength {
            got: y.len(),
            block_len: n,
        });
    }
    y.symbols()
        .chunks(n)
        .enumerate()
        .map(|(block, chunk)| {
            decode(params, n, &ParticleSeq::new(chunk.to_vec())).map_err(|source| {
                Error::BlockDecode {
                    block,
                    source: Box::new(source),
                }
            })
        })
        .collect()
}
