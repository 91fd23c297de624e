//! Verification oracles: confusability witnesses, zero-error checks for
//! codebooks, an exact maximum-independent-set bound for small blocklengths,
//! and the membrane-channel equivalence check.

use crate::channel;
use crate::codes;
use crate::error::{Error, Result};
use crate::model::{BigCount, ChannelParams, Codebook, ParticleSeq};

/// Default cap on the confusability-graph size for the exact search.
pub const DEFAULT_VERTEX_LIMIT: usize = 64;

/// Hard engine ceiling: adjacency rows are single 128-bit masks.
pub const MAX_VERTEX_LIMIT: usize = 128;

/// Cumulative counts of `v` over `1..=window`, saturating at the total
/// weight past the end.
fn cumulative(v: &ParticleSeq, window: usize) -> Vec<u64> {
    let mut sums = Vec::with_capacity(window);
    let mut acc = 0u64;
    for j in 0..window {
        acc += u64::from(v.symbols().get(j).copied().unwrap_or(0));
        sums.push(acc);
    }
    sums
}

/// Whether two inputs can produce the same output, and if so one such
/// output. `x` and `y` are confusable exactly when they have equal weight
/// and each one's cumulative count trails the other's by at most the delay
/// window, i.e. `S(x, j) <= S(y, j + K)` and `S(y, j) <= S(x, j + K)` for
/// all `j` (writing `K` for `max_delay`). The returned witness is the
/// latest-possible common output, of length `max(len(x), len(y)) + K`;
/// `None` means no common output exists.
pub fn confusable(params: ChannelParams, x: &ParticleSeq, y: &ParticleSeq) -> Option<ParticleSeq> {
    if x.weight() != y.weight() {
        return None;
    }
    let k = params.max_delay as usize;
    let window = x.len().max(y.len()) + k;
    let sx = cumulative(x, window);
    let sy = cumulative(y, window);
    for j in 0..window {
        // Cumulative counts saturate past the end, so the `j + K` bound is
        // automatic once `j + K` falls off the window.
        if j + k < window && (sx[j] > sy[j + k] || sy[j] > sx[j + k]) {
            return None;
        }
    }
    // The pointwise-minimum cumulative profile is itself a valid common
    // output: it is monotone, and the cross conditions above are exactly
    // what both senders need to reach it.
    let mut witness = Vec::with_capacity(window);
    let mut prev = 0u64;
    for j in 0..window {
        let here = sx[j].min(sy[j]);
        witness.push((here - prev) as u32);
        prev = here;
    }
    Some(ParticleSeq::new(witness))
}

/// Confusability when the channel caps arrivals at `max_per_slot`: the
/// witness must additionally stay within the cap in every slot. The
/// greedy profile that fills every slot as early as the cap allows is the
/// pointwise-largest admissible one, so feasibility reduces to checking it.
pub fn confusable_membrane(
    params: ChannelParams,
    x: &ParticleSeq,
    y: &ParticleSeq,
) -> Option<ParticleSeq> {
    if x.weight() != y.weight() {
        return None;
    }
    let k = params.max_delay as usize;
    let cap = u64::from(params.max_per_slot);
    let window = x.len().max(y.len()) + k;
    let sx = cumulative(x, window);
    let sy = cumulative(y, window);
    // Largest capped profile below both cumulative curves.
    let mut profile = Vec::with_capacity(window);
    let mut prev = 0u64;
    for j in 0..window {
        let here = sx[j].min(sy[j]).min(prev + cap);
        profile.push(here);
        prev = here;
    }
    // Both senders must be able to flush everything into the profile.
    for j in 0..window {
        let deadline = (j + k).min(window - 1);
        if sx[j] > profile[deadline] || sy[j] > profile[deadline] {
            return None;
        }
    }
    if profile.last().copied().unwrap_or(0) != x.weight() {
        // Possible only for nonempty windows that cannot drain the weight.
        return None;
    }
    let mut witness = Vec::with_capacity(window);
    let mut prev = 0u64;
    for &here in &profile {
        witness.push((here - prev) as u32);
        prev = here;
    }
    Some(ParticleSeq::new(witness))
}

/// Zero-error check for a zero-padded codebook: padding confines every
/// word's particles to its own block, so pairwise non-confusability is
/// equivalent to zero-error over arbitrarily long message sequences.
/// Returns the first counterexample `(x, y, witness)` in canonical order,
/// or `None` if the code is zero-error. Rejects codebooks that are not
/// zero-padded; those need [`is_zero_error_sequences`].
pub fn is_zero_error_padded(
    cb: &Codebook,
) -> Result<Option<(ParticleSeq, ParticleSeq, ParticleSeq)>> {
    let params = cb.params();
    if let Some(w) = cb.iter().find(|w| !w.is_zero_padded(params)) {
        return Err(Error::NotZeroPadded { word: w.clone() });
    }
    let words = cb.words();
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            if let Some(witness) = confusable(params, x, y) {
                return Ok(Some((x.clone(), y.clone(), witness)));
            }
        }
    }
    Ok(None)
}

/// A confusable pair of distinct codeword sequences, found by
/// [`is_zero_error_sequences`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCounterexample {
    /// Codewords concatenated to form the first sequence.
    pub left_factors: Vec<ParticleSeq>,
    /// Codewords concatenated to form the second sequence.
    pub right_factors: Vec<ParticleSeq>,
    /// A common output of the two concatenations.
    pub witness: ParticleSeq,
}

impl SequenceCounterexample {
    /// The first sequence as one word.
    pub fn left(&self) -> ParticleSeq {
        concat_all(&self.left_factors)
    }

    /// The second sequence as one word.
    pub fn right(&self) -> ParticleSeq {
        concat_all(&self.right_factors)
    }
}

fn concat_all(factors: &[ParticleSeq]) -> ParticleSeq {
    factors
        .iter()
        .fold(ParticleSeq::empty(), |acc, w| acc.concat(w))
}

/// Zero-error check by definition, for arbitrary (not necessarily
/// zero-padded) codebooks: test every pair of distinct concatenations of
/// `m'` codewords for every `m' <= max_factors`. Uses the default budget
/// for the number of concatenations.
pub fn is_zero_error_sequences(
    cb: &Codebook,
    max_factors: usize,
) -> Result<Option<SequenceCounterexample>> {
    is_zero_error_sequences_with_budget(cb, max_factors, channel::DEFAULT_ENUMERATION_BUDGET)
}

/// As [`is_zero_error_sequences`] with an explicit budget on
/// `len(cb)^max_factors`, the number of longest concatenations.
pub fn is_zero_error_sequences_with_budget(
    cb: &Codebook,
    max_factors: usize,
    budget: u64,
) -> Result<Option<SequenceCounterexample>> {
    sequences_counterexample(cb, max_factors, budget, confusable)
}

/// Shared scan for both channel semantics.
fn sequences_counterexample(
    cb: &Codebook,
    max_factors: usize,
    budget: u64,
    confusability: impl Fn(ChannelParams, &ParticleSeq, &ParticleSeq) -> Option<ParticleSeq>,
) -> Result<Option<SequenceCounterexample>> {
    let params = cb.params();
    let exponent = u32::try_from(max_factors).unwrap_or(u32::MAX).min(1 << 16);
    let required = BigCount::from(cb.len()).pow(exponent);
    if required > BigCount::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    for factors in 1..=max_factors {
        let tuples = all_tuples(cb.words(), factors);
        for (i, left) in tuples.iter().enumerate() {
            let left_word = concat_all(left);
            for right in &tuples[i + 1..] {
                let right_word = concat_all(right);
                if let Some(witness) = confusability(params, &left_word, &right_word) {
                    return Ok(Some(SequenceCounterexample {
                        left_factors: left.clone(),
                        right_factors: right.clone(),
                        witness,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// All `factors`-tuples over `words`, in lexicographic index order (which
/// keeps counterexample reporting deterministic).
fn all_tuples(words: &[ParticleSeq], factors: usize) -> Vec<Vec<ParticleSeq>> {
    let mut tuples: Vec<Vec<ParticleSeq>> = vec![Vec::new()];
    for _ in 0..factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                words.iter().map(move |w| {
                    let mut next = t.clone();
                    next.push(w.clone());
                    next
                })
            })
            .collect();
    }
    tuples
}

/// The size of a largest zero-error, zero-padded code of blocklength `n`,
/// found by exact branch-and-bound over the confusability graph of all
/// zero-padded words. Uses the default vertex limit.
pub fn max_zero_error_padded(params: ChannelParams, n: usize) -> Result<BigCount> {
    max_zero_error_padded_with_limit(params, n, DEFAULT_VERTEX_LIMIT)
}

/// As [`max_zero_error_padded`] with an explicit vertex limit (at most
/// [`MAX_VERTEX_LIMIT`]).
pub fn max_zero_error_padded_with_limit(
    params: ChannelParams,
    n: usize,
    limit: usize,
) -> Result<BigCount> {
    let limit = limit.min(MAX_VERTEX_LIMIT);
    let vertices = codes::zero_padded_words_checked(params, n, limit as u64)?;
    debug_assert!(vertices.len() <= 128);

    // Confusability adjacency as bitmasks.
    let adjacency: Vec<u128> = vertices
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut row = 0u128;
            for (j, y) in vertices.iter().enumerate() {
                if i != j && confusable(params, x, y).is_some() {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();

    // Greedy independent set for the initial bound.
    let mut greedy = 0u32;
    let free = if vertices.len() == 128 {
        u128::MAX
    } else {
        (1u128 << vertices.len()) - 1
    };
    {
        let mut left = free;
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            greedy += 1;
            left &= !(adjacency[v] | (1 << v));
        }
    }

    let mut best = greedy;
    branch_and_bound(&adjacency, free, 0, &mut best);
    Ok(BigCount::from(best))
}

/// Classic maximum-independent-set search: bound by `chosen + |candidates|`,
/// branch on a highest-degree candidate (include it or drop it).
fn branch_and_bound(adjacency: &[u128], candidates: u128, chosen: u32, best: &mut u32) {
    if chosen + candidates.count_ones() <= *best {
        return;
    }
    if candidates == 0 {
        *best = (*best).max(chosen);
        return;
    }
    let pivot = {
        let mut pivot = 0;
        let mut degree = 0;
        let mut left = candidates;
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            left &= left - 1;
            let d = (adjacency[v] & candidates).count_ones();
            if d >= degree {
                degree = d;
                pivot = v;
            }
        }
        pivot
    };
    // Include the pivot...
    branch_and_bound(
        adjacency,
        candidates & !(adjacency[pivot] | (1 << pivot)),
        chosen + 1,
        best,
    );
    // ...or exclude it.
    branch_and_bound(adjacency, candidates & !(1 << pivot), chosen, best);
}

/// Whether the code's zero-error status (pairwise and over concatenations
/// up to `max_factors`) is the same with and without the arrival cap. Uses
/// the default concatenation budget.
pub fn membrane_equivalent(cb: &Codebook, max_factors: usize) -> Result<bool> {
    membrane_equivalent_with_budget(cb, max_factors, channel::DEFAULT_ENUMERATION_BUDGET)
}

/// As [`membrane_equivalent`] with an explicit budget.
pub fn membrane_equivalent_with_budget(
    cb: &Codebook,
    max_factors: usize,
    budget: u64,
) -> Result<bool> {
    let plain = sequences_counterexample(cb, max_factors, budget, confusable)?;
    let capped = sequences_counterexample(cb, max_factors, budget, confusable_membrane)?;
    Ok(plain.is_some() == capped.is_some())
}
