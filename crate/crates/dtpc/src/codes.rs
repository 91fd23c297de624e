//! Optimal zero-error code construction and enumerative indexing.
//!
//! The code of blocklength `n` is defined by recursion on the prefix: a word
//! either starts with a full slot of `max_per_slot` particles followed by a
//! word of length `n - 1`, or with a partial slot (0 to `max_per_slot - 1`
//! particles) followed by `max_delay` forced zeros and a word of length
//! `n - max_delay - 1`. For `n <= max_delay` only the all-zero word exists.
//! Every word it produces is zero-padded, so outputs never spill past the
//! block and blocks can be decoded independently.

use crate::channel::{self, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::model::{BigCount, ChannelParams, Codebook, ParticleSeq};

/// How to build a codebook. Both methods produce the same set; the greedy
/// method rederives it by scanning candidates instead of trusting the
/// recursion, which makes it a useful cross-check and keeps it independent
/// of the recursive code path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionMethod {
    Recursive,
    Greedy,
}

/// Build the codebook of blocklength `n` with the chosen method.
pub fn build(params: ChannelParams, n: usize, method: ConstructionMethod) -> Result<Codebook> {
    match method {
        ConstructionMethod::Recursive => Ok(build_recursive(params, n)),
        ConstructionMethod::Greedy => build_greedy(params, n),
    }
}

/// Materialize the code by its defining recursion. Words come out in
/// inverse-lexicographic order: the full-slot branch first, then partial
/// slots in decreasing order.
pub fn build_recursive(params: ChannelParams, n: usize) -> Codebook {
    let k = params.max_delay as usize;
    let full = params.max_per_slot;
    // levels[j] = all codewords of blocklength j, inverse-lex ordered.
    let mut levels: Vec<Vec<ParticleSeq>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        if j <= k {
            levels.push(vec![ParticleSeq::zeros(j)]);
            continue;
        }
        let mut words = Vec::new();
        for w in &levels[j - 1] {
            let mut symbols = Vec::with_capacity(j);
            symbols.push(full);
            symbols.extend_from_slice(w.symbols());
            words.push(ParticleSeq::new(symbols));
        }
        for partial in (0..full).rev() {
            for w in &levels[j - k - 1] {
                let mut symbols = Vec::with_capacity(j);
                symbols.push(partial);
                symbols.extend(std::iter::repeat_n(0, k));
                symbols.extend_from_slice(w.symbols());
                words.push(ParticleSeq::new(symbols));
            }
        }
        levels.push(words);
    }
    Codebook::from_sorted_unchecked(params, n, levels.pop().expect("level n was built"))
}

/// Rebuild the same code greedily: scan all zero-padded words of length `n`
/// in inverse-lexicographic order, keep the first unexcluded word, and
/// exclude everything reachable from it (outputs confined to length `n`,
/// the trailing zeros absorbing all delays). Uses the default budget for
/// the candidate list size.
pub fn build_greedy(params: ChannelParams, n: usize) -> Result<Codebook> {
    build_greedy_with_budget(params, n, DEFAULT_ENUMERATION_BUDGET)
}

/// As [`build_greedy`] with an explicit bound on the candidate list size
/// `(max_per_slot + 1)^(n - min(n, max_delay))`.
pub fn build_greedy_with_budget(params: ChannelParams, n: usize, budget: u64) -> Result<Codebook> {
    let candidates = zero_padded_words_checked(params, n, budget)?;
    let mut excluded = vec![false; candidates.len()];
    let mut kept = Vec::new();
    for i in 0..candidates.len() {
        if excluded[i] {
            continue;
        }
        kept.push(candidates[i].clone());
        // Anything reachable from the kept word sorts after it (delays only
        // move particles right), so one forward pass suffices.
        for j in (i + 1)..candidates.len() {
            if !excluded[j] && channel::reachable(params, &candidates[i], &candidates[j]) {
                excluded[j] = true;
            }
        }
    }
    Ok(Codebook::from_sorted_unchecked(params, n, kept))
}

/// All zero-padded words of length `n` over the input alphabet, in
/// inverse-lexicographic order.
pub(crate) fn zero_padded_words_checked(
    params: ChannelParams,
    n: usize,
    budget: u64,
) -> Result<Vec<ParticleSeq>> {
    let pad = n.min(params.max_delay as usize);
    let free = n - pad;
    let exponent = u32::try_from(free).unwrap_or(u32::MAX).min(1 << 16);
    let required = BigCount::from(params.max_per_slot + 1).pow(exponent);
    if required > BigCount::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut words = Vec::new();
    let mut current = vec![params.max_per_slot; free];
    loop {
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&current);
        symbols.extend(std::iter::repeat_n(0, pad));
        words.push(ParticleSeq::new(symbols));
        // Descending odometer: step to the next word in inverse-lex order.
        match current.iter().rposition(|&s| s > 0) {
            Some(i) => {
                current[i] -= 1;
                current[i + 1..].fill(params.max_per_slot);
            }
            None => break,
        }
    }
    Ok(words)
}

/// Exact number of codewords of blocklength `n`, by the counting recurrence
/// `|C(n)| = |C(n-1)| + max_per_slot * |C(n-K-1)|` with `|C(j)| = 1` for
/// `j <= K`, writing `K` for `max_delay`. Never materializes words.
pub fn cardinality(params: ChannelParams, n: usize) -> BigCount {
    cardinality_table(params, n)
        .pop()
        .expect("table is nonempty")
}

/// `|C(0)| ..= |C(n)|` in one pass.
fn cardinality_table(params: ChannelParams, n: usize) -> Vec<BigCount> {
    let k = params.max_delay as usize;
    let weight = BigCount::from(params.max_per_slot);
    let mut table = Vec::with_capacity(n + 1);
    for j in 0..=n {
        if j <= k {
            table.push(BigCount::from(1u32));
        } else {
            let next = &table[j - 1] + &weight * &table[j - k - 1];
            table.push(next);
        }
    }
    table
}

/// Rewrite each codeword of a zero-error, zero-padded code into the
/// recursion's canonical prefix form, preserving blockwise decodability:
/// a prefix of weight `q < max_per_slot` becomes `q` followed by
/// `max_delay` zeros, and a heavier prefix becomes a full first slot with
/// the borrowed particles removed from the earliest following slots.
///
/// If two codewords collapse onto the same word the input was not
/// zero-error, and that collision is reported as an error.
pub fn normalize(cb: &Codebook) -> Result<Codebook> {
    let params = cb.params();
    let n = cb.word_len();
    let k = params.max_delay as usize;
    let full = params.max_per_slot;
    if n <= k {
        return Err(Error::NormalizeTooShort {
            len: n,
            max_delay: params.max_delay,
        });
    }
    if let Some(w) = cb.iter().find(|w| !w.is_zero_padded(params)) {
        return Err(Error::NotZeroPadded { word: w.clone() });
    }

    let mut rewritten = Vec::with_capacity(cb.len());
    for w in cb {
        let s = w.symbols();
        let head_weight: u64 = s[..=k].iter().map(|&v| u64::from(v)).sum();
        let mut out = Vec::with_capacity(n);
        if head_weight < u64::from(full) {
            out.push(head_weight as u32);
            out.extend(std::iter::repeat_n(0, k));
        } else {
            // Promote the first slot to a full one by pulling the missing
            // particles from the earliest slots of the head.
            out.push(full);
            let mut borrow = u64::from(full) - u64::from(s[0]);
            for &v in &s[1..=k] {
                let taken = borrow.min(u64::from(v));
                borrow -= taken;
                out.push(v - taken as u32);
            }
            // head_weight >= full guarantees the head covers the borrow.
            debug_assert_eq!(borrow, 0);
        }
        out.extend_from_slice(&s[k + 1..]);
        rewritten.push(ParticleSeq::new(out));
    }

    match Codebook::new(params, n, rewritten) {
        Err(Error::DuplicateWord { word }) => Err(Error::NormalizeCollision { word }),
        other => other,
    }
}

/// Position of a codeword in inverse-lexicographic order: index 0 is the
/// inverse-lex greatest word. Errors if `word` is not in the code.
pub fn rank(params: ChannelParams, word: &ParticleSeq) -> Result<BigCount> {
    let k = params.max_delay as usize;
    let full = params.max_per_slot;
    let not_a_codeword = || Error::NotACodeword { word: word.clone() };
    let table = cardinality_table(params, word.len());

    let mut idx = BigCount::ZERO;
    let mut s = word.symbols();
    loop {
        let n = s.len();
        if n <= k {
            if s.iter().any(|&v| v != 0) {
                return Err(not_a_codeword());
            }
            return Ok(idx);
        }
        let first = s[0];
        if first > full {
            return Err(not_a_codeword());
        }
        if first == full {
            // Full-slot branch: its block comes first and adds no offset.
            s = &s[1..];
        } else {
            // Partial-slot branch `first`: skip the full-slot block and the
            // partial blocks above `first`; the slot must be followed by
            // `max_delay` forced zeros.
            if s[1..=k].iter().any(|&v| v != 0) {
                return Err(not_a_codeword());
            }
            idx += &table[n - 1] + BigCount::from(full - 1 - first) * &table[n - k - 1];
            s = &s[k + 1..];
        }
    }
}

/// The codeword at a given inverse-lexicographic position. Errors if `index`
/// is at or past the code size.
pub fn unrank(params: ChannelParams, n: usize, index: &BigCount) -> Result<ParticleSeq> {
    let k = params.max_delay as usize;
    let full = params.max_per_slot;
    let table = cardinality_table(params, n);
    if *index >= table[n] {
        return Err(Error::IndexOutOfRange {
            index: index.clone(),
            cardinality: table[n].clone(),
        });
    }

    let mut symbols = Vec::with_capacity(n);
    let mut idx = index.clone();
    let mut remaining = n;
    while remaining > k {
        if idx < table[remaining - 1] {
            symbols.push(full);
            remaining -= 1;
        } else {
            idx -= &table[remaining - 1];
            let block = &table[remaining - k - 1];
            let (skip, rest) = num_integer::div_rem(idx, block.clone());
            let skip = u32::try_from(&skip).expect("block offset fits u32 because skip < full");
            symbols.push(full - 1 - skip);
            symbols.extend(std::iter::repeat_n(0, k));
            idx = rest;
            remaining -= k + 1;
        }
    }
    symbols.extend(std::iter::repeat_n(0, remaining));
    Ok(ParticleSeq::new(symbols))
}
