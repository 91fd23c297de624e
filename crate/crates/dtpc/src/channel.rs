//! Channel mechanics: applying delay assignments, simulating random delays,
//! enumerating the exact output set, and deciding reachability without
//! enumeration.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{BigCount, ChannelParams, DelayAssignment, ParticleSeq};

/// Default cap on the number of delay cases an exhaustive enumeration may
/// cover, counted as `(max_delay + 1)^weight(x)`.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Apply a concrete delay assignment: output slot `j` collects every particle
/// sent at slot `i` with delay `d` such that `i + d = j`. The output always
/// has length `len(x) + max_delay` so that the latest possible arrival is
/// in range.
pub fn transmit(
    params: ChannelParams,
    x: &ParticleSeq,
    delays: &DelayAssignment,
) -> Result<ParticleSeq> {
    for (slot, &symbol) in x.symbols().iter().enumerate() {
        if symbol > params.max_per_slot {
            return Err(Error::SymbolOutOfRange {
                slot,
                symbol,
                max: params.max_per_slot,
            });
        }
    }
    delays.validate(params, x)?;
    let mut out = vec![0u32; x.len() + params.max_delay as usize];
    for (slot, slot_delays) in delays.per_slot().iter().enumerate() {
        for &d in slot_delays {
            out[slot + d as usize] += 1;
        }
    }
    Ok(ParticleSeq::new(out))
}

/// Transmit with independent uniform delays drawn from a deterministic
/// stream: the same `seed` always yields the same output.
pub fn simulate(params: ChannelParams, x: &ParticleSeq, seed: u64) -> Result<ParticleSeq> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_slot = x
        .symbols()
        .iter()
        .map(|&sent| {
            (0..sent)
                .map(|_| rng.random_range(0..=params.max_delay))
                .collect()
        })
        .collect();
    transmit(params, x, &DelayAssignment::new(per_slot))
}

/// The exact set of outputs `x` can produce, deduplicated, each of length
/// `len(x) + max_delay`. Uses the default enumeration budget.
pub fn enumerate_outputs(params: ChannelParams, x: &ParticleSeq) -> Result<BTreeSet<ParticleSeq>> {
    enumerate_outputs_with_budget(params, x, DEFAULT_ENUMERATION_BUDGET)
}

/// As [`enumerate_outputs`], with an explicit budget on
/// `(max_delay + 1)^weight(x)`.
pub fn enumerate_outputs_with_budget(
    params: ChannelParams,
    x: &ParticleSeq,
    budget: u64,
) -> Result<BTreeSet<ParticleSeq>> {
    // (max_delay + 1)^weight delay cases. Any weight beyond the saturation
    // cap is over every u64 budget anyway, so capping the exponent keeps the
    // count cheap to form without changing the decision.
    let exponent = u32::try_from(x.weight()).unwrap_or(u32::MAX).min(1 << 16);
    let required = BigCount::from(params.max_delay + 1).pow(exponent);
    if required > BigCount::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    // Identical particles: only the multiset of delays per slot matters, so
    // enumerating per-slot delay multisets covers every assignment while
    // visiting far fewer cases than all delay tuples.
    let slot_choices: Vec<Vec<Vec<u32>>> = x
        .symbols()
        .iter()
        .map(|&sent| {
            (0..=params.max_delay)
                .combinations_with_replacement(sent as usize)
                .collect()
        })
        .collect();

    let mut outputs = BTreeSet::new();
    if x.is_empty() {
        outputs.insert(transmit(params, x, &DelayAssignment::new(vec![]))?);
        return Ok(outputs);
    }
    for per_slot in slot_choices.into_iter().multi_cartesian_product() {
        outputs.insert(transmit(params, x, &DelayAssignment::new(per_slot))?);
    }
    Ok(outputs)
}

/// Whether some delay assignment turns `x` into `y`, decided in linear time
/// from cumulative counts. Writing `S(v, j)` for the number of particles of
/// `v` in slots `1..=j`, the test is:
///
/// - equal total weight,
/// - `S(y, j) <= S(x, j)` for every `j` (no particle arrives early), and
/// - `S(x, j) <= S(y, j + max_delay)` for every `j` (no particle is held
///   past its deadline).
///
/// The shorter sequence is implicitly right-padded with zeros out to
/// `max(len(x) + max_delay, len(y))`; trailing zeros never change the
/// relation. Symbols are not required to respect `max_per_slot`: the
/// relation is purely about delays.
pub fn reachable(params: ChannelParams, x: &ParticleSeq, y: &ParticleSeq) -> bool {
    let k = params.max_delay as usize;
    let window = (x.len() + k).max(y.len());
    let sym = |v: &ParticleSeq, j: usize| -> u64 {
        // 1-based slot index; zero outside the sequence.
        v.symbols().get(j - 1).copied().unwrap_or(0).into()
    };
    let mut sx = 0u64; // S(x, j)
    let mut sy = 0u64; // S(y, j)
    let mut sx_lag = 0u64; // S(x, j - max_delay)
    for j in 1..=window {
        sx += sym(x, j);
        sy += sym(y, j);
        if j > k {
            sx_lag += sym(x, j - k);
        }
        if sy > sx || sx_lag > sy {
            return false;
        }
    }
    sx == sy
}

/// Reachability when the channel also caps arrivals: `y` must be reachable
/// and hold at most `max_per_slot` particles in every slot.
pub fn reachable_membrane(params: ChannelParams, x: &ParticleSeq, y: &ParticleSeq) -> bool {
    y.symbols().iter().all(|&s| s <= params.max_per_slot) && reachable(params, x, y)
}

/// Defer excess particles slot by slot: sweep left to right and, wherever the
/// running count exceeds `max_per_slot`, push the excess into the next slot.
/// The result has every symbol at most `max_per_slot` and the same weight.
/// The sweep may extend past `len(z)` by up to `max_delay` slots; if excess
/// still remains, `z` was too crowded to have come from an in-bounds input
/// and the sweep fails.
pub fn push_forward(params: ChannelParams, z: &ParticleSeq) -> Result<ParticleSeq> {
    let cap = u64::from(params.max_per_slot);
    let mut out: Vec<u32> = Vec::with_capacity(z.len());
    let mut carry = 0u64;
    for &s in z.symbols() {
        let here = carry + u64::from(s);
        let placed = here.min(cap);
        carry = here - placed;
        out.push(placed as u32);
    }
    let mut extended = 0;
    while carry > 0 && extended < params.max_delay {
        let placed = carry.min(cap);
        carry -= placed;
        out.push(placed as u32);
        extended += 1;
    }
    if carry > 0 {
        return Err(Error::CarryNotAbsorbed { remaining: carry });
    }
    Ok(ParticleSeq::new(out))
}
