//! Randomized invariants tying the construction, the channel, the decoder,
//! and the confusability oracles to each other.

use dtpc::channel::{push_forward, reachable, reachable_membrane, simulate, transmit};
use dtpc::verify::{confusable, confusable_membrane};
use dtpc::{capacity, codes, decode};
use dtpc::{BigCount, ChannelParams, Codebook, DelayAssignment, ParticleSeq};
use proptest::prelude::*;

fn arb_params() -> impl Strategy<Value = ChannelParams> {
    (1u32..=3, 0u32..=3).prop_map(|(n, k)| ChannelParams::new(n, k))
}

/// A channel and a valid input word for it.
fn arb_input(max_len: usize) -> impl Strategy<Value = (ChannelParams, ParticleSeq)> {
    arb_params().prop_flat_map(move |p| {
        proptest::collection::vec(0..=p.max_per_slot, 0..=max_len)
            .prop_map(move |symbols| (p, ParticleSeq::new(symbols)))
    })
}

/// A channel and two independent valid input words.
fn arb_input_pair() -> impl Strategy<Value = (ChannelParams, ParticleSeq, ParticleSeq)> {
    arb_params().prop_flat_map(|p| {
        let word = proptest::collection::vec(0..=p.max_per_slot, 0..=6);
        (word.clone(), word).prop_map(move |(a, b)| (p, ParticleSeq::new(a), ParticleSeq::new(b)))
    })
}

/// A channel, an input, and an explicit per-particle delay assignment.
fn arb_transmission() -> impl Strategy<Value = (ChannelParams, ParticleSeq, DelayAssignment)> {
    arb_input(7).prop_flat_map(|(p, x)| {
        let slots: Vec<_> = x
            .symbols()
            .iter()
            .map(|&sent| proptest::collection::vec(0..=p.max_delay, sent as usize))
            .collect();
        slots.prop_map(move |d| (p, x.clone(), DelayAssignment::new(d)))
    })
}

proptest! {
    #[test]
    fn concat_adds_lengths_and_weights((_, a) in arb_input(6), (_, b) in arb_input(6)) {
        let ab = a.concat(&b);
        prop_assert_eq!(ab.len(), a.len() + b.len());
        prop_assert_eq!(ab.weight(), a.weight() + b.weight());
    }

    #[test]
    fn transmissions_are_reachable((p, x, d) in arb_transmission()) {
        let y = transmit(p, &x, &d).unwrap();
        prop_assert_eq!(y.len(), x.len() + p.max_delay as usize);
        prop_assert_eq!(y.weight(), x.weight());
        prop_assert!(reachable(p, &x, &y));
    }

    #[test]
    fn simulation_is_deterministic((p, x) in arb_input(7), seed in any::<u64>()) {
        let y = simulate(p, &x, seed).unwrap();
        prop_assert_eq!(&y, &simulate(p, &x, seed).unwrap());
        prop_assert!(reachable(p, &x, &y));
    }

    #[test]
    fn rank_inverts_unrank((p, n, raw) in (arb_params(), 0usize..=8, any::<u64>())) {
        let size = u64::try_from(codes::cardinality(p, n)).unwrap();
        let idx = BigCount::from(raw % size);
        let word = codes::unrank(p, n, &idx).unwrap();
        prop_assert_eq!(word.len(), n);
        prop_assert!(word.is_zero_padded(p));
        prop_assert_eq!(codes::rank(p, &word).unwrap(), idx);
    }

    #[test]
    fn decoding_inverts_every_simulated_transmission(
        (p, n, raw, seed) in (arb_params(), 1usize..=8, any::<u64>(), any::<u64>())
    ) {
        let size = u64::try_from(codes::cardinality(p, n)).unwrap();
        let word = codes::unrank(p, n, &BigCount::from(raw % size)).unwrap();
        let y = simulate(p, &word, seed).unwrap();
        prop_assert_eq!(decode::decode(p, n, &y).unwrap(), word);
    }

    #[test]
    fn pushed_outputs_stay_reachable_under_the_cap((p, x) in arb_input(7), seed in any::<u64>()) {
        let y = simulate(p, &x, seed).unwrap();
        let capped = push_forward(p, &y).unwrap();
        prop_assert_eq!(capped.weight(), y.weight());
        prop_assert!(capped.symbols().iter().all(|&s| s <= p.max_per_slot));
        prop_assert!(reachable_membrane(p, &x, &capped));
    }

    #[test]
    fn confusability_is_symmetric_and_witnessed((p, x, y) in arb_input_pair()) {
        let forward = confusable(p, &x, &y);
        prop_assert_eq!(&forward, &confusable(p, &y, &x));
        if let Some(w) = forward {
            prop_assert!(reachable(p, &x, &w));
            prop_assert!(reachable(p, &y, &w));
        }
    }

    #[test]
    fn membrane_witnesses_respect_the_cap((p, x, y) in arb_input_pair()) {
        if let Some(w) = confusable_membrane(p, &x, &y) {
            prop_assert!(w.symbols().iter().all(|&s| s <= p.max_per_slot));
            prop_assert!(reachable_membrane(p, &x, &w));
            prop_assert!(reachable_membrane(p, &y, &w));
        }
    }

    #[test]
    fn the_cap_does_not_change_confusability_of_valid_inputs((p, x, y) in arb_input_pair()) {
        // Valid inputs never send more than a slot can show, so the capped
        // and uncapped channels confuse exactly the same pairs.
        prop_assert_eq!(
            confusable(p, &x, &y).is_some(),
            confusable_membrane(p, &x, &y).is_some()
        );
    }

    #[test]
    fn normalization_keeps_words_confusable((p, x) in arb_input(8)) {
        let k = p.max_delay as usize;
        prop_assume!(x.len() > k);
        let n = x.len();
        let mut symbols = x.symbols().to_vec();
        for v in &mut symbols[n - k..] {
            *v = 0;
        }
        let word = ParticleSeq::new(symbols);
        let cb = Codebook::new(p, n, vec![word.clone()]).unwrap();
        let normalized = codes::normalize(&cb).unwrap();
        let rewritten = &normalized.words()[0];
        prop_assert!(rewritten.is_zero_padded(p));
        prop_assert!(confusable(p, &word, rewritten).is_some());
    }

    #[test]
    fn the_dominant_root_stays_bracketed(n in 1u32..=200, k in 0u32..=20) {
        let p = ChannelParams::new(n, k);
        let solved = capacity::capacity::<f64>(p, 1e-12);
        prop_assert!(solved.root > 1.0 && solved.root <= f64::from(n + 1));
        prop_assert!(solved.residual <= 1e-9, "residual {}", solved.residual);
    }
}
