//! Zero-error capacity: `log2` of the dominant root of
//! `x^(K+1) - x^K - N`, writing `N` for `max_per_slot` and `K` for
//! `max_delay`.
//!
//! The polynomial has exactly one root above 1 and it lies in `(1, N + 1]`;
//! all functions here are generic over the float type, with `f64` aliases at
//! the crate root. The solver brackets by bisection and polishes with
//! safeguarded Newton steps, so it converges for every parameter pair
//! without tuning.

use std::ops::RangeInclusive;

use num_traits::Float;

use crate::model::ChannelParams;

/// Default residual tolerance for `f64` computations.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A solved capacity: the dominant root, its base-2 logarithm in bits per
/// slot, and the achieved polynomial residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult<F> {
    pub root: F,
    pub capacity_bits: F,
    pub residual: F,
}

/// Which channel parameter a capacity sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveAxis {
    /// Vary `max_per_slot`, holding `max_delay` fixed.
    VaryN,
    /// Vary `max_delay`, holding `max_per_slot` fixed.
    VaryK,
}

fn from_u32<F: Float>(v: u32) -> F {
    F::from(v).expect("u32 fits every float type")
}

/// `x^(K+1) - x^K - N` and its derivative.
fn characteristic<F: Float>(params: ChannelParams, x: F) -> (F, F) {
    let k = params.max_delay as i32;
    let n = from_u32::<F>(params.max_per_slot);
    let xk = x.powi(k);
    let value = xk * (x - F::one()) - n;
    let derivative =
        from_u32::<F>(params.max_delay + 1) * xk - from_u32::<F>(params.max_delay) * x.powi(k - 1);
    (value, derivative)
}

/// The unique root of `x^(K+1) - x^K - N` in `(1, N + 1]`, to residual
/// `|f(r)| <= tol` (or best representable). `max_per_slot = 0` returns 1
/// exactly: a silent channel has a degenerate root.
pub fn dominant_root<F: Float>(params: ChannelParams, tol: F) -> F {
    debug_assert!(tol > F::zero());
    if params.max_per_slot == 0 {
        return F::one();
    }
    // Bracket: f(1) = -N < 0 and f(N+1) >= 0.
    let mut lo = F::one();
    let mut hi = from_u32::<F>(params.max_per_slot + 1);
    let coarse = F::from(1e-3).expect("constant fits every float type");
    while hi - lo > coarse {
        let mid = (lo + hi) / from_u32::<F>(2);
        if characteristic(params, mid).0 < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton from the bracket midpoint, clamped inside the bracket. The
    // characteristic is increasing and convex past its last stationary
    // point, which lies below the root, so these steps converge fast.
    let mut x = (lo + hi) / from_u32::<F>(2);
    let mut best = x;
    let mut best_residual = characteristic(params, x).0.abs();
    for _ in 0..64 {
        let (value, derivative) = characteristic(params, x);
        if value.abs() < best_residual {
            best_residual = value.abs();
            best = x;
        }
        if value.abs() <= tol || derivative == F::zero() {
            break;
        }
        if value < F::zero() {
            lo = x;
        } else {
            hi = x;
        }
        // Inclusive clamp: for `max_delay = 0` the root is the bracket
        // endpoint itself, and Newton lands on it exactly.
        let step = x - value / derivative;
        x = if step >= lo && step <= hi {
            step
        } else {
            (lo + hi) / from_u32::<F>(2)
        };
        if x == lo || x == hi {
            // On an endpoint: either the exact root or a collapsed bracket.
            // The evaluation after the loop picks it up if it is better.
            break;
        }
    }
    let (value, _) = characteristic(params, x);
    if value.abs() < best_residual {
        best = x;
    }
    best
}

/// Capacity in bits per slot, with the root and achieved residual.
pub fn capacity<F: Float>(params: ChannelParams, tol: F) -> CapacityResult<F> {
    let root = dominant_root(params, tol);
    CapacityResult {
        root,
        capacity_bits: root.log2(),
        residual: characteristic(params, root).0.abs(),
    }
}

/// Closed forms where the characteristic degree allows one:
/// `log2(N + 1)` for `max_delay = 0` and `log2((1 + sqrt(1 + 4N)) / 2)` for
/// `max_delay = 1`. `None` otherwise.
pub fn capacity_closed_form<F: Float>(params: ChannelParams) -> Option<F> {
    let n = from_u32::<F>(params.max_per_slot);
    match params.max_delay {
        0 => Some((n + F::one()).log2()),
        1 => {
            let root = (F::one() + (F::one() + from_u32::<F>(4) * n).sqrt()) / from_u32::<F>(2);
            Some(root.log2())
        }
        _ => None,
    }
}

/// Capacity along one axis of the parameter grid. Each row pairs the full
/// parameter set with its capacity in bits; an empty range yields an empty
/// table.
pub fn capacity_curve<F: Float>(
    axis: CurveAxis,
    fixed: u32,
    range: RangeInclusive<u32>,
    tol: F,
) -> Vec<(ChannelParams, F)> {
    range
        .map(|v| {
            let params = match axis {
                CurveAxis::VaryN => ChannelParams::new(v, fixed),
                CurveAxis::VaryK => ChannelParams::new(fixed, v),
            };
            (params, capacity(params, tol).capacity_bits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(n: u32, k: u32) -> ChannelParams {
        ChannelParams::new(n, k)
    }

    #[test]
    fn unit_channel_root_is_the_golden_ratio() {
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        let r = dominant_root(params(1, 1), DEFAULT_TOLERANCE);
        assert_relative_eq!(r, phi, max_relative = 1e-14);
        let c = capacity(params(1, 1), DEFAULT_TOLERANCE);
        assert_relative_eq!(c.capacity_bits, phi.log2(), max_relative = 1e-14);
        assert!(c.residual <= DEFAULT_TOLERANCE);
    }

    #[test]
    fn no_delay_reduces_to_a_noiseless_alphabet() {
        for n in 1..=63u32 {
            let r = dominant_root(params(n, 0), DEFAULT_TOLERANCE);
            assert_relative_eq!(r, f64::from(n + 1), max_relative = 1e-12);
        }
        let c = capacity(params(3, 0), DEFAULT_TOLERANCE);
        assert_eq!(c.capacity_bits, 2.0);
    }

    #[test]
    fn unit_delay_matches_the_quadratic_root() {
        for n in 1..=63u32 {
            let expect = (1.0 + (1.0 + 4.0 * f64::from(n)).sqrt()) / 2.0;
            let r = dominant_root(params(n, 1), DEFAULT_TOLERANCE);
            assert_relative_eq!(r, expect, max_relative = 1e-12);
        }
        // Doubling channel: root exactly 2, one bit per slot.
        let c = capacity(params(2, 1), DEFAULT_TOLERANCE);
        assert_relative_eq!(c.capacity_bits, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn silent_channel_has_zero_capacity() {
        let c = capacity::<f64>(params(0, 3), DEFAULT_TOLERANCE);
        assert_eq!(c.root, 1.0);
        assert_eq!(c.capacity_bits, 0.0);
        assert_eq!(c.residual, 0.0);
    }

    #[test]
    fn residuals_hold_across_the_grid() {
        for n in 1..=63u32 {
            for k in 0..=10u32 {
                let c = capacity(params(n, k), DEFAULT_TOLERANCE);
                assert!(
                    c.residual <= DEFAULT_TOLERANCE,
                    "residual {} at N={n} K={k}",
                    c.residual
                );
                assert!(c.root > 1.0 && c.root <= f64::from(n) + 1.0);
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_relative_eq!(
            capacity_closed_form::<f64>(params(7, 0)).unwrap(),
            3.0,
            max_relative = 1e-15
        );
        let expect = ((1.0 + 21.0_f64.sqrt()) / 2.0).log2();
        assert_relative_eq!(
            capacity_closed_form::<f64>(params(5, 1)).unwrap(),
            expect,
            max_relative = 1e-15
        );
        assert_eq!(capacity_closed_form::<f64>(params(5, 2)), None);
        assert_eq!(capacity_closed_form::<f64>(params(0, 0)), Some(0.0));
    }

    #[test]
    fn closed_forms_agree_with_the_solver() {
        for n in 1..=63u32 {
            for k in 0..=1u32 {
                let solved = capacity(params(n, k), DEFAULT_TOLERANCE).capacity_bits;
                let formula = capacity_closed_form::<f64>(params(n, k)).unwrap();
                assert_relative_eq!(solved, formula, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn curve_sweeps_one_axis() {
        let by_k = capacity_curve(CurveAxis::VaryK, 1, 0..=10, DEFAULT_TOLERANCE);
        assert_eq!(by_k.len(), 11);
        assert_eq!(by_k[0].0, params(1, 0));
        assert_eq!(by_k[0].1, 1.0);
        for pair in by_k.windows(2) {
            assert!(pair[1].1 < pair[0].1, "capacity must drop as delay grows");
        }

        let by_n = capacity_curve(CurveAxis::VaryN, 0, 1..=7, DEFAULT_TOLERANCE);
        assert_eq!(by_n.len(), 7);
        for (p, bits) in by_n {
            assert_relative_eq!(
                bits,
                f64::from(p.max_per_slot + 1).log2(),
                max_relative = 1e-12
            );
        }

        // An inverted range is the intent: the sweep must come back empty.
        #[allow(clippy::reversed_empty_ranges)]
        let empty = capacity_curve::<f64>(CurveAxis::VaryK, 1, 1..=0, DEFAULT_TOLERANCE);
        assert!(empty.is_empty());
    }

    #[test]
    fn works_in_single_precision() {
        let r = dominant_root::<f32>(params(1, 1), 1e-5);
        assert!((r - 1.618_034).abs() < 1e-5);
        let c = capacity::<f32>(params(3, 0), 1e-5);
        assert_eq!(c.capacity_bits, 2.0);
    }
}
