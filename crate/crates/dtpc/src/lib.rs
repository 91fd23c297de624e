//! Zero-error coding for the discrete-time particle channel.
//!
//! The channel model: time is slotted, a sender releases up to `N` identical
//! particles per slot, and the channel delays each particle independently by
//! 0 to `K` slots. The receiver only observes how many particles arrive in
//! each slot, so information is carried entirely by the counts. This crate
//! provides:
//!
//! - the channel itself: exact output enumeration, seeded simulation, and a
//!   linear-time reachability test ([`channel`]);
//! - optimal zero-error code construction, both by recursion and by greedy
//!   search, plus enumerative rank/unrank indexing ([`codes`]);
//! - a sequential decoder that runs in time linear in the block length
//!   ([`decode`]);
//! - the zero-error capacity, `log2` of the dominant root of
//!   `x^(K+1) - x^K - N`, generic over the float type ([`capacity`]);
//! - verification oracles: confusability witnesses, exhaustive zero-error
//!   checks, and an exact maximum-independent-set optimality proof for small
//!   blocklengths ([`verify`]).
//!
//! Counting is exact at every blocklength ([`BigCount`] is arbitrary
//! precision); codebook sizes grow geometrically, so machine integers would
//! overflow long before interesting lengths.

pub mod capacity;
pub mod channel;
pub mod codes;
pub mod decode;
mod error;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
pub use model::{BigCount, ChannelParams, Codebook, DelayAssignment, ParticleSeq};

/// `capacity` results computed in `f64` (the CLI default).
pub type CapacityResult64 = capacity::CapacityResult<f64>;
/// `capacity` results computed in `f32`.
pub type CapacityResult32 = capacity::CapacityResult<f32>;
