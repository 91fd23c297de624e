use crate::model::{BigCount, ParticleSeq};

/// Errors reported by the library. Budget variants are recoverable by
/// retrying with a larger budget; the rest indicate invalid inputs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A delay assignment contains a delay larger than the channel allows.
    #[error("delay {delay} at slot {slot} exceeds the maximum delay {max}")]
    DelayOutOfRange { slot: usize, delay: u32, max: u32 },

    /// A delay assignment does not give one delay per particle.
    #[error("slot {slot} sends {expected} particles but {got} delays were assigned")]
    DelayCountMismatch {
        slot: usize,
        expected: u32,
        got: usize,
    },

    /// An input symbol exceeds the per-slot particle bound.
    #[error("symbol {symbol} at slot {slot} exceeds the per-slot bound {max}")]
    SymbolOutOfRange { slot: usize, symbol: u32, max: u32 },

    /// An enumeration would require more cases than the configured budget.
    #[error("enumeration needs {required} cases, over the budget of {budget}")]
    BudgetExceeded { required: BigCount, budget: u64 },

    /// A codeword's length disagrees with the codebook blocklength.
    #[error("word of length {got} in a codebook of blocklength {expected}")]
    WordLengthMismatch { expected: usize, got: usize },

    /// The same word appears twice in a codebook.
    #[error("duplicate codeword {word}")]
    DuplicateWord { word: ParticleSeq },

    /// An operation that requires zero-padded words saw one that is not.
    #[error("codeword {word} is not zero-padded")]
    NotZeroPadded { word: ParticleSeq },

    /// Normalization needs blocklength strictly larger than the maximum delay.
    #[error("normalization undefined for blocklength {len} with maximum delay {max_delay}")]
    NormalizeTooShort { len: usize, max_delay: u32 },

    /// Normalization collapsed two codewords onto the same word, which
    /// witnesses that the input code was not zero-error.
    #[error("normalization collapsed two codewords onto {word}; input code is not zero-error")]
    NormalizeCollision { word: ParticleSeq },

    /// The word is not produced by the optimal construction.
    #[error("{word} is not a codeword")]
    NotACodeword { word: ParticleSeq },

    /// An enumerative index is at or past the code size.
    #[error("index {index} out of range for a code of {cardinality} words")]
    IndexOutOfRange {
        index: BigCount,
        cardinality: BigCount,
    },

    /// A received word has a length the decoder cannot accept.
    #[error("received length {got}; expected {expected} (or {padded} with an all-zero tail)")]
    UndecodableLength {
        got: usize,
        expected: usize,
        padded: usize,
    },

    /// More particles arrived in a slot than any codeword could place there.
    #[error(
        "undecodable output: slot {slot} holds {observed} particles, more than any codeword allows"
    )]
    UndecodableSlot { slot: usize, observed: u32 },

    /// Particles remain in the tail slots where every codeword is silent.
    #[error("undecodable output: unexpected particles at slot {slot} in the zero tail")]
    UndecodableTail { slot: usize },

    /// A block stream's length is not a whole number of blocks.
    #[error("stream of length {got} is not a positive multiple of the blocklength {block_len}")]
    StreamLength { got: usize, block_len: usize },

    /// Block-wise decoding failed inside one block.
    #[error("block {block}: {source}")]
    BlockDecode {
        block: usize,
        #[source]
        source: Box<Error>,
    },

    /// A push-forward sweep ran out of slots with particles still carried.
    #[error("membrane sweep left {remaining} particles unplaced past the padded length")]
    CarryNotAbsorbed { remaining: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
