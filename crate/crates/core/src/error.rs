//! Crate-wide error type.
//!
//! `Error` is reserved for inputs that violate an operation's contract
//! outright. Checks that grade their input (width checks, capture attempts,
//! certificate validation) return dedicated verdict types instead, so a
//! negative answer is data rather than an error.

use crate::word::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("interval lengths must be positive, but entry {index} is zero")]
    ZeroInterval { index: usize },

    #[error("partition points must start at 0 and strictly increase (offender at index {index})")]
    InvalidPartition { index: usize },

    #[error(
        "words of length {left} and {right} agree wherever both are defined; no splitting point"
    )]
    NoSplit { left: usize, right: usize },

    #[error("expected words of length {expected}, found length {found}")]
    MixedLengths { expected: usize, found: usize },

    #[error("length {found} does not match the horizon {expected}")]
    Misaligned { expected: u64, found: u64 },

    #[error("element {element} is not below the horizon {horizon}")]
    AboveHorizon { element: u64, horizon: u64 },

    #[error("binary numeral with {bits} significant bits does not fit the 64-bit value range")]
    ValueOverflow { bits: usize },

    #[error("arithmetic overflow while combining naturals")]
    ArithmeticOverflow,

    #[error("sequence must be strictly increasing (offender at index {index})")]
    NotIncreasing { index: usize },

    #[error("expected a sequence of length {expected}, found {found}")]
    SeqLength { expected: usize, found: usize },

    #[error("width table has no entry at index {index}")]
    WidthUnavailable { index: u64 },

    #[error("width function must start at 0 to reparameterize a target")]
    NonzeroWidthStart,

    #[error("target exhausted at budget {budget}: the width function never exceeds it within the target's domain")]
    TargetExhausted { budget: u64 },

    #[error("slalom must carry {expected} cells to match its partition, found {found}")]
    CellCount { expected: usize, found: usize },

    #[error("piece {piece} splits at {split}, which the witness does not contain")]
    WitnessGap { piece: usize, split: u64 },

    #[error(
        "witness has {count} elements below partition point {index}, exceeding the budget {budget}"
    )]
    BudgetExceeded {
        index: usize,
        count: u64,
        budget: u64,
    },

    #[error("cell {index} violates the width bound required here")]
    WidthHypothesis { index: u64 },

    #[error("enumerating {requested} objects exceeds the cap of {cap}")]
    EnumerationCap { requested: u64, cap: u64 },

    #[error("enumeration position {position} lies outside the support of the ambient word")]
    OutsideSupport { position: u64 },

    #[error("{steps} stages requested but only {available} enumeration points are provided")]
    InsufficientEnumeration { steps: u64, available: u64 },

    #[error("no piece at index {index}; the cover has {count}")]
    NoSuchPiece { index: usize, count: usize },

    #[error("prefixes must have equal length, found {left} and {right}")]
    PrefixLengthMismatch { left: usize, right: usize },

    #[error("word {word} does not extend the prefix {prefix}")]
    DoesNotExtend { word: Word, prefix: Word },

    #[error("word of length {found} is shorter than the required {needed} positions")]
    TooShort { needed: u64, found: u64 },

    #[error("sequence is nowhere bounded by the target from any index (offender at {index})")]
    NotDominated { index: usize },

    #[error("the family is empty")]
    EmptyFamily,

    #[error("family {family} is built over a partition that matches none of the supplied length sequences")]
    UnknownDominator { family: usize },

    #[error("family {family} is not captured by its slalom (point {point} misses)")]
    FamilyNotCaptured { family: usize, point: Word },

    #[error("threshold {threshold} exceeds the {intervals} intervals of the partition")]
    ThresholdBeyondHorizon { threshold: u64, intervals: u64 },

    #[error("internal re-verification failed: {what}")]
    SelfCheckFailed { what: &'static str },

    #[error("a word may contain only the characters 0 and 1")]
    InvalidBit,
}
