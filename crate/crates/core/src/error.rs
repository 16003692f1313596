use num_bigint::BigUint;
use thiserror::Error;

use crate::group::Signature;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("r and n must be positive (got r={r}, n={n})")]
    InvalidSignature { r: u32, n: u32 },

    #[error("letter {digit}^{color} is not in the alphabet of {sig}")]
    LetterOutOfRange { digit: u32, color: u32, sig: Signature },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },

    #[error("malformed window token `{token}` (expected digit^color)")]
    MalformedToken { token: String },

    #[error("digit {digit} appears more than once in the window")]
    RepeatedDigit { digit: u32 },

    #[error("expected {expected} window entries, got {got}")]
    WindowLength { expected: usize, got: usize },

    #[error("illegal character `{found}` at position {position}")]
    IllegalCharacter { position: usize, found: char },

    #[error("expected a word of length {expected}, got {got} letters")]
    WordLength { expected: usize, got: usize },

    #[error("expected a pattern of length {expected}, got {got} letters")]
    PatternLength { expected: usize, got: usize },

    #[error("a matrix over {sig} needs {expected} cells, got {got}")]
    MatrixSize { sig: Signature, expected: usize, got: usize },

    #[error("the dropped cell (digit n, color 0) is `b`; no permutation realizes it")]
    TrailingCellNotA,

    #[error("matrix has a column that is not of the form b^u a^(r-u); no permutation realizes it")]
    NotRealizable,

    #[error("{sig} has {order} elements, above the enumeration cap of {cap}")]
    EnumerationGuard {
        sig: Signature,
        order: String,
        cap: u64,
    },

    #[error("inclusion-exclusion expansion has 2^{free_steps} terms, above the cap of 2^{cap}")]
    ExpansionGuard { free_steps: u32, cap: u32 },

    #[error("the closed form needs r >= 2; count words over {sig} with the inclusion-exclusion sum instead")]
    ClosedFormNeedsColors { sig: Signature },

    #[error("k={k} is out of range; expected 0 <= k <= {max}")]
    IndexOutOfRange { k: u32, max: u64 },

    #[error("cross-check failed for `{word}`: oracle says {oracle}, formula says {formula}")]
    CrossCheckMismatch {
        word: String,
        oracle: BigUint,
        formula: BigUint,
    },
}
