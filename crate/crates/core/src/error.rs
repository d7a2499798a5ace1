use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {degree} over GF(2)")]
    ReducibleModulus { degree: u32, modulus: u64 },

    #[error("unsupported extension degree {0} (must be 1..=32)")]
    UnsupportedDegree(u32),

    #[error("subfield degree {sub} does not divide extension degree {degree}")]
    BadSubfield { sub: u32, degree: u32 },

    #[error("value {value:#x} is not an element of GF(2^{degree})")]
    NotInField { value: u64, degree: u32 },

    #[error("cannot invert zero")]
    ZeroInverse,

    #[error("invalid hex field element {0:?}")]
    BadHex(String),

    #[error("m = {0} is outside the supported range for this operation")]
    UnsupportedM(u32),

    #[error("level ell = {ell} violates 1 <= ell <= q^2 - 1 = {max}")]
    LevelOutOfRange { ell: u64, max: u64 },

    #[error("the coordinate functions have a pole at the point at infinity")]
    PointAtInfinity,

    #[error("point is F_q-rational (x^q + x = 0); it lies in the support of D")]
    PointInSupportOfD,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("received word is not consistent with any codeword")]
    InconsistentWord,

    #[error("rank deficient: rank {rank} < {needed}; too many erasures for unique recovery")]
    RankDeficient { rank: usize, needed: usize },

    #[error("dual of level {ell} is not of the same family (needs ell >= 2g - 1 = {min})")]
    DualUnavailable { ell: u64, min: u64 },

    #[error("log/antilog tables are required for GF(2^{0}); raise the table budget")]
    TablesRequired(u32),

    #[error("point is missing from the ordered point list")]
    PointNotFound,

    #[error("automorphism parameter c must be nonzero")]
    ZeroScaling,

    #[error("matrix of {rows}x{cols} exceeds the materialization budget")]
    TooLarge { rows: usize, cols: usize },
}
