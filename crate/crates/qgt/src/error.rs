use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two signatures whose levels must differ by exactly one do not.
    #[error("level mismatch: expected level {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },

    /// Brute-force enumeration exceeded its cap.
    #[error("enumeration exploded past cap {0}")]
    Explosion(usize),

    /// A tableau entry exceeds the ambient level.
    #[error("tableau entry {entry} out of range 1..={level}")]
    EntryOutOfRange { entry: usize, level: usize },

    /// Evaluation point with repeated coordinates fed to a determinant route.
    #[error("repeated evaluation point; determinant route degenerates")]
    RepeatedPoint,

    /// Zero coordinate where a negative exponent occurs.
    #[error("zero evaluation point with negative exponents")]
    ZeroPoint,

    /// Operation restricted to nonnegative signatures got a negative one.
    #[error("signature has a negative coordinate")]
    NegativeCoordinate,

    /// Triangular solve is missing the value at a required grid point.
    #[error("missing grid value at {0}")]
    MissingGridValue(String),

    /// Euler-product tail bound degenerates; raise the truncation order.
    #[error("degenerate Euler-product enclosure; raise n")]
    DegenerateEnclosure,

    /// Boundary parameter with nu_1 < 0; shift via A_l first.
    #[error("nu_1 < 0; shift the boundary parameter via A_l first")]
    NegativeNu,

    /// Support cap too small to reach the requested mass target.
    #[error("support cap {cap} too small to reach mass 1 - eps")]
    CapTooSmall { cap: i64 },

    /// A computed extreme-measure mass is negative; this would falsify the
    /// classification and must fail loudly.
    #[error("negative mass at {0}; classification violated")]
    NegativeMass(String),

    /// Requested level outside 1..=N.
    #[error("level {level} out of range 1..={top}")]
    LevelOutOfRange { level: usize, top: usize },

    /// Matrix index outside the generated rectangle.
    #[error("index out of generated rectangle")]
    IndexOutOfRange,

    /// Sampler drew into the declared tail mass; resample or raise the cap.
    #[error("sample fell into declared tail mass; resample or raise cap")]
    TailHit,

    /// Malformed CLI input.
    #[error("parse error: {0}")]
    Parse(String),
}
