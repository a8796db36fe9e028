use thiserror::Error;

/// Errors produced by lattice construction and function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Generators do not span a rank-2 lattice (zero, non-finite, or collinear).
    #[error("degenerate lattice: {0}")]
    DegenerateLattice(&'static str),

    /// Eisenstein weight outside the supported range (even, >= 4).
    #[error("unsupported Eisenstein weight {0} (need even k >= 4)")]
    UnsupportedWeight(i64),

    /// The discriminant vanished numerically; invariants cannot be trusted.
    #[error("numerically degenerate invariants: |disc|*scale^12 = {0:.3e} below threshold")]
    DegenerateInvariants(f64),

    /// Evaluation point is too close to a pole for the requested accuracy.
    #[error("evaluation point within {0:.3e} of a lattice pole")]
    TooCloseToPole(f64),

    /// Translation-sign probes of a primitive function disagreed; this
    /// signals an evaluation bug, not a property of the lattice.
    #[error("period character probes inconsistent: {0}")]
    CharacterInconsistent(String),

    /// The zero scan did not account for total order 2.
    #[error("zero search found total order {found}, expected 2 (grid too coarse)")]
    ZeroSearchFailed { found: u32 },

    /// A square-root witness failed its spot re-verification.
    #[error("witness verification failed: {0}")]
    WitnessVerification(String),

    /// Malformed truncation plan for the direct-sum oracle.
    #[error("invalid truncation plan: {0}")]
    InvalidPlan(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
