//! Error type shared across the library.
//!
//! Every fallible operation returns [`Error`]; panics are reserved for
//! violated *caller* contracts that are documented as programming errors
//! (e.g. handing `delta_class` a model it is not defined for).

use thiserror::Error;

/// Errors produced by lattice, cone, and model operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A class vector's length does not match the rank of the lattice it is
    /// used with.
    #[error("class has {found} coefficients but the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The Gram matrix is not square of the advertised rank.
    #[error("gram matrix row {row} has {found} entries, expected {expected}")]
    BadGramShape {
        row: usize,
        expected: usize,
        found: usize,
    },

    /// The Gram matrix is not symmetric.
    #[error("gram matrix is not symmetric: entry ({row},{col}) != entry ({col},{row})")]
    AsymmetricGram { row: usize, col: usize },

    /// A lattice needs at least one basis vector.
    #[error("a lattice needs at least one basis vector")]
    EmptyBasis,

    /// Basis names must be distinct, non-empty identifiers.
    #[error("basis name {name:?} is empty or appears more than once")]
    BadBasisName { name: String },

    /// An operation that needs signature (1, n, 0) was given something else.
    #[error(
        "signature is ({positive}, {negative}, {zero}); this operation needs \
         exactly one positive square and a nondegenerate pairing"
    )]
    SignatureNotLorentzian {
        positive: usize,
        negative: usize,
        zero: usize,
    },

    /// A class that must have positive self-intersection does not.
    /// `class` is the rendered offending class.
    #[error("class {class} has self-intersection {square}, which is not positive")]
    NotPositiveSquare { class: String, square: String },

    /// No class realizes the requested pairings.
    #[error("pairing system is inconsistent: no class realizes the requested pairings")]
    InconsistentPairings,

    /// The probe classes do not pin down a unique solution.
    #[error(
        "pairing system is underdetermined: the probes leave a solution \
         kernel of dimension {kernel_dim}"
    )]
    UnderdeterminedPairings { kernel_dim: usize },

    /// A malformed rational literal.
    #[error("cannot parse {text:?} as a rational number (expected \"p\" or \"p/q\")")]
    BadRational { text: String },

    /// A quadratic-root descriptor was built with a negative radicand.
    #[error("quadratic-root descriptor needs a nonnegative radicand, got {radicand}")]
    NegativeRadicand { radicand: String },

    /// A quadratic-root descriptor was built with denominator zero.
    #[error("quadratic-root descriptor needs a nonzero denominator")]
    ZeroDenominator,

    /// The deformation direction does not meet the start class positively.
    #[error(
        "deformation direction pairs {pairing} with the start class; \
         a strictly positive pairing is required"
    )]
    CurveDoesNotObstruct { pairing: String },

    /// The deformation direction must have strictly negative square.
    #[error(
        "deformation direction has self-intersection {square}; \
         a strictly negative square is required"
    )]
    CurveSquareNotNegative { square: String },

    /// No admissible deformation parameter was found.
    #[error("certification failed: {constraint}")]
    CertificationFailed { constraint: String },

    /// The model does not declare its negative-curve list.
    #[error(
        "model does not declare its negative-curve list, \
         so Kahler-cone queries are unavailable"
    )]
    CurvesUnavailable,

    /// A declared curve's genus disagrees with the pairing form.
    #[error(
        "curve {label:?} declares genus {declared} but the pairing form \
         gives genus {computed}"
    )]
    GenusMismatch {
        label: String,
        declared: String,
        computed: String,
    },

    /// Blow-up counts past eight leave the finite-search regime.
    #[error(
        "{n} blow-up points is out of scope: past 8 the square of the \
         anticanonical class is no longer positive and the set of exceptional \
         classes becomes infinite, so a bounded search cannot be complete"
    )]
    TooManyBlowups { n: u32 },

    /// Any other violated model invariant, with a human-readable path.
    #[error("model check failed: {0}")]
    ModelInvalid(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
