//! Exact-arithmetic toolkit for the intersection lattices of closed
//! oriented 4-manifolds with `b_+ = 1`: cone membership, exceptional-class
//! enumeration, and certificates separating the symplectic cone from the
//! Kahler cone.
//!
//! Everything is computed over arbitrary-precision rationals — there is no
//! floating point anywhere in this crate, including comparisons against the
//! irrational endpoints of deformation intervals (see [`quad`]).
//!
//! The layers, bottom up:
//!
//! * [`ratio`] — the shared rational scalar type with parsing and rendering;
//! * [`lattice`] — based integral lattices: pairings, exact signature and
//!   parity, positive-cone components, and solving classes from pairings;
//! * [`quad`] — exact numbers `(p + q*sqrt(d))/m` for interval endpoints;
//! * [`enumerate`] — bounded exhaustive search for exceptional classes,
//!   data-parallel by default (disable the `parallel` feature, or call the
//!   `_seq` variant, for the sequential reference path);
//! * [`cone`] — symplectic- and Kahler-cone membership, adjunction, and
//!   re-verifiable certificates of classes that are symplectic but not
//!   Kahler;
//! * [`model`] — validated surface models and the built-in families.

pub mod cone;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod model;
pub mod quad;
pub mod ratio;

pub use cone::{
    adjunction_genus, certify_non_generic, classify_trivial_k_negative_curve,
    deformation_interval, in_kahler_cone, in_symplectic_cone, kahler_obstruction, noether_b2,
    CheckRecord, CurveRecord, DeformationInterval, NonKahlerCertificate,
};
pub use enumerate::{enumerate_exceptional, enumerate_exceptional_seq, ExceptionalQuery};
pub use error::{Error, Result};
pub use lattice::{ClassVector, Lattice, Parity, SignatureReport};
pub use model::{
    bidisk_model, burniat_model, decomposable_identity_check, delta_class, rational_blowup_model,
    ruled_blowup_model, HalfClassIdentity, KodairaDim, ModelTags, SurfaceModel,
};
pub use quad::QuadraticRoot;
pub use ratio::{format_rational, parse_rational, rat, ratio, Rational};
