//! Security analysis of quantum key distribution under symmetric collective
//! attacks.
//!
//! The crate is organized in four layers:
//!
//! - [`qstate`]: exact small-dimension complex linear algebra for pure and
//!   mixed states (tensor products, partial traces, information-dependent
//!   conditioned traces, Bloch conversions, Hermitian spectral tools).
//! - [`bloch`]: the bounding constructions on the Bloch sphere that replace a
//!   pair of equal-radius mixed states by a pair of pure states plus a common
//!   anchor, yielding the effective half-angle `beta`.
//! - [`parity`]: closed-form parity-bit information quantities together with
//!   brute-force distinguishability oracles (Helstrom, projective-basis
//!   search, Holevo) that validate them at desk scale.
//! - [`attack`]: end-to-end analysis of the explicit probe attack on the
//!   two-state (B92) and four-state (BB84) schemes: joint final states,
//!   receiver error rates, the eavesdropper's reduced states, and the final
//!   information bound.
//!
//! [`suites`] packages the cross-module consistency checks behind a small
//! report type so that command-line tools can run them verbatim.

pub mod attack;
pub mod bloch;
mod error;
pub mod parity;
pub mod qstate;
pub mod suites;

pub use error::Error;
pub use qstate::{BlochVector, DensityMatrix, PositiveOperator, StateVector};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Tolerance for algebraic identities (Hermiticity, traces, norms).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Tolerance for spectral reconstructions (eigendecompositions).
pub const TOL_SPECTRAL: f64 = 1e-10;
