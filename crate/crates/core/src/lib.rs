//! Extra invariance of principal shift-invariant spaces, decided with the
//! Zak transform.
//!
//! Two engines share one vocabulary:
//!
//! * [`zak_line`] works on the real line. Generators are given on the
//!   Fourier side as piecewise-constant [`spectra::Spectrum`]s with exact
//!   rational breakpoints, so the question "is `<psi>_Z` also invariant
//!   under `(1/N)Z`?" is decided exactly with interval-union arithmetic.
//! * [`zak_group`] works on finite abelian groups `Z_m1 x ... x Z_md`
//!   ([`group`]), deciding whether `<psi>_K` is invariant under a larger
//!   lattice `L`.
//!
//! Every verdict can be cross-checked by [`oracle`], a brute-force
//! least-squares projection test that never touches Zak-transform code.

pub mod cli;
pub mod error;
pub mod group;
pub mod oracle;
pub mod phase;
pub mod spectra;
pub mod suites;
pub mod zak_group;
pub mod zak_line;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Exact rational number used for breakpoints and frequencies.
pub type Rational = num_rational::BigRational;

/// Default relative zero threshold for Zak values and projection residuals.
pub const DEFAULT_TOL: f64 = 1e-9;
