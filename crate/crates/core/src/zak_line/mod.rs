//! The Zak transform `Z_N` on the real line and the `(1/N)Z` extra-invariance
//! decision for generators with piecewise-constant Fourier transform.
//!
//! `Z_N(f)(x, xi) = (1/N) sum_k f(x + k/N) e^{-2 pi i k xi / N}`. For spectra
//! it is evaluated through the equivalent frequency-side sum
//! `sum_k f^(xi + N k) e^{2 pi i x (xi + N k)}`, which is finite because the
//! spectrum has compact support.

mod coefficients;
mod criterion;
mod gaussian;
mod grid;
mod identities;
mod multiplier;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::phase::{cis_rational, cis_turns};
use crate::spectra::Spectrum;
use crate::Rational;

pub use coefficients::{coefficient_identity_residual, proof_coefficients, ProofCoefficients};
pub use criterion::{
    extra_invariance_line, folded_supports, periodization_criterion_line, InvarianceVerdict,
    LineWitness,
};
pub use gaussian::{
    zak_eval_gaussian_spectral, zak_eval_time, GaussianSignal, TruncatedSum, TAIL_LIMIT,
    TAIL_TARGET,
};
pub use grid::{residual_grid, GridPoint};
pub use identities::{
    quasiperiodicity_residuals, refinement_residual_line, translation_residual_line,
};
pub use multiplier::{construct_multiplier_line, multiplier_residual, MultiplierConstruction};

/// Relative zero threshold for complex values: `|z| <= 1e-9 (1 + ||psi||_2)`.
pub const LINE_ZERO_REL: f64 = 1e-9;

/// Anything whose Zak transform (and that of its translates) can be evaluated.
pub trait ZakSource {
    /// `Z_N(T_h f)(x, xi)` where `T_h f(y) = f(y - h)`.
    fn zak_translated(&self, n: u32, shift: &Rational, x: f64, xi: &Rational) -> Complex64;

    /// `Z_N(f)(x, xi)`.
    fn zak(&self, n: u32, x: f64, xi: &Rational) -> Complex64 {
        self.zak_translated(n, &Rational::zero(), x, xi)
    }

    fn l2_norm(&self) -> f64;
}

/// `Z_N(psi)(x, xi)` from the spectrum; exact up to the final phase rounding.
pub fn zak_eval_spectral(s: &Spectrum, n: u32, x: f64, xi: &Rational) -> Complex64 {
    let mut acc = Complex64::zero();
    s.for_each_lattice_point(n, xi, |t, c| {
        acc += c * cis_turns(x * t.to_f64().unwrap_or(0.0));
    });
    acc
}

impl ZakSource for Spectrum {
    fn zak_translated(&self, n: u32, shift: &Rational, x: f64, xi: &Rational) -> Complex64 {
        // (T_h psi)^(t) = psi^(t) e^{-2 pi i h t}
        let mut acc = Complex64::zero();
        self.for_each_lattice_point(n, xi, |t, c| {
            let modulation = if shift.is_zero() {
                Complex64::new(1.0, 0.0)
            } else {
                cis_rational(&-(shift * t))
            };
            acc += c * modulation * cis_turns(x * t.to_f64().unwrap_or(0.0));
        });
        acc
    }

    fn l2_norm(&self) -> f64 {
        Spectrum::l2_norm(self)
    }
}
