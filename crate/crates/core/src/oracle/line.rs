use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::projection::invariance_oracle;
use crate::group::{inverse_fourier, FiniteAbelianGroup, GroupSignal, Lattice};
use crate::spectra::Spectrum;
use crate::{Error, Rational, Result};

/// Largest cyclic model the line oracle builds.
pub const MAX_DISCRETE_ORDER: usize = crate::group::MAX_ORDER;

#[derive(Clone, Debug, PartialEq)]
pub struct LineOracleVerdict {
    pub invariant: bool,
    /// Order `P` of the cyclic model `Z_P`.
    pub order: usize,
    /// Generators of the images of `Z` and `(1/N) Z`.
    pub k_generator: usize,
    pub l_generator: usize,
    pub max_residual: f64,
}

/// Projection verdict for `(1/N)Z`-invariance of a spectrum whose
/// breakpoints lie on the grid `(1/M) Z`.
///
/// Frequency cell `[j/M, (j+1)/M)` becomes the character `j` of `Z_P` with
/// `P = M R`, where `R` is the least multiple of `N` covering the support
/// span. Then integer shifts of frequency are the multiples of `M`, the
/// frequency period `N` is `N M`, and by duality `Z` and `(1/N) Z` map to
/// `<R>` and `<R/N>`. Zak supports in this model match the line ones cell for
/// cell, so the verdicts coincide.
pub fn line_discretization_oracle(s: &Spectrum, n: u32, m: u64) -> Result<LineOracleVerdict> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "N must be at least 2 (got {n})"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("grid size must be positive".into()));
    }
    if s.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    let grid = Rational::from_integer(BigInt::from(m));
    let on_grid = |r: &Rational| (r * &grid).is_integer();
    let cells = |r: &Rational| (r * &grid).to_integer().to_i64();
    let mut first = i64::MAX;
    let mut last = i64::MIN;
    for (iv, _) in s.pieces() {
        if !on_grid(iv.lo()) || !on_grid(iv.hi()) {
            return Err(Error::GridMismatch(m));
        }
        let (lo, hi) = (cells(iv.lo()), cells(iv.hi()));
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(Error::GroupTooLarge(usize::MAX));
        };
        first = first.min(lo);
        last = last.max(hi);
    }
    let span = (last - first) as u64;
    let n64 = u64::from(n);
    let r = span.div_ceil(m).div_ceil(n64).max(1) * n64;
    let order = m
        .checked_mul(r)
        .and_then(|p| usize::try_from(p).ok())
        .filter(|&p| p <= MAX_DISCRETE_ORDER)
        .ok_or(Error::GroupTooLarge(usize::MAX))?;
    let p = order as i64;

    let g = FiniteAbelianGroup::new(&[order as u64])?;
    let mut spectrum = vec![Complex64::zero(); order];
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    for j in first..last {
        let mid = (Rational::from_integer(BigInt::from(j)) + &half) / &grid;
        spectrum[j.rem_euclid(p) as usize] = s.value_at(&mid);
    }
    let psi = inverse_fourier(&GroupSignal::new(&g, spectrum)?);
    let k_generator = r as usize;
    let l_generator = (r / n64) as usize;
    let lattice =
        |gen: usize| -> Lattice { crate::group::enumerate_subgroup(&g, &[g.element(gen % order)]) };
    let verdict = invariance_oracle(
        &psi,
        &lattice(k_generator),
        &lattice(l_generator),
        crate::DEFAULT_TOL,
    )?;
    Ok(LineOracleVerdict {
        invariant: verdict.invariant,
        order,
        k_generator,
        l_generator,
        max_residual: verdict.max_residual / psi.l2_norm(),
    })
}
