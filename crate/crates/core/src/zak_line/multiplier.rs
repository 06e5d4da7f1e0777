use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::criterion::folded_supports;
use super::{GridPoint, ZakSource};
use crate::phase::{cis_rational, frac};
use crate::spectra::{IntervalUnion, Spectrum};
use crate::{Error, Rational, Result};

/// The `Z`-periodic multiplier `m` with `Z_1(T_{1/N} psi) = m Z_1(psi)`.
///
/// On `[0, 1)`: `m(xi) = e^{-2 pi i (xi + q)/N}` for `xi` in `q_sets[q]`, and
/// `m(xi) = 1` on `residual_set`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierConstruction {
    pub n: u32,
    pub q_sets: Vec<IntervalUnion>,
    pub residual_set: IntervalUnion,
}

impl MultiplierConstruction {
    /// Branch containing `xi mod 1`, if any.
    pub fn branch(&self, xi: &Rational) -> Option<u32> {
        let r = frac(xi);
        self.q_sets
            .iter()
            .position(|set| set.contains(&r))
            .map(|q| q as u32)
    }

    pub fn value(&self, xi: &Rational) -> Complex64 {
        let r = frac(xi);
        match self.branch(&r) {
            Some(q) => {
                let turns = (r + Rational::from_integer(BigInt::from(q)))
                    / Rational::from_integer(BigInt::from(self.n));
                cis_rational(&-turns)
            }
            None => Complex64::one(),
        }
    }
}

/// Builds the multiplier from the branch supports `S^(q)`.
///
/// `N = 1` is accepted: the single branch gives `m(xi) = e^{-2 pi i xi}`,
/// the multiplier of an integer translation.
pub fn construct_multiplier_line(s: &Spectrum, n: u32) -> Result<MultiplierConstruction> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if s.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    let q_sets = folded_supports(s, n);
    for p in 0..q_sets.len() {
        for q in p + 1..q_sets.len() {
            if q_sets[p].intersection(&q_sets[q]).measure().is_positive() {
                return Err(Error::NotInvariant);
            }
        }
    }
    let covered = q_sets
        .iter()
        .fold(IntervalUnion::empty(), |acc, set| acc.union(set));
    let residual_set =
        IntervalUnion::interval(Rational::zero(), Rational::one()).difference(&covered);
    Ok(MultiplierConstruction {
        n,
        q_sets,
        residual_set,
    })
}

/// `max |Z_1(T_{1/N} psi)(x, xi) - m(xi) Z_1(psi)(x, xi)|` over the grid.
pub fn multiplier_residual(
    s: &Spectrum,
    n: u32,
    m: &MultiplierConstruction,
    grid: &[GridPoint],
) -> f64 {
    let shift = Rational::new(BigInt::from(1), BigInt::from(n));
    grid.iter()
        .map(|p| {
            let lhs = s.zak_translated(1, &shift, p.x, &p.xi);
            let rhs = m.value(&p.xi) * s.zak(1, p.x, &p.xi);
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::cis_turns;
    use crate::spectra::{examples, RationalInterval};
    use crate::zak_line::residual_grid;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn set(parts: &[(crate::spectra::Fraction, crate::spectra::Fraction)]) -> IntervalUnion {
        IntervalUnion::from_intervals(
            parts
                .iter()
                .map(|&(a, b)| RationalInterval::from_fractions(a, b)),
        )
    }

    #[test]
    fn psi2_multiplier_sets_and_values() {
        let m = construct_multiplier_line(&examples::psi2(), 2).unwrap();
        assert_eq!(m.q_sets[0], set(&[((0, 1), (1, 2))]));
        assert_eq!(m.q_sets[1], set(&[((1, 2), (1, 1))]));
        assert!(m.residual_set.is_empty());
        // e^{-pi i xi} on [0,1/2), e^{-pi i (xi+1)} on [1/2,1)
        let z = m.value(&q(1, 4));
        assert!((z - cis_turns(-1.0 / 8.0)).norm() < 1e-15);
        let z = m.value(&q(3, 4));
        assert!((z - cis_turns(-7.0 / 8.0)).norm() < 1e-15);
        // Z-periodic
        assert_eq!(m.value(&q(7, 4)), m.value(&q(3, 4)));
    }

    #[test]
    fn paley_wiener_covers_unit_interval() {
        let m = construct_multiplier_line(&examples::paley_wiener(), 2).unwrap();
        let all = m.q_sets[0].union(&m.q_sets[1]);
        assert_eq!(all, set(&[((0, 1), (1, 1))]));
        assert!(m.residual_set.is_empty());
    }

    #[test]
    fn narrow_support_leaves_residual() {
        let s = Spectrum::indicator(&set(&[((0, 1), (1, 4))]), Complex64::one());
        let m = construct_multiplier_line(&s, 2).unwrap();
        assert_eq!(m.q_sets[0], set(&[((0, 1), (1, 4))]));
        assert!(m.q_sets[1].is_empty());
        assert_eq!(m.residual_set, set(&[((1, 4), (1, 1))]));
        assert_eq!(m.value(&q(1, 2)), Complex64::one());
    }

    #[test]
    fn non_invariant_has_no_multiplier() {
        assert_eq!(
            construct_multiplier_line(&examples::psi1(), 2),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn residuals_vanish_for_invariant_generators() {
        for s in [examples::psi2(), examples::paley_wiener()] {
            let m = construct_multiplier_line(&s, 2).unwrap();
            let grid = residual_grid(&s, 200);
            let r = multiplier_residual(&s, 2, &m, &grid);
            assert!(r <= 1e-12, "{r}");
        }
        let s = examples::psi1();
        let m = construct_multiplier_line(&s, 1).unwrap();
        assert!(multiplier_residual(&s, 1, &m, &residual_grid(&s, 50)) <= 1e-13);
    }
}
