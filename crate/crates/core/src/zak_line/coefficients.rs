use num_bigint::BigInt;
use num_complex::Complex64;

use super::ZakSource;
use crate::phase::cis_turns;
use crate::Rational;

/// `alpha_q = Z_N(psi)(x, xi + q)` and its DFT
/// `A_p = sum_q e^{-2 pi i p q / N} alpha_q`, for `p, q = 0..N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofCoefficients {
    pub alpha: Vec<Complex64>,
    pub a: Vec<Complex64>,
}

fn root(n: usize, k: usize, sign: f64) -> Complex64 {
    cis_turns(sign * (k % n) as f64 / n as f64)
}

pub fn proof_coefficients<G: ZakSource + ?Sized>(
    gen: &G,
    n: u32,
    x: f64,
    xi: &Rational,
) -> ProofCoefficients {
    let nn = n as usize;
    let alpha: Vec<Complex64> = (0..nn)
        .map(|q| gen.zak(n, x, &(xi + Rational::from_integer(BigInt::from(q)))))
        .collect();
    let a = (0..nn)
        .map(|p| (0..nn).map(|q| root(nn, p * q, -1.0) * alpha[q]).sum())
        .collect();
    ProofCoefficients { alpha, a }
}

impl ProofCoefficients {
    /// `max_q |alpha_q - (1/N) sum_p e^{2 pi i p q / N} A_p|`.
    pub fn inversion_residual(&self) -> f64 {
        let n = self.a.len();
        (0..n)
            .map(|q| {
                let back: Complex64 = (0..n)
                    .map(|p| root(n, p * q, 1.0) * self.a[p])
                    .sum::<Complex64>()
                    / n as f64;
                (back - self.alpha[q]).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Largest spread of `A_p(x, xi) A_q(y, xi)` among index pairs with the same
/// `p + q mod N`. Zero (up to rounding) for extra-invariant generators.
pub fn coefficient_identity_residual<G: ZakSource + ?Sized>(
    gen: &G,
    n: u32,
    x: f64,
    y: f64,
    xi: &Rational,
) -> f64 {
    let ax = proof_coefficients(gen, n, x, xi).a;
    let ay = proof_coefficients(gen, n, y, xi).a;
    let nn = n as usize;
    let mut worst: f64 = 0.0;
    for sum in 0..nn {
        let products: Vec<Complex64> = (0..nn).map(|p| ax[p] * ay[(sum + nn - p) % nn]).collect();
        for i in 0..nn {
            for j in i + 1..nn {
                worst = worst.max((products[i] - products[j]).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::examples;
    use crate::zak_line::residual_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inversion_round_trip() {
        let s = examples::psi1();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x: f64 = rng.random_range(0.0..1.0);
            let xi = Rational::new(rng.random_range(0..997).into(), 997.into());
            let c = proof_coefficients(&s, 2, x, &xi);
            assert!(c.inversion_residual() <= 1e-12);
        }
    }

    #[test]
    fn single_branch_is_identity() {
        let s = examples::psi2();
        let xi = Rational::new(1.into(), 3.into());
        let c = proof_coefficients(&s, 1, 0.4, &xi);
        assert_eq!(c.a, c.alpha);
    }

    #[test]
    fn coefficient_identity_holds_for_invariant_generator() {
        let s = examples::psi2();
        let grid = residual_grid(&s, 100);
        for (i, p) in grid.iter().enumerate() {
            let y = grid[(i * 37 + 11) % grid.len()].x;
            assert!(coefficient_identity_residual(&s, 2, p.x, y, &p.xi) <= 1e-10);
        }
    }

    #[test]
    fn coefficient_identity_fails_for_non_invariant_generator() {
        let s = examples::psi1();
        let xi = Rational::new(1.into(), 4.into());
        assert!(coefficient_identity_residual(&s, 2, 0.1, 0.3, &xi) > 1e-3);
    }
}
