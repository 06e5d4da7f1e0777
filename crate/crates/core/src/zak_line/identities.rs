use num_bigint::BigInt;
use num_complex::Complex64;

use super::{GridPoint, ZakSource};
use crate::phase::cis_rational;
use crate::Rational;

fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// `max |Z_1(f)(x, xi) - sum_{q<N} Z_N(f)(x, xi + q)|` over the grid.
pub fn refinement_residual_line<G: ZakSource + ?Sized>(gen: &G, n: u32, grid: &[GridPoint]) -> f64 {
    grid.iter()
        .map(|p| {
            let lhs = gen.zak(1, p.x, &p.xi);
            let rhs: Complex64 = (0..n as i64)
                .map(|q| gen.zak(n, p.x, &(&p.xi + int(q))))
                .sum();
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

/// `max |Z_1(T_{1/N} f)(x, xi) - sum_q e^{-2 pi i (xi+q)/N} Z_N(f)(x, xi + q)|`.
pub fn translation_residual_line<G: ZakSource + ?Sized>(
    gen: &G,
    n: u32,
    grid: &[GridPoint],
) -> f64 {
    let shift = Rational::new(BigInt::from(1), BigInt::from(n));
    grid.iter()
        .map(|p| {
            let lhs = gen.zak_translated(1, &shift, p.x, &p.xi);
            let rhs: Complex64 = (0..n as i64)
                .map(|q| {
                    let t = &p.xi + int(q);
                    cis_rational(&-(&t * &shift)) * gen.zak(n, p.x, &t)
                })
                .sum();
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}

/// Residuals of `Z_N(x, xi + l N) = Z_N(x, xi)` and
/// `Z_N(x + l/N, xi) = e^{2 pi i l xi / N} Z_N(x, xi)` for every `l` given.
pub fn quasiperiodicity_residuals<G: ZakSource + ?Sized>(
    gen: &G,
    n: u32,
    grid: &[GridPoint],
    ells: &[i64],
) -> (f64, f64) {
    let nq = int(n as i64);
    let mut freq: f64 = 0.0;
    let mut time: f64 = 0.0;
    for p in grid {
        let base = gen.zak(n, p.x, &p.xi);
        for &l in ells {
            if l == 0 {
                continue;
            }
            let shifted = gen.zak(n, p.x, &(&p.xi + int(l) * &nq));
            freq = freq.max((shifted - base).norm());
            let x_shift = p.x + l as f64 / n as f64;
            let moved = gen.zak(n, x_shift, &p.xi);
            let phase = cis_rational(&(int(l) * &p.xi / &nq));
            time = time.max((moved - phase * base).norm());
        }
    }
    (freq, time)
}
