use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::spectra::Spectrum;
use crate::Rational;

/// Evaluation point `(x, xi)` for residual sweeps.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub x: f64,
    pub xi: Rational,
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// `count` points with `xi` in `[0, 1)` kept off every breakpoint of `s`.
///
/// With `D` the lcm of the breakpoint denominators, every `xi` is an odd
/// multiple of `1/(2 D r)`, which is never a multiple of `1/D`; folded and
/// shifted breakpoints (by integers) are multiples of `1/D` as well. `x`
/// follows a golden-ratio sequence in `[0, 1)`.
pub fn residual_grid(s: &Spectrum, count: usize) -> Vec<GridPoint> {
    let d = s.denominator_lcm();
    let count = count.max(1);
    let cells = {
        let d_small = d.to_usize().unwrap_or(usize::MAX);
        let r = count.div_ceil(d_small.max(1)).max(1);
        BigInt::from(d_small.max(1)) * BigInt::from(r)
    };
    let cells_f = cells.to_f64().unwrap_or(f64::MAX);
    (0..count)
        .map(|i| {
            let j = BigInt::from(((i as f64 + 0.5) * cells_f / count as f64).floor() as u64);
            let num: BigInt = BigInt::from(2) * j + BigInt::one();
            let xi = Rational::new(num, BigInt::from(2) * &cells);
            debug_assert!(!xi.is_negative() && xi < Rational::one());
            let x = (0.5 + i as f64 * GOLDEN).fract();
            GridPoint { x, xi }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::examples;

    #[test]
    fn grid_avoids_breakpoints() {
        let s = examples::psi2();
        let grid = residual_grid(&s, 200);
        assert_eq!(grid.len(), 200);
        for p in &grid {
            for piece in s.pieces() {
                for b in [piece.0.lo(), piece.0.hi()] {
                    assert_ne!(crate::phase::frac(b), p.xi);
                }
            }
            assert!(p.x >= 0.0 && p.x < 1.0);
        }
    }
}
