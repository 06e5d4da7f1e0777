use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::interval::{IntervalUnion, RationalInterval};
use crate::Rational;

/// Relative threshold below which a coefficient is treated as zero.
pub const COEFF_ZERO_REL: f64 = 1e-9;

/// Piecewise-constant, compactly supported function `sum_j c_j chi_{I_j}`
/// used as the Fourier transform of a generator on the real line.
///
/// Pieces are disjoint, sorted, carry non-negligible coefficients, and
/// adjacent pieces with identical coefficients are merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    pieces: Vec<(RationalInterval, Complex64)>,
}

impl Spectrum {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Canonical form of `sum_j c_j chi_{[lo_j, hi_j))`.
    ///
    /// Overlaps are resolved on the common refinement by adding coefficients.
    /// Entries with `lo >= hi` contribute nothing. A refined coefficient is
    /// dropped when `|c| <= 1e-9 (1 + ||psi||_2)`, with the norm taken over the
    /// refined (pre-drop) function.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (RationalInterval, Complex64)>,
    {
        let raw: Vec<_> = raw.into_iter().collect();
        let mut cuts: Vec<Rational> = raw
            .iter()
            .flat_map(|(iv, _)| [iv.lo().clone(), iv.hi().clone()])
            .collect();
        cuts.sort();
        cuts.dedup();

        let mut refined: Vec<(RationalInterval, Complex64)> = Vec::new();
        for w in cuts.windows(2) {
            let cell = RationalInterval::new(w[0].clone(), w[1].clone()).unwrap();
            let coeff: Complex64 = raw
                .iter()
                .filter(|(iv, _)| iv.lo() <= cell.lo() && cell.hi() <= iv.hi())
                .map(|(_, c)| *c)
                .sum();
            refined.push((cell, coeff));
        }

        let norm_sq: f64 = refined
            .iter()
            .map(|(iv, c)| c.norm_sqr() * iv.measure().to_f64().unwrap_or(f64::INFINITY))
            .sum();
        let threshold = COEFF_ZERO_REL * (1.0 + norm_sq.sqrt());

        let mut pieces: Vec<(RationalInterval, Complex64)> = Vec::new();
        for (cell, c) in refined {
            if c.norm() <= threshold {
                continue;
            }
            if let Some((last, lc)) = pieces.last_mut() {
                if *lc == c && last.hi() == cell.lo() {
                    *last = RationalInterval::new(last.lo().clone(), cell.hi().clone()).unwrap();
                    continue;
                }
            }
            pieces.push((cell, c));
        }
        Self { pieces }
    }

    /// `coeff * chi_A`.
    pub fn indicator(set: &IntervalUnion, coeff: Complex64) -> Self {
        Self::normalize(set.pieces().iter().map(|iv| (iv.clone(), coeff)))
    }

    pub fn pieces(&self) -> &[(RationalInterval, Complex64)] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self::normalize(self.pieces.iter().map(|(iv, c)| (iv.clone(), c * factor)))
    }

    /// Value at `xi` (zero off the support).
    pub fn value_at(&self, xi: &Rational) -> Complex64 {
        let idx = self.pieces.partition_point(|(iv, _)| iv.lo() <= xi);
        match idx.checked_sub(1).map(|i| &self.pieces[i]) {
            Some((iv, c)) if iv.contains(xi) => *c,
            _ => Complex64::zero(),
        }
    }

    pub fn support(&self) -> IntervalUnion {
        IntervalUnion::from_intervals(self.pieces.iter().map(|(iv, _)| iv.clone()))
    }

    /// Support of `P_{psi,N}(xi) = sum_k |psi^(xi + N k)|^2` inside `[0, N)`.
    pub fn periodization_support(&self, n: u32) -> IntervalUnion {
        assert!(n >= 1, "N must be positive");
        self.support()
            .fold(&Rational::from_integer(BigInt::from(n)))
    }

    /// `P_{psi,N}(xi)` as an exact finite sum.
    pub fn periodization_eval(&self, n: u32, xi: &Rational) -> f64 {
        assert!(n >= 1, "N must be positive");
        self.pieces
            .iter()
            .map(|(iv, c)| {
                let hits = lattice_hits(iv, xi, n);
                hits.to_f64().unwrap_or(0.0) * c.norm_sqr()
            })
            .sum()
    }

    /// `||psi^||_2^2 = sum_j |c_j|^2 |I_j|`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.pieces
            .iter()
            .map(|(iv, c)| c.norm_sqr() * iv.measure().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Calls `visit(t, c)` for every `t = xi + N k` that lands in a piece.
    pub(crate) fn for_each_lattice_point<F>(&self, n: u32, xi: &Rational, mut visit: F)
    where
        F: FnMut(&Rational, Complex64),
    {
        // xi + N k = (c + N k d) / d stays in lowest terms when c / d does
        let step = BigInt::from(n) * xi.denom();
        for (iv, c) in &self.pieces {
            let (kmin, kmax) = lattice_range(iv, xi, n);
            let mut k = kmin;
            while k <= kmax {
                let t = Rational::new_raw(xi.numer() + &step * &k, xi.denom().clone());
                visit(&t, *c);
                k += 1;
            }
        }
    }

    /// Least common multiple of breakpoint denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.pieces.iter().fold(BigInt::one(), |acc, (iv, _)| {
            acc.lcm(iv.lo().denom()).lcm(iv.hi().denom())
        })
    }
}

/// Integers `k` with `xi + period k` in `[lo, hi)`, as an inclusive range.
fn lattice_range(iv: &RationalInterval, xi: &Rational, n: u32) -> (BigInt, BigInt) {
    // ceil((b - xi) / n) with b = p / q and xi = c / d, in integers
    let bound = |b: &Rational| {
        let num = b.numer() * xi.denom() - xi.numer() * b.denom();
        let den = b.denom() * xi.denom() * BigInt::from(n);
        num.div_ceil(&den)
    };
    (bound(iv.lo()), bound(iv.hi()) - 1)
}

fn lattice_hits(iv: &RationalInterval, xi: &Rational, n: u32) -> BigInt {
    let (kmin, kmax) = lattice_range(iv, xi, n);
    if kmax < kmin {
        BigInt::zero()
    } else {
        kmax - kmin + 1
    }
}
