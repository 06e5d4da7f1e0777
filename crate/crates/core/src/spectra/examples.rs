//! Generators used throughout the documentation and tests.

use num_complex::Complex64;

use super::{Fraction, RationalInterval, Spectrum};

fn indicator(parts: &[(Fraction, Fraction)]) -> Spectrum {
    Spectrum::normalize(parts.iter().map(|&(a, b)| {
        (
            RationalInterval::from_fractions(a, b),
            Complex64::new(1.0, 0.0),
        )
    }))
}

/// `chi_{[0,1/2) u [1,3/2)}`: a `Z`-invariant space that is not `(1/2)Z`-invariant.
pub fn psi1() -> Spectrum {
    indicator(&[((0, 1), (1, 2)), ((1, 1), (3, 2))])
}

/// `chi_{[0,1/2) u [3/2,2)}`: extra invariant under `(1/2)Z`.
pub fn psi2() -> Spectrum {
    indicator(&[((0, 1), (1, 2)), ((3, 2), (2, 1))])
}

/// `chi_{[-1/2,1/2)}`, the Paley-Wiener generator.
pub fn paley_wiener() -> Spectrum {
    indicator(&[((-1, 2), (1, 2))])
}

/// `chi_{[0,1)}`.
pub fn unit_box() -> Spectrum {
    indicator(&[((0, 1), (1, 1))])
}
