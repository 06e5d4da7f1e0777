//! Unit-modulus phases `e^{2 pi i t}` with `t` measured in turns.
//!
//! Arguments are reduced modulo one before calling `sin`/`cos`; for rational
//! arguments the reduction is exact.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::Rational;

/// `e^{2 pi i t}`.
pub fn cis_turns(t: f64) -> Complex64 {
    let r = t - t.round();
    Complex64::from_polar(1.0, std::f64::consts::TAU * r)
}

/// `e^{2 pi i t}` for exact `t`.
pub fn cis_rational(t: &Rational) -> Complex64 {
    if t.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    let (num, den) = (t.numer(), t.denom());
    let reduced = num.mod_floor(den);
    let frac = Rational::new(reduced, den.clone());
    cis_turns(frac.to_f64().unwrap_or(0.0))
}

/// Reduces an exact rational into `[0, 1)`.
pub fn frac(t: &Rational) -> Rational {
    t - t.floor()
}
