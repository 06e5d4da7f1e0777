//! Piecewise-constant spectra with exact rational breakpoints.

mod interval;
mod spectrum;

pub mod examples;
pub mod json;

pub use interval::{Fraction, IntervalUnion, RationalInterval};
pub use json::{parse_rational, rational_to_string, PieceJson, SpectrumJson};
pub use spectrum::{Spectrum, COEFF_ZERO_REL};
