//! JSON spectrum format:
//!
//! ```json
//! {"pieces":[{"lo":"-1/2","hi":"1/2","re":1.0,"im":0.0}]}
//! ```
//!
//! Endpoints are exact rationals written as `"p/q"`, `"p"`, or a finite
//! decimal such as `"0.25"`. Integral JSON numbers are accepted too; any
//! other number is rejected because its binary value is not the decimal
//! written in the file.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{RationalInterval, Spectrum};
use crate::{Error, Rational, Result};

#[derive(Debug, Deserialize)]
struct RawSpectrum {
    pieces: Vec<RawPiece>,
}

#[derive(Debug, Deserialize)]
struct RawPiece {
    lo: serde_json::Value,
    hi: serde_json::Value,
    #[serde(default)]
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Serialize)]
pub struct SpectrumJson {
    pub pieces: Vec<PieceJson>,
}

#[derive(Debug, Serialize)]
pub struct PieceJson {
    pub lo: String,
    pub hi: String,
    pub re: f64,
    pub im: f64,
}

/// Parses `"p/q"`, `"p"`, or a finite decimal. Accepts U+2212 as a minus sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::NonRationalEndpoint(text.to_string());
    let t = text.trim().replace('\u{2212}', "-");
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => BigInt::from_str(digits).map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Rational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(&t)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn endpoint(value: &serde_json::Value) -> Result<Rational> {
    match value {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(BigInt::from(u)))
            } else {
                Err(Error::NonRationalEndpoint(n.to_string()))
            }
        }
        other => Err(Error::NonRationalEndpoint(other.to_string())),
    }
}

impl Spectrum {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpectrum =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut pieces = Vec::with_capacity(raw.pieces.len());
        for p in raw.pieces {
            let lo = endpoint(&p.lo)?;
            let hi = endpoint(&p.hi)?;
            if lo > hi {
                return Err(Error::Parse(format!(
                    "interval [{}, {}) has lo > hi",
                    rational_to_string(&lo),
                    rational_to_string(&hi)
                )));
            }
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::Parse("non-finite coefficient".into()));
            }
            if let Some(iv) = RationalInterval::new(lo, hi) {
                pieces.push((iv, Complex64::new(p.re, p.im)));
            }
        }
        Ok(Spectrum::normalize(pieces))
    }

    pub fn to_json_value(&self) -> SpectrumJson {
        SpectrumJson {
            pieces: self
                .pieces()
                .iter()
                .map(|(iv, c)| PieceJson {
                    lo: rational_to_string(iv.lo()),
                    hi: rational_to_string(iv.hi()),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("spectrum serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::examples;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("-1/2").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("\u{2212}1/2").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
    }

    #[test]
    fn rejects_inexact_endpoints() {
        for bad in ["1/0", "pi", "1e3", "", "0.", "nan"] {
            assert!(
                matches!(parse_rational(bad), Err(Error::NonRationalEndpoint(_))),
                "{bad}"
            );
        }
        let err = Spectrum::from_json(r#"{"pieces":[{"lo":0.1,"hi":"1","re":1}]}"#).unwrap_err();
        assert!(matches!(err, Error::NonRationalEndpoint(_)));
    }

    #[test]
    fn round_trips_through_json() {
        let s = examples::psi2();
        assert_eq!(Spectrum::from_json(&s.to_json()).unwrap(), s);
        let pw = Spectrum::from_json(r#"{"pieces":[{"lo":"−1/2","hi":"1/2","re":1.0,"im":0.0}]}"#)
            .unwrap();
        assert_eq!(pw, examples::paley_wiener());
    }

    #[test]
    fn malformed_json_is_parse_error() {
        assert!(matches!(Spectrum::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            Spectrum::from_json(r#"{"pieces":[{"lo":"1","hi":"0","re":1}]}"#),
            Err(Error::Parse(_))
        ));
    }
}
