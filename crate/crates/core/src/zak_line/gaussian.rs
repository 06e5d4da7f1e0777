use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::ZakSource;
use crate::phase::cis_turns;
use crate::{Error, Rational, Result};

/// Tail bound the automatic truncation aims for.
pub const TAIL_TARGET: f64 = 1e-14;
/// Largest tail bound `zak_eval_time` accepts.
pub const TAIL_LIMIT: f64 = 1e-12;

/// `f(x) = exp(-pi ((x - center)/width)^2) e^{2 pi i modulation x}`.
///
/// Its Fourier transform is
/// `width exp(-pi width^2 (xi - modulation)^2) e^{-2 pi i center (xi - modulation)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianSignal {
    center: f64,
    width: f64,
    modulation: f64,
}

/// A truncated lattice sum together with a rigorous bound on what was dropped.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSum {
    pub value: Complex64,
    pub tail_bound: f64,
}

impl GaussianSignal {
    pub fn new(center: f64, width: f64, modulation: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) || !center.is_finite() || !modulation.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gaussian needs finite parameters and width > 0 (got width {width})"
            )));
        }
        Ok(Self {
            center,
            width,
            modulation,
        })
    }

    /// `exp(-pi x^2)`.
    pub fn unit() -> Self {
        Self {
            center: 0.0,
            width: 1.0,
            modulation: 0.0,
        }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn modulation(&self) -> f64 {
        self.modulation
    }

    pub fn value(&self, x: f64) -> Complex64 {
        let u = (x - self.center) / self.width;
        (-std::f64::consts::PI * u * u).exp() * cis_turns(self.modulation * x)
    }

    pub fn fourier(&self, xi: f64) -> Complex64 {
        let v = xi - self.modulation;
        let w = self.width;
        w * (-std::f64::consts::PI * w * w * v * v).exp() * cis_turns(-self.center * v)
    }

    /// Bound on `(1/N) sum_{|k| > K} |f(x + k/N)|`.
    pub fn time_tail_bound(&self, n: u32, x: f64, truncation: u64) -> f64 {
        let step = 1.0 / (n as f64 * self.width);
        let offset = (x - self.center) / self.width;
        let next = (truncation + 1) as f64 * step;
        let side = |a: f64| {
            if a <= 0.0 {
                f64::INFINITY
            } else {
                let pi = std::f64::consts::PI;
                (-pi * a * a).exp() / (1.0 - (-2.0 * pi * a * step).exp())
            }
        };
        (side(next + offset) + side(next - offset)) / n as f64
    }

    /// Smallest truncation whose tail bound is below [`TAIL_TARGET`].
    pub fn truncation_for(&self, n: u32, x: f64) -> u64 {
        let reach = (x - self.center).abs()
            + self.width * ((1.0 / TAIL_TARGET).ln() / std::f64::consts::PI).sqrt();
        let mut k = (reach * n as f64).floor().max(0.0) as u64;
        while self.time_tail_bound(n, x, k) >= TAIL_TARGET {
            k += 1;
        }
        k
    }
}

/// `Z_N(f)(x, xi)` by direct summation over `|k| <= truncation`.
pub fn zak_eval_time(
    f: &GaussianSignal,
    n: u32,
    x: f64,
    xi: f64,
    truncation: u64,
) -> Result<TruncatedSum> {
    let tail_bound = f.time_tail_bound(n, x, truncation);
    if tail_bound > TAIL_LIMIT {
        return Err(Error::TruncationTooSmall { bound: tail_bound });
    }
    let nf = n as f64;
    let k = truncation as i64;
    let value: Complex64 = (-k..=k)
        .map(|k| {
            let kf = k as f64;
            f.value(x + kf / nf) * cis_turns(-kf * xi / nf)
        })
        .sum::<Complex64>()
        / nf;
    Ok(TruncatedSum { value, tail_bound })
}

/// `Z_N(f)(x, xi) = sum_k f^(xi + N k) e^{2 pi i x (xi + N k)}`, truncated
/// where the Gaussian spectrum falls below `1e-18`.
pub fn zak_eval_gaussian_spectral(f: &GaussianSignal, n: u32, x: f64, xi: f64) -> Complex64 {
    let w = f.width;
    let reach = ((w * 1e18).ln().max(0.0) / std::f64::consts::PI).sqrt() / w;
    let nf = n as f64;
    let kmin = ((f.modulation - reach - xi) / nf).floor() as i64 - 1;
    let kmax = ((f.modulation + reach - xi) / nf).ceil() as i64 + 1;
    (kmin..=kmax)
        .map(|k| {
            let t = xi + nf * k as f64;
            f.fourier(t) * cis_turns(x * t)
        })
        .sum()
}

impl ZakSource for GaussianSignal {
    fn zak_translated(&self, n: u32, shift: &Rational, x: f64, xi: &Rational) -> Complex64 {
        // Z_N(T_h f)(x, xi) = Z_N(f)(x - h, xi)
        let xs = x - shift.to_f64().unwrap_or(0.0);
        let k = self.truncation_for(n, xs);
        zak_eval_time(self, n, xs, xi.to_f64().unwrap_or(0.0), k)
            .expect("automatic truncation meets the tail limit")
            .value
    }

    fn l2_norm(&self) -> f64 {
        // int exp(-2 pi u^2) w du = w / sqrt(2)
        (self.width / std::f64::consts::SQRT_2).sqrt()
    }
}
