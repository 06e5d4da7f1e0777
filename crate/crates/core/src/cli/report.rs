use std::fmt::Write;

use num_bigint::BigInt;
use serde::Serialize;

use crate::group::{CosetSection, GroupElement, GroupSignal, Lattice};
use crate::oracle::invariance_oracle;
use crate::spectra::{rational_to_string, IntervalUnion, Spectrum, SpectrumJson, COEFF_ZERO_REL};
use crate::zak_group::{construct_multiplier_group, extra_invariance_group};
use crate::zak_line::{
    extra_invariance_line, multiplier_residual, periodization_criterion_line,
    refinement_residual_line, residual_grid, translation_residual_line, zak_eval_spectral,
};
use crate::{Rational, Result};

const TOLERANCE_NOTE: &str = "zero tests use artifact thresholds: spectrum coefficients \
     below 1e-9 (1 + ||psi||_2) are dropped, and group-side Zak values count as zero below \
     tol * ||psi||_2";

fn intervals(set: &IntervalUnion) -> Vec<[String; 2]> {
    set.pieces()
        .iter()
        .map(|iv| [rational_to_string(iv.lo()), rational_to_string(iv.hi())])
        .collect()
}

#[derive(Debug, Serialize)]
pub struct LineWitnessJson {
    pub p: u32,
    pub q: u32,
    pub overlap: Vec<[String; 2]>,
    pub measure: String,
}

#[derive(Debug, Serialize)]
pub struct LineMultiplierJson {
    /// `S^(q)` for `q = 0..N`, as half-open intervals in `[0, 1)`.
    pub q_sets: Vec<Vec<[String; 2]>>,
    pub residual_set: Vec<[String; 2]>,
    pub rule: &'static str,
}

#[derive(Debug, Serialize)]
pub struct LineResiduals {
    pub multiplier: Option<f64>,
    pub refinement: f64,
    pub translation: f64,
    pub grid_points: usize,
}

#[derive(Debug, Serialize)]
pub struct LineReport {
    pub generator: SpectrumJson,
    #[serde(rename = "N")]
    pub n: u32,
    pub invariant: bool,
    pub periodization_agrees: bool,
    pub witnesses: Vec<LineWitnessJson>,
    pub multiplier: Option<LineMultiplierJson>,
    pub residuals: LineResiduals,
    pub tol: f64,
    pub coefficient_zero_rel: f64,
    pub notes: Vec<&'static str>,
}

const RESIDUAL_POINTS: usize = 256;

pub fn line_report(s: &Spectrum, n: u32, tol: f64) -> Result<LineReport> {
    let verdict = extra_invariance_line(s, n)?;
    let sw = periodization_criterion_line(s, n)?;
    let grid = residual_grid(s, RESIDUAL_POINTS);
    let multiplier = verdict.certificate.as_ref().map(|m| LineMultiplierJson {
        q_sets: m.q_sets.iter().map(intervals).collect(),
        residual_set: intervals(&m.residual_set),
        rule: "m(xi) = exp(-2 pi i (xi + q) / N) on S^(q), 1 on the residual set, Z-periodic",
    });
    let multiplier_res = verdict
        .certificate
        .as_ref()
        .map(|m| multiplier_residual(s, n, m, &grid));
    Ok(LineReport {
        generator: s.to_json_value(),
        n,
        invariant: verdict.invariant,
        periodization_agrees: sw.invariant == verdict.invariant,
        witnesses: verdict
            .witnesses
            .iter()
            .map(|w| LineWitnessJson {
                p: w.p,
                q: w.q,
                overlap: intervals(&w.overlap),
                measure: rational_to_string(&w.overlap.measure()),
            })
            .collect(),
        multiplier,
        residuals: LineResiduals {
            multiplier: multiplier_res,
            refinement: refinement_residual_line(s, n, &grid),
            translation: translation_residual_line(s, n, &grid),
            grid_points: grid.len(),
        },
        tol,
        coefficient_zero_rel: COEFF_ZERO_REL,
        notes: vec![TOLERANCE_NOTE],
    })
}

/// Points of the CSV frequency grid.
pub const CSV_POINTS: i64 = 512;

/// `xi,p,abs_value,re,im` rows of `Z_N(psi)(x0, xi + p)` for
/// `xi = (2j + 1) / 1024` and `p = 0..N`.
pub fn line_csv(s: &Spectrum, n: u32, x0: f64) -> String {
    let mut out = String::from("xi,p,abs_value,re,im\n");
    let den = BigInt::from(2 * CSV_POINTS);
    for p in 0..n {
        for j in 0..CSV_POINTS {
            let xi = Rational::new(BigInt::from(2 * j + 1), den.clone());
            let z = zak_eval_spectral(s, n, x0, &(&xi + Rational::from_integer(p.into())));
            let xf = (2 * j + 1) as f64 / (2 * CSV_POINTS) as f64;
            let _ = writeln!(out, "{xf},{p},{},{},{}", z.norm(), z.re, z.im);
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct GroupWitnessJson {
    pub alpha: Vec<u64>,
    pub beta1: Vec<u64>,
    pub beta2: Vec<u64>,
    pub magnitudes: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct OracleJson {
    pub invariant: bool,
    /// Largest projection residual relative to `||psi||_2`.
    pub max_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub shift: Vec<u64>,
    /// Multiplier residual relative to `||psi||_2`.
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub group: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
    pub invariant: bool,
    pub witnesses: Vec<GroupWitnessJson>,
    pub oracle_agrees: bool,
    pub oracle: OracleJson,
    pub certificates: Vec<CertificateJson>,
    pub tol: f64,
    pub notes: Vec<&'static str>,
}

fn coords(e: &GroupElement) -> Vec<u64> {
    e.coords().to_vec()
}

pub fn group_report(psi: &GroupSignal, k: &Lattice, l: &Lattice, tol: f64) -> Result<GroupReport> {
    let verdict = extra_invariance_group(psi, k, l, tol)?;
    let oracle = invariance_oracle(psi, k, l, tol)?;
    let norm = psi.l2_norm();
    let mut certificates = Vec::new();
    if verdict.invariant {
        for &s in CosetSection::within(l, k)?.rep_indices() {
            let (m, r) = construct_multiplier_group(psi, k, l, s, tol)?;
            certificates.push(CertificateJson {
                shift: coords(&m.shift),
                residual: r / norm,
            });
        }
    }
    Ok(GroupReport {
        group: psi.group().to_string(),
        k: k.spec(),
        l: l.spec(),
        invariant: verdict.invariant,
        witnesses: verdict
            .witnesses
            .iter()
            .map(|w| GroupWitnessJson {
                alpha: coords(&w.alpha),
                beta1: coords(&w.beta1),
                beta2: coords(&w.beta2),
                magnitudes: w.magnitudes,
            })
            .collect(),
        oracle_agrees: oracle.invariant == verdict.invariant,
        oracle: OracleJson {
            invariant: oracle.invariant,
            max_residual: oracle.max_residual / norm,
        },
        certificates,
        tol,
        notes: vec![TOLERANCE_NOTE],
    })
}
