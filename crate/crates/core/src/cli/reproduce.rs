use std::fmt::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;

use super::report::line_report;
use crate::phase::cis_turns;
use crate::spectra::{examples, Spectrum};
use crate::zak_line::zak_eval_spectral;
use crate::Rational;

/// Frequency points `xi = (2j + 1) / 1024`, `j < 512`.
const XI_POINTS: i64 = 512;
/// Time points `x = i / 16`, `i < 16`.
const X_POINTS: i64 = 16;
const CLOSED_FORM_BOUND: f64 = 1e-12;

#[derive(Debug, Serialize)]
pub struct ExampleSummary {
    pub invariant: bool,
    pub expected_invariant: bool,
    pub max_closed_form_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct ReproduceSummary {
    pub psi1: ExampleSummary,
    pub psi2: ExampleSummary,
    pub closed_form_bound: f64,
    pub grid: [i64; 2],
    pub files: Vec<String>,
    pub passed: bool,
}

/// `Z_2(psi)(x, xi)` and `Z_2(psi)(x, xi + 1)` on the fixed grid against the
/// closed forms for each branch; returns the CSV table and the largest
/// deviation.
fn closed_form_table(
    s: &Spectrum,
    branch0: impl Fn(f64, f64) -> Complex64,
    branch1: impl Fn(f64, f64) -> Complex64,
) -> (String, f64) {
    let mut csv = String::from(
        "xi,x,re,im,closed_re,closed_im,shifted_re,shifted_im,shifted_closed_re,shifted_closed_im,deviation\n",
    );
    let mut worst: f64 = 0.0;
    let den = BigInt::from(2 * XI_POINTS);
    let one = Rational::from_integer(BigInt::from(1));
    for j in 0..XI_POINTS {
        let xi = Rational::new(BigInt::from(2 * j + 1), den.clone());
        let xi_shifted = &xi + &one;
        let xf = (2 * j + 1) as f64 / (2 * XI_POINTS) as f64;
        for i in 0..X_POINTS {
            let x = i as f64 / X_POINTS as f64;
            let z0 = zak_eval_spectral(s, 2, x, &xi);
            let z1 = zak_eval_spectral(s, 2, x, &xi_shifted);
            let (c0, c1) = (branch0(x, xf), branch1(x, xf));
            let d = (z0 - c0).norm().max((z1 - c1).norm());
            worst = worst.max(d);
            let _ = writeln!(
                csv,
                "{xf},{x},{},{},{},{},{},{},{},{},{d}",
                z0.re, z0.im, c0.re, c0.im, z1.re, z1.im, c1.re, c1.im
            );
        }
    }
    (csv, worst)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Writes verdicts, closed-form comparison tables, and the multiplier
/// certificate for the two worked examples into `dir`.
pub fn reproduce_worked_examples(
    dir: &Path,
) -> Result<ReproduceSummary, (PathBuf, std::io::Error)> {
    std::fs::create_dir_all(dir).map_err(|e| (dir.to_path_buf(), e))?;
    let mut files = Vec::new();
    let mut write = |name: &str, text: &str| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| (path, e))?;
        files.push(name.to_string());
        Ok(())
    };
    let psi1 = examples::psi1();
    let psi2 = examples::psi2();
    let r1 = line_report(&psi1, 2, crate::DEFAULT_TOL).expect("example is nonzero");
    let r2 = line_report(&psi2, 2, crate::DEFAULT_TOL).expect("example is nonzero");

    let on = |lo: f64, hi: f64, phase: fn(f64, f64) -> f64| {
        move |x: f64, xi: f64| {
            if (lo..hi).contains(&xi) {
                cis_turns(phase(x, xi))
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let at_xi: fn(f64, f64) -> f64 = |x, xi| x * xi;
    let at_xi_plus_one: fn(f64, f64) -> f64 = |x, xi| x * (xi + 1.0);
    // psi_1: both branches live on [0,1/2); psi_2: branch at xi + 1 lives on [1/2,1)
    let (t1, d1) = closed_form_table(&psi1, on(0.0, 0.5, at_xi), on(0.0, 0.5, at_xi_plus_one));
    let (t2, d2) = closed_form_table(&psi2, on(0.0, 0.5, at_xi), on(0.5, 1.0, at_xi_plus_one));

    write("psi1_verdict.json", &json(&r1))?;
    write("psi2_verdict.json", &json(&r2))?;
    write("psi1_closed_form.csv", &t1)?;
    write("psi2_closed_form.csv", &t2)?;
    write("psi2_multiplier.json", &json(&r2.multiplier))?;

    let mut summary = ReproduceSummary {
        psi1: ExampleSummary {
            invariant: r1.invariant,
            expected_invariant: false,
            max_closed_form_deviation: d1,
        },
        psi2: ExampleSummary {
            invariant: r2.invariant,
            expected_invariant: true,
            max_closed_form_deviation: d2,
        },
        closed_form_bound: CLOSED_FORM_BOUND,
        grid: [XI_POINTS, X_POINTS],
        files: Vec::new(),
        passed: !r1.invariant && r2.invariant && d1 <= CLOSED_FORM_BOUND && d2 <= CLOSED_FORM_BOUND,
    };
    files.push("summary.json".to_string());
    summary.files = files.clone();
    let text = json(&summary);
    std::fs::write(dir.join("summary.json"), text).map_err(|e| (dir.join("summary.json"), e))?;
    Ok(summary)
}
