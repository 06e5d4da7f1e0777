//! Named verification suites shared by `zakinv verify` and the test targets.
//!
//! Every suite returns a [`SuiteReport`]: a list of named residuals or counts
//! with the bound each must meet.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::group::{
    all_subgroups, is_sublattice, orthogonality_residual, poisson_check, FiniteAbelianGroup,
    GroupSignal, Lattice,
};
use crate::oracle::{
    agreement_suite, line_discretization_oracle, span_membership, AgreementReport,
};
use crate::spectra::{examples, RationalInterval, Spectrum};
use crate::zak_group::{
    isometry_constant, isometry_ratio, quasi_periodicity_residuals, refinement_identity_residual,
    translate_identity_residual, zak_lattice, zak_lattice_spectral,
};
use crate::zak_line::{
    coefficient_identity_residual, construct_multiplier_line, extra_invariance_line,
    multiplier_residual, periodization_criterion_line, proof_coefficients,
    quasiperiodicity_residuals, refinement_residual_line, residual_grid, translation_residual_line,
    GaussianSignal,
};
use crate::{Error, Rational, Result};

pub const SUITES: &[&str] = &[
    "identities",
    "line-equivalence",
    "agreement",
    "line-oracle",
    "all",
];

/// Identity residual bound.
pub const IDENTITY_BOUND: f64 = 1e-10;
/// Multiplier residual bound, relative to `||psi||_2`.
pub const CERTIFICATE_BOUND: f64 = 1e-8;
/// Coefficient inversion bound.
pub const INVERSION_BOUND: f64 = 1e-12;
/// Product relation bound on invariant instances.
pub const COEFFICIENT_BOUND: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<AgreementReport>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn at_most(&mut self, name: &str, value: f64, bound: f64) {
        self.0.push(Check {
            name: name.to_string(),
            value,
            bound,
            passed: value <= bound,
        });
    }

    fn at_least(&mut self, name: &str, value: f64, bound: f64) {
        self.0.push(Check {
            name: name.to_string(),
            value,
            bound,
            passed: value >= bound,
        });
    }

    fn finish(self, suite: &str, seed: u64, agreement: Option<AgreementReport>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            passed: self.0.iter().all(|c| c.passed),
            checks: self.0,
            agreement,
        }
    }
}

/// Options for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Agreement trials.
    pub trials: u64,
    /// Random spectra for the line equivalence sweep.
    pub spectra: usize,
    pub max_order: usize,
    pub tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 200,
            spectra: 500,
            max_order: 64,
            tol: crate::DEFAULT_TOL,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "identities" => identities(opts),
        "line-equivalence" => line_equivalence(opts),
        "agreement" => agreement(opts),
        "line-oracle" => line_oracle(opts),
        "all" => {
            let parts = [
                identities(opts)?,
                line_equivalence(opts)?,
                agreement(opts)?,
                line_oracle(opts)?,
            ];
            let mut checks = Vec::new();
            let mut agreement = None;
            for part in parts {
                checks.extend(part.checks.into_iter().map(|mut c| {
                    c.name = format!("{}/{}", part.suite, c.name);
                    c
                }));
                agreement = agreement.or(part.agreement);
            }
            Ok(Checks(checks).finish("all", opts.seed, agreement))
        }
        other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
    }
}

/// Random spectrum with at most `max_pieces` pieces and endpoint
/// denominators at most `max_den`.
pub fn random_spectrum(rng: &mut ChaCha8Rng, max_pieces: usize, max_den: i64) -> Spectrum {
    let short = rng.random_bool(0.5);
    loop {
        let count = rng.random_range(1..=max_pieces);
        let raw: Vec<(RationalInterval, Complex64)> = (0..count)
            .map(|_| {
                let d1 = rng.random_range(1..=max_den);
                let d2 = rng.random_range(1..=max_den);
                let a = rng.random_range(-3 * d1..3 * d1);
                // least numerator over d2 strictly above a/d1
                let first = (a * d2).div_euclid(d1) + 1;
                let extra = if short {
                    rng.random_range(0..=d2 / 2)
                } else {
                    rng.random_range(0..2 * d2)
                };
                let lo = Rational::new(BigInt::from(a), BigInt::from(d1));
                let hi = Rational::new(BigInt::from(first + extra), BigInt::from(d2));
                let c = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                (RationalInterval::new(lo, hi).expect("positive length"), c)
            })
            .collect();
        let s = Spectrum::normalize(raw);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_signal(g: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> GroupSignal {
    GroupSignal::from_fn(g, |_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// Worst residuals of every group identity for one nested pair.
struct GroupResiduals {
    refinement: f64,
    translation: f64,
    cross_path: f64,
    orthogonality: f64,
    poisson: f64,
    periodicity: f64,
    extension: f64,
    isometry: f64,
}

fn group_residuals(f: &GroupSignal, k: &Lattice, l: &Lattice) -> Result<GroupResiduals> {
    let mut translation: f64 = 0.0;
    for &s in l.element_indices() {
        translation = translation.max(translate_identity_residual(f, k, l, s)?);
    }
    let cross_path = [k, l]
        .iter()
        .map(|lat| zak_lattice(f, lat).max_distance(&zak_lattice_spectral(f, lat)))
        .fold(0.0, f64::max);
    let (periodicity, extension) = quasi_periodicity_residuals(f, l);
    let c = isometry_constant(l);
    Ok(GroupResiduals {
        refinement: refinement_identity_residual(f, k, l)?,
        translation,
        cross_path,
        orthogonality: orthogonality_residual(l, k)?,
        poisson: poisson_check(f, l) / (1.0 + f.l1_norm()),
        periodicity,
        extension,
        isometry: (isometry_ratio(f, l) - c).abs() / c,
    })
}

fn identities(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = Checks::default();

    // line: spectra
    let mut spectra = vec![
        examples::psi1(),
        examples::psi2(),
        examples::paley_wiener(),
        examples::unit_box(),
    ];
    spectra.extend((0..40).map(|_| random_spectrum(&mut rng, 6, 12)));
    let (mut refine, mut transl, mut freq, mut time) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut inversion, mut coeff) = (0.0f64, 0.0f64);
    for s in &spectra {
        let grid = residual_grid(s, 48);
        for n in 1..=6 {
            refine = refine.max(refinement_residual_line(s, n, &grid));
            transl = transl.max(translation_residual_line(s, n, &grid));
            let (a, b) = quasiperiodicity_residuals(s, n, &grid, &[-2, -1, 1, 3]);
            freq = freq.max(a);
            time = time.max(b);
            for p in grid.iter().take(8) {
                inversion =
                    inversion.max(proof_coefficients(s, n, p.x, &p.xi).inversion_residual());
            }
            if n >= 2 && extra_invariance_line(s, n)?.invariant {
                for (i, p) in grid.iter().enumerate().take(16) {
                    let y = grid[(i * 7 + 3) % grid.len()].x;
                    coeff = coeff.max(coefficient_identity_residual(s, n, p.x, y, &p.xi));
                }
            }
        }
    }
    checks.at_most("line.refinement.spectra", refine, IDENTITY_BOUND);
    checks.at_most("line.translation.spectra", transl, IDENTITY_BOUND);
    checks.at_most("line.frequency_periodicity.spectra", freq, IDENTITY_BOUND);
    checks.at_most("line.time_quasiperiodicity.spectra", time, IDENTITY_BOUND);
    checks.at_most("line.coefficient_inversion", inversion, INVERSION_BOUND);
    checks.at_most("line.coefficients.grid", coeff, COEFFICIENT_BOUND);

    // line: Gaussians
    let gaussians = [
        GaussianSignal::unit(),
        GaussianSignal::new(0.3, 0.8, 0.7)?,
        GaussianSignal::new(-1.1, 1.7, -0.4)?,
        GaussianSignal::new(2.5, 0.5, 3.0)?,
    ];
    let grid = residual_grid(&Spectrum::empty(), 32);
    let (mut grefine, mut gtransl, mut gfreq, mut gtime) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for f in &gaussians {
        for n in 1..=4 {
            grefine = grefine.max(refinement_residual_line(f, n, &grid));
            gtransl = gtransl.max(translation_residual_line(f, n, &grid));
            let (a, b) = quasiperiodicity_residuals(f, n, &grid, &[-1, 1, 2]);
            gfreq = gfreq.max(a);
            gtime = gtime.max(b);
        }
    }
    checks.at_most("line.refinement.gaussian", grefine, IDENTITY_BOUND);
    checks.at_most("line.translation.gaussian", gtransl, IDENTITY_BOUND);
    checks.at_most("line.frequency_periodicity.gaussian", gfreq, IDENTITY_BOUND);
    checks.at_most("line.time_quasiperiodicity.gaussian", gtime, IDENTITY_BOUND);

    // groups: every nested pair of three fixed groups, then random instances
    let mut cases: Vec<(GroupSignal, Lattice, Lattice)> = Vec::new();
    for m in [&[8u64][..], &[12], &[2, 6]] {
        let g = FiniteAbelianGroup::new(m)?;
        let subs = all_subgroups(&g);
        for k in &subs {
            for l in subs.iter().filter(|l| is_sublattice(k, l)) {
                cases.push((random_signal(&g, &mut rng), k.clone(), l.clone()));
            }
        }
    }
    let exhaustive = cases.len();
    for _ in 0..100 {
        let moduli: Vec<u64> = loop {
            let rank = rng.random_range(1..=3);
            let m: Vec<u64> = (0..rank).map(|_| rng.random_range(2..=12)).collect();
            if m.iter().product::<u64>() <= 64 {
                break m;
            }
        };
        let g = FiniteAbelianGroup::new(&moduli)?;
        let subs = all_subgroups(&g);
        let l = subs[rng.random_range(0..subs.len())].clone();
        let inside: Vec<&Lattice> = subs.iter().filter(|k| is_sublattice(k, &l)).collect();
        let k = inside[rng.random_range(0..inside.len())].clone();
        cases.push((random_signal(&g, &mut rng), k, l));
    }
    let results = cases
        .par_iter()
        .map(|(f, k, l)| group_residuals(f, k, l))
        .collect::<Result<Vec<_>>>()?;
    let worst = |pick: fn(&GroupResiduals) -> f64| results.iter().map(pick).fold(0.0, f64::max);
    checks.at_least(
        "group.instances",
        results.len() as f64,
        (exhaustive + 100) as f64,
    );
    checks.at_most("group.refinement", worst(|r| r.refinement), IDENTITY_BOUND);
    checks.at_most(
        "group.translation",
        worst(|r| r.translation),
        IDENTITY_BOUND,
    );
    checks.at_most("group.cross_path", worst(|r| r.cross_path), IDENTITY_BOUND);
    checks.at_most(
        "group.orthogonality",
        worst(|r| r.orthogonality),
        IDENTITY_BOUND,
    );
    checks.at_most("group.poisson", worst(|r| r.poisson), IDENTITY_BOUND);
    checks.at_most(
        "group.alpha_periodicity",
        worst(|r| r.periodicity),
        IDENTITY_BOUND,
    );
    checks.at_most("group.x_extension", worst(|r| r.extension), IDENTITY_BOUND);
    checks.at_most(
        "group.isometry_relative",
        worst(|r| r.isometry),
        IDENTITY_BOUND,
    );
    Ok(checks.finish("identities", opts.seed, None))
}

/// Per-instance outcome of the line equivalence sweep.
struct LineCase {
    agree: bool,
    invariant: bool,
    certificate: f64,
    inversion: f64,
    coeff: f64,
}

fn line_case(s: &Spectrum, n: u32) -> Result<LineCase> {
    let a = extra_invariance_line(s, n)?;
    let b = periodization_criterion_line(s, n)?;
    let grid = residual_grid(s, 16);
    let inversion = grid
        .iter()
        .map(|p| proof_coefficients(s, n, p.x, &p.xi).inversion_residual())
        .fold(0.0, f64::max);
    let (certificate, coeff) = if a.invariant {
        let m = construct_multiplier_line(s, n)?;
        let cert = multiplier_residual(s, n, &m, &grid) / s.l2_norm();
        let coeff = grid
            .iter()
            .enumerate()
            .map(|(i, p)| {
                coefficient_identity_residual(s, n, p.x, grid[(i + 5) % grid.len()].x, &p.xi)
            })
            .fold(0.0, f64::max);
        (cert, coeff)
    } else {
        (0.0, 0.0)
    };
    Ok(LineCase {
        agree: a.invariant == b.invariant,
        invariant: a.invariant,
        certificate,
        inversion,
        coeff,
    })
}

fn line_equivalence(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let spectra: Vec<Spectrum> = (0..opts.spectra)
        .map(|_| random_spectrum(&mut rng, 6, 12))
        .collect();
    let cases: Vec<(usize, u32)> = (0..spectra.len())
        .flat_map(|i| (2..=8).map(move |n| (i, n)))
        .collect();
    let results = cases
        .par_iter()
        .map(|&(i, n)| line_case(&spectra[i], n))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Checks::default();
    checks.at_least("instances", results.len() as f64, (opts.spectra * 7) as f64);
    let disagreements = results.iter().filter(|r| !r.agree).count();
    checks.at_most("disagreements", disagreements as f64, 0.0);
    let invariant = results.iter().filter(|r| r.invariant).count();
    checks.at_least("invariant_instances", invariant as f64, 0.0);
    let worst = |pick: fn(&LineCase) -> f64| results.iter().map(pick).fold(0.0, f64::max);
    checks.at_most(
        "multiplier_residual_relative",
        worst(|r| r.certificate),
        CERTIFICATE_BOUND,
    );
    checks.at_most(
        "coefficient_inversion",
        worst(|r| r.inversion),
        INVERSION_BOUND,
    );
    checks.at_most(
        "line.coefficients.invariant",
        worst(|r| r.coeff),
        COEFFICIENT_BOUND,
    );
    Ok(checks.finish("line-equivalence", opts.seed, None))
}

fn agreement(opts: &SuiteOptions) -> Result<SuiteReport> {
    let report = agreement_suite(opts.seed, opts.trials, opts.max_order, opts.tol)?;
    let mut checks = Checks::default();
    checks.at_most("disagreements", report.disagreements.len() as f64, 0.0);
    checks.at_least(
        "structured_invariant_trials",
        report.structured_invariant_trials as f64,
        (opts.trials * 30).div_ceil(200) as f64,
    );
    checks.at_most(
        "multiplier_residual_relative",
        report.max_multiplier_residual,
        CERTIFICATE_BOUND,
    );
    checks.at_most(
        "coefficient_inversion",
        report.max_inversion_residual,
        INVERSION_BOUND,
    );
    checks.at_most(
        "group.coefficients.invariant",
        report.max_coefficient_residual,
        COEFFICIENT_BOUND,
    );

    // the projection oracle must accept exact members of a span
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let g = FiniteAbelianGroup::new(&[4, 4])?;
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    for _ in 0..100 {
        let count = rng.random_range(1..=6);
        let basis: Vec<GroupSignal> = (0..count).map(|_| random_signal(&g, &mut rng)).collect();
        let coeffs: Vec<Complex64> = (0..count)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let target = GroupSignal::from_fn(&g, |x| {
            basis.iter().zip(&coeffs).map(|(b, c)| b.value(x) * c).sum()
        });
        let r = span_membership(&target, &basis, opts.tol)?;
        worst = worst.max(r.residual);
        accepted += usize::from(r.decision);
    }
    checks.at_most("oracle_self_consistency.residual", worst, IDENTITY_BOUND);
    checks.at_least("oracle_self_consistency.accepted", accepted as f64, 100.0);
    Ok(checks.finish("agreement", opts.seed, Some(report)))
}

fn line_oracle(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut spectra = vec![
        examples::psi1(),
        examples::psi2(),
        examples::paley_wiener(),
        examples::unit_box(),
    ];
    spectra.extend((0..60).map(|_| random_spectrum(&mut rng, 4, 6)));
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    let mut skipped = 0usize;
    for s in &spectra {
        let m = s
            .denominator_lcm()
            .try_into()
            .map_err(|_| Error::InvalidArgument("grid too fine".into()))?;
        for n in 2..=4 {
            match line_discretization_oracle(s, n, m) {
                Ok(v) => {
                    checked += 1;
                    disagreements +=
                        usize::from(v.invariant != extra_invariance_line(s, n)?.invariant);
                }
                Err(Error::GroupTooLarge(_)) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let mut checks = Checks::default();
    checks.at_most("disagreements", disagreements as f64, 0.0);
    checks.at_least("instances", checked as f64, 1.0);
    checks.at_least("skipped_too_large", skipped as f64, 0.0);
    Ok(checks.finish("line-oracle", opts.seed, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", &SuiteOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn random_spectra_respect_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let s = random_spectrum(&mut rng, 6, 12);
            assert!(!s.is_zero());
            for (iv, _) in s.pieces() {
                assert!(*iv.lo().denom() <= BigInt::from(12));
            }
        }
    }

    #[test]
    fn small_line_equivalence_passes() {
        let opts = SuiteOptions {
            spectra: 20,
            ..SuiteOptions::default()
        };
        let r = run_suite("line-equivalence", &opts).unwrap();
        assert!(r.passed, "{:#?}", r.checks);
    }
}
