//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use zakinv::cli::reproduce_worked_examples;
use zakinv::group::{is_sublattice, FiniteAbelianGroup, GroupSignal, Lattice};
use zakinv::oracle::invariance_oracle;
use zakinv::suites::{run_suite, Check, SuiteOptions, SuiteReport};
use zakinv::zak_group::extra_invariance_group;

struct Outcome {
    passed: bool,
    detail: String,
}

fn check<'a>(report: &'a SuiteReport, name: &str) -> &'a Check {
    report
        .checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("suite {} has no check {name}", report.suite))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn worked_examples() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let (summary, elapsed) = timed(|| reproduce_worked_examples(dir.path()));
    let summary = match summary {
        Ok(s) => s,
        Err((path, e)) => {
            return Outcome {
                passed: false,
                detail: format!("write to {} failed: {e}", path.display()),
            }
        }
    };
    let deviation = summary
        .psi1
        .max_closed_form_deviation
        .max(summary.psi2.max_closed_form_deviation);
    let passed = !summary.psi1.invariant
        && summary.psi2.invariant
        && deviation <= 1e-12
        && summary.grid == [512, 16]
        && elapsed < Duration::from_secs(1);
    Outcome {
        passed,
        detail: format!(
            "psi1 invariant={}, psi2 invariant={}, max deviation {deviation:.1e} <= 1e-12 on 512x16, {elapsed:.2?} < 1s",
            summary.psi1.invariant, summary.psi2.invariant
        ),
    }
}

fn line_equivalence(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let disagreements = check(report, "disagreements").value;
    let instances = check(report, "instances").value;
    Outcome {
        passed: disagreements == 0.0 && instances >= 3500.0 && elapsed < Duration::from_secs(10),
        detail: format!(
            "{instances} instances (500 spectra x N=2..8), {disagreements} disagreements, {} invariant, {elapsed:.2?} < 10s",
            check(report, "invariant_instances").value
        ),
    }
}

fn group_agreement(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let a = report
        .agreement
        .as_ref()
        .expect("agreement suite carries its report");
    let passed = a.disagreements.is_empty()
        && a.trials == 200
        && a.structured_invariant_trials >= 30
        && elapsed < Duration::from_secs(60);
    Outcome {
        passed,
        detail: format!(
            "seed {} trials {} |G|<={} tol {:e}: {} disagreements, {} invariant ({} structured >= 30), {elapsed:.2?} < 60s",
            a.seed,
            a.trials,
            a.max_order,
            a.tol,
            a.disagreements.len(),
            a.invariant_trials,
            a.structured_invariant_trials
        ),
    }
}

fn identities(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let identity_checks: Vec<&Check> = report.checks.iter().filter(|c| c.bound == 1e-10).collect();
    let worst = identity_checks.iter().map(|c| c.value).fold(0.0, f64::max);
    let group_instances = check(report, "group.instances").value;
    Outcome {
        passed: report.passed && worst <= 1e-10 && elapsed < Duration::from_secs(30),
        detail: format!(
            "{} identity residuals, worst {worst:.1e} <= 1e-10, {group_instances} group instances, {elapsed:.2?} < 30s",
            identity_checks.len()
        ),
    }
}

fn certificates(line: &SuiteReport, group: &SuiteReport) -> Outcome {
    let l = check(line, "multiplier_residual_relative").value;
    let g = check(group, "multiplier_residual_relative").value;
    Outcome {
        passed: l <= 1e-8 && g <= 1e-8,
        detail: format!("line {l:.1e}, group {g:.1e} (relative to ||psi||_2) <= 1e-8"),
    }
}

fn coefficients(line: &SuiteReport, group: &SuiteReport) -> Outcome {
    let inversion = check(line, "coefficient_inversion")
        .value
        .max(check(group, "coefficient_inversion").value);
    let line_products = check(line, "line.coefficients.invariant").value;
    let group_products = check(group, "group.coefficients.invariant").value;
    Outcome {
        passed: inversion <= 1e-12 && line_products <= 1e-8 && group_products <= 1e-8,
        detail: format!(
            "inversion {inversion:.1e} <= 1e-12, product relations line {line_products:.1e} group {group_products:.1e} <= 1e-8"
        ),
    }
}

fn micro_examples() -> Outcome {
    let mut notes = Vec::new();
    let mut passed = true;

    // Z_4: delta_1 is orthogonal to span{delta_0, delta_2}
    let z4 = FiniteAbelianGroup::new(&[4]).unwrap();
    let k = Lattice::parse(&z4, "(2)").unwrap();
    let l = Lattice::whole(&z4);
    let psi = GroupSignal::delta(&z4, 0);
    let zak = extra_invariance_group(&psi, &k, &l, 1e-9)
        .unwrap()
        .invariant;
    let oracle = invariance_oracle(&psi, &k, &l, 1e-9).unwrap();
    let ok = !zak && !oracle.invariant && oracle.max_residual == 1.0;
    passed &= ok;
    notes.push(format!(
        "Z4 delta_0 K=<2> L=Z4 -> {zak}/{} residual {}",
        oracle.invariant, oracle.max_residual
    ));

    // Z_6: <3> is not inside <2>
    let z6 = FiniteAbelianGroup::new(&[6]).unwrap();
    let k = Lattice::parse(&z6, "(3)").unwrap();
    let l = Lattice::parse(&z6, "(2)").unwrap();
    let nested = is_sublattice(&k, &l);
    let refused = extra_invariance_group(&GroupSignal::delta(&z6, 0), &k, &l, 1e-9).is_err();
    passed &= !nested && refused;
    notes.push(format!("Z6 <3> in <2> -> {nested}"));

    // Z_8: T_2 psi = delta_2 + delta_6 is orthogonal to psi = delta_0 + delta_4
    let z8 = FiniteAbelianGroup::new(&[8]).unwrap();
    let k = Lattice::parse(&z8, "(4)").unwrap();
    let l = Lattice::parse(&z8, "(2)").unwrap();
    let one = Complex64::new(1.0, 0.0);
    let psi = GroupSignal::from_fn(&z8, |x| {
        if x % 4 == 0 {
            one
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let zak = extra_invariance_group(&psi, &k, &l, 1e-9)
        .unwrap()
        .invariant;
    let oracle = invariance_oracle(&psi, &k, &l, 1e-9).unwrap();
    // the whole of T_2 psi is left over, so the residual is ||psi||_2 = sqrt 2
    let ok =
        is_sublattice(&k, &l) && !zak && !oracle.invariant && oracle.max_residual == psi.l2_norm();
    passed &= ok;
    notes.push(format!(
        "Z8 delta_0+delta_4 K=<4> L=<2> -> {zak}/{} residual {}",
        oracle.invariant, oracle.max_residual
    ));

    Outcome {
        passed,
        detail: notes.join("; "),
    }
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let run = |name: &str| {
        let (report, elapsed) = timed(|| run_suite(name, &opts));
        (
            report.unwrap_or_else(|e| panic!("suite {name} failed to run: {e}")),
            elapsed,
        )
    };

    let c1 = worked_examples();
    let (line, line_time) = run("line-equivalence");
    let (agreement, agreement_time) = run("agreement");
    let (ids, ids_time) = run("identities");

    let outcomes = [
        ("1 worked examples", c1),
        (
            "2 line criterion equivalence",
            line_equivalence(&line, line_time),
        ),
        (
            "3 group zak/oracle agreement",
            group_agreement(&agreement, agreement_time),
        ),
        ("4 identity suites", identities(&ids, ids_time)),
        ("5 multiplier certificates", certificates(&line, &agreement)),
        ("6 coefficient diagnostics", coefficients(&line, &agreement)),
        ("7 lattice micro-examples", micro_examples()),
    ];
    let mut all = true;
    for (name, o) in &outcomes {
        all &= o.passed;
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
