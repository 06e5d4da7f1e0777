use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::projection::invariance_oracle;
use crate::group::{
    all_subgroups, inverse_fourier, is_sublattice, CosetSection, FiniteAbelianGroup, GroupSignal,
    Lattice,
};
use crate::zak_group::{construct_multiplier_group, extra_invariance_group, CoefficientFamily};
use crate::Result;

/// Generator distribution used for a trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    /// Independent complex Gaussian values.
    Dense,
    /// A few weighted deltas.
    Sparse,
    /// `psi^` carried by one `[beta]` class over each `alpha`, which forces
    /// invariance.
    Structured,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub sampler: Sampler,
    pub group: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "psi-hash")]
    pub psi_hash: String,
    pub zak_verdict: bool,
    pub oracle_verdict: bool,
    /// Largest projection residual, relative to `||psi||_2`.
    pub max_residual: f64,
    /// Largest multiplier residual over all `[l]` representatives, relative
    /// to `||psi||_2`; present for invariant trials.
    pub multiplier_residual: Option<f64>,
    /// Largest coefficient-inversion residual over all `(alpha, x)`.
    pub inversion_residual: f64,
    /// Largest product-relation spread; present for invariant trials.
    pub coefficient_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementReport {
    pub seed: u64,
    pub trials: u64,
    pub max_order: usize,
    pub tol: f64,
    pub disagreements: Vec<TrialRecord>,
    pub invariant_trials: usize,
    pub structured_invariant_trials: usize,
    pub max_multiplier_residual: f64,
    pub max_inversion_residual: f64,
    pub max_coefficient_residual: f64,
    pub records: Vec<TrialRecord>,
}

/// First 16 hex digits of SHA-256 over the little-endian `(re, im)` bytes.
pub fn psi_hash(psi: &GroupSignal) -> String {
    let mut h = Sha256::new();
    for v in psi.values() {
        h.update(v.re.to_le_bytes());
        h.update(v.im.to_le_bytes());
    }
    h.finalize()
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Shapes `(m_1, ..., m_d)` with every `m_j >= 2`, nondecreasing, and
/// `2 <= prod m_j <= max_order`, grouped by rank.
fn shapes(max_order: usize) -> Vec<Vec<Vec<u64>>> {
    fn extend(
        prefix: &mut Vec<u64>,
        order: usize,
        max_order: usize,
        depth: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        if prefix.len() == depth {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().copied().unwrap_or(2);
        let mut m = start;
        while order * m as usize <= max_order {
            prefix.push(m);
            extend(prefix, order * m as usize, max_order, depth, out);
            prefix.pop();
            m += 1;
        }
    }
    (1..=3)
        .map(|d| {
            let mut out = Vec::new();
            extend(&mut Vec::new(), 1, max_order, d, &mut out);
            out
        })
        .filter(|v| !v.is_empty())
        .collect()
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn sample_psi(
    sampler: Sampler,
    g: &FiniteAbelianGroup,
    k: &Lattice,
    l: &Lattice,
    rng: &mut ChaCha8Rng,
) -> GroupSignal {
    match sampler {
        Sampler::Dense => GroupSignal::from_fn(g, |_| gaussian(rng)),
        Sampler::Sparse => {
            if rng.random_bool(0.2) {
                return GroupSignal::delta(g, 0);
            }
            let mut values = vec![Complex64::new(0.0, 0.0); g.order()];
            for _ in 0..rng.random_range(1..=3) {
                values[rng.random_range(0..g.order())] += gaussian(rng);
            }
            if values.iter().all(|v| v.norm() == 0.0) {
                values[0] = Complex64::new(1.0, 0.0);
            }
            GroupSignal::new(g, values).expect("length matches")
        }
        Sampler::Structured => {
            if rng.random_bool(0.1) {
                return GroupSignal::constant(g, gaussian(rng));
            }
            let kperp = k.annihilator();
            let lperp = l.annihilator();
            let alphas = CosetSection::of(&kperp);
            let betas = CosetSection::within(&kperp, &lperp).expect("nested duals");
            let mut spectrum = vec![Complex64::new(0.0, 0.0); g.order()];
            let fill_prob = rng.random_range(0.3..1.0);
            let mut filled = false;
            for (i, &a) in alphas.rep_indices().iter().enumerate() {
                let last = i + 1 == alphas.len();
                if !rng.random_bool(fill_prob) && !(last && !filled) {
                    continue;
                }
                let b = *betas
                    .rep_indices()
                    .choose(rng)
                    .expect("nonempty transversal");
                let base = g.add(a, b);
                for &gamma in lperp.element_indices() {
                    if rng.random_bool(0.8) {
                        spectrum[g.add(base, gamma)] = gaussian(rng);
                    }
                }
                if spectrum.iter().any(|v| v.norm() > 0.0) {
                    filled = true;
                }
            }
            if !filled {
                spectrum[0] = Complex64::new(1.0, 0.0);
            }
            let hat = GroupSignal::new(g, spectrum).expect("length matches");
            inverse_fourier(&hat)
        }
    }
}

fn run_trial(seed: u64, trial: u64, max_order: usize, tol: f64) -> Result<TrialRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let by_rank = shapes(max_order);
    let rank = by_rank.choose(&mut rng).expect("max_order >= 2");
    let moduli = rank.choose(&mut rng).expect("nonempty rank class");
    let g = FiniteAbelianGroup::new(moduli)?;
    let subs = all_subgroups(&g);
    let l = subs
        .choose(&mut rng)
        .expect("trivial subgroup exists")
        .clone();
    let inside: Vec<&Lattice> = subs.iter().filter(|k| is_sublattice(k, &l)).collect();
    let proper: Vec<&Lattice> = inside.iter().copied().filter(|k| **k != l).collect();
    let k = if !proper.is_empty() && rng.random_bool(0.85) {
        (*proper.choose(&mut rng).expect("nonempty")).clone()
    } else {
        (*inside.choose(&mut rng).expect("L is inside itself")).clone()
    };
    let sampler = match trial % 3 {
        0 => Sampler::Dense,
        1 => Sampler::Sparse,
        _ => Sampler::Structured,
    };
    let psi = sample_psi(sampler, &g, &k, &l, &mut rng);
    let norm = psi.l2_norm();

    let zak = extra_invariance_group(&psi, &k, &l, tol)?;
    let oracle = invariance_oracle(&psi, &k, &l, tol)?;

    let family = CoefficientFamily::new(&psi, &k, &l)?;
    let lreps = CosetSection::of(&l);
    let mut inversion: f64 = 0.0;
    for a in 0..g.order() {
        for &x in lreps.rep_indices() {
            inversion = inversion.max(family.at(a, x).inversion_residual());
        }
    }

    let (multiplier_residual, coefficient_residual) = if zak.invariant {
        let mut worst: f64 = 0.0;
        for &s in CosetSection::within(&l, &k)?.rep_indices() {
            let (_, r) = construct_multiplier_group(&psi, &k, &l, s, tol)?;
            worst = worst.max(r / norm);
        }
        let mut coeff: f64 = 0.0;
        for &a in CosetSection::of(&k.annihilator()).rep_indices() {
            for &x in lreps.rep_indices() {
                for &y in lreps.rep_indices() {
                    coeff = coeff.max(family.coefficient_identity_residual(a, x, y));
                }
            }
        }
        (Some(worst), Some(coeff))
    } else {
        (None, None)
    };

    Ok(TrialRecord {
        trial,
        sampler,
        group: g.to_string(),
        k: k.spec(),
        l: l.spec(),
        psi_hash: psi_hash(&psi),
        zak_verdict: zak.invariant,
        oracle_verdict: oracle.invariant,
        max_residual: oracle.max_residual / norm,
        multiplier_residual,
        inversion_residual: inversion,
        coefficient_residual,
    })
}

/// Compares the Zak-side decision with the projection oracle on `trials`
/// random instances. Trial `t` draws from the ChaCha8 stream `t` of `seed`,
/// so the report does not depend on scheduling.
pub fn agreement_suite(
    seed: u64,
    trials: u64,
    max_order: usize,
    tol: f64,
) -> Result<AgreementReport> {
    let max_order = max_order.clamp(2, crate::group::MAX_ORDER);
    let records = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(seed, t, max_order, tol))
        .collect::<Result<Vec<_>>>()?;
    let fold =
        |f: fn(&TrialRecord) -> Option<f64>| records.iter().filter_map(f).fold(0.0, f64::max);
    Ok(AgreementReport {
        seed,
        trials,
        max_order,
        tol,
        disagreements: records
            .iter()
            .filter(|r| r.zak_verdict != r.oracle_verdict)
            .cloned()
            .collect(),
        invariant_trials: records.iter().filter(|r| r.zak_verdict).count(),
        structured_invariant_trials: records
            .iter()
            .filter(|r| r.zak_verdict && r.sampler == Sampler::Structured)
            .count(),
        max_multiplier_residual: fold(|r| r.multiplier_residual),
        max_inversion_residual: fold(|r| Some(r.inversion_residual)),
        max_coefficient_residual: fold(|r| r.coefficient_residual),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_respect_the_order_cap() {
        let all: Vec<Vec<u64>> = shapes(16).into_iter().flatten().collect();
        assert!(all.contains(&vec![16]));
        assert!(all.contains(&vec![2, 2, 4]));
        assert!(!all.contains(&vec![2, 3, 3]));
        assert!(all.iter().all(|s| s.iter().product::<u64>() <= 16));
    }

    #[test]
    fn small_run_is_reproducible() {
        let a = agreement_suite(7, 12, 24, 1e-9).unwrap();
        let b = agreement_suite(7, 12, 24, 1e-9).unwrap();
        assert_eq!(a, b);
        assert!(a.disagreements.is_empty());
        assert_eq!(
            a.records.iter().map(|r| r.trial).collect::<Vec<_>>(),
            (0..12).collect::<Vec<_>>()
        );
    }

    #[test]
    fn hash_is_stable() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let h = psi_hash(&GroupSignal::delta(&g, 0));
        assert_eq!(h.len(), 16);
        assert_eq!(h, psi_hash(&GroupSignal::delta(&g, 0)));
        assert_ne!(h, psi_hash(&GroupSignal::delta(&g, 1)));
    }
}
