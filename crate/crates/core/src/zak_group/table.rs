use num_complex::Complex64;
use rayon::prelude::*;

use crate::group::{fourier, is_sublattice, CosetSection, GroupSignal, Lattice};
use crate::{Error, Result};

/// `Z_L(f)(alpha, x)` for every `alpha` and every `x` in the lexicographic
/// transversal `C_L`. Other `x` follow from
/// `Z_L(f)(alpha, c + l) = (l, alpha) Z_L(f)(alpha, c)`.
#[derive(Clone, Debug)]
pub struct ZakTable {
    section: CosetSection,
    values: Vec<Complex64>,
}

impl ZakTable {
    fn build(
        f: &GroupSignal,
        l: &Lattice,
        entry: impl Fn(usize, usize) -> Complex64 + Sync,
    ) -> Self {
        let g = f.group();
        let section = CosetSection::of(l);
        let reps = section.rep_indices().to_vec();
        let values = (0..g.order() * reps.len())
            .into_par_iter()
            .map(|i| entry(i / reps.len(), reps[i % reps.len()]))
            .collect();
        Self { section, values }
    }

    pub fn lattice(&self) -> &Lattice {
        self.section.subgroup()
    }

    pub fn section(&self) -> &CosetSection {
        &self.section
    }

    /// Stored value at `alpha` and the `c`-th transversal element.
    pub fn at_rep(&self, alpha: usize, c: usize) -> Complex64 {
        self.values[alpha * self.section.len() + c]
    }

    pub fn get(&self, alpha: usize, x: usize) -> Complex64 {
        let g = self.lattice().parent();
        let c = self
            .section
            .class_of(x)
            .expect("transversal covers the group");
        let l = g.sub(x, self.section.rep_indices()[c]);
        g.pairing(l, alpha) * self.at_rep(alpha, c)
    }

    /// `max_{x in C_L} |Z_L(f)(alpha, x)|`.
    pub fn max_abs_over_x(&self, alpha: usize) -> f64 {
        (0..self.section.len())
            .map(|c| self.at_rep(alpha, c).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Direct evaluation from the definition.
pub fn zak_lattice(f: &GroupSignal, l: &Lattice) -> ZakTable {
    let g = f.group();
    let index = l.index() as f64;
    ZakTable::build(f, l, |a, x| {
        let s: Complex64 = l
            .element_indices()
            .iter()
            .map(|&m| f.value(g.add(x, m)) * g.pairing(m, a).conj())
            .sum();
        s * index
    })
}

/// Frequency-side evaluation:
/// `Z_L(f)(alpha, x) = sum_{gamma in L^perp} f^(alpha + gamma) (x, alpha + gamma)`.
pub fn zak_lattice_spectral(f: &GroupSignal, l: &Lattice) -> ZakTable {
    let g = f.group();
    let fhat = fourier(f);
    let perp = l.annihilator();
    ZakTable::build(f, l, |a, x| {
        perp.element_indices()
            .iter()
            .map(|&gamma| {
                let b = g.add(a, gamma);
                fhat.value(b) * g.pairing(x, b)
            })
            .sum()
    })
}

/// `sum_{alpha in C_{L^perp}} sum_{x in C_L} |Z_L f|^2 = c ||f||^2` holds with
/// `c = |G| [G:L]` under counting measure.
pub fn isometry_constant(l: &Lattice) -> f64 {
    (l.parent().order() * l.index()) as f64
}

/// Measured ratio `sum |Z_L f|^2 / ||f||^2` over `C_{L^perp} x C_L`.
pub fn isometry_ratio(f: &GroupSignal, l: &Lattice) -> f64 {
    let table = zak_lattice(f, l);
    let alphas = CosetSection::of(&l.annihilator());
    let total: f64 = alphas
        .rep_indices()
        .iter()
        .flat_map(|&a| (0..table.section.len()).map(move |c| (a, c)))
        .map(|(a, c)| table.at_rep(a, c).norm_sqr())
        .sum();
    total / f.l2_norm().powi(2)
}

/// Residuals of `L^perp`-periodicity in `alpha` and of the extension rule
/// `Z(alpha, x - l) = (-l, alpha) Z(alpha, x)`, the latter against a direct
/// evaluation at every `x`.
pub fn quasi_periodicity_residuals(f: &GroupSignal, l: &Lattice) -> (f64, f64) {
    let g = f.group();
    let table = zak_lattice(f, l);
    let perp = l.annihilator();
    let index = l.index() as f64;
    let mut periodic: f64 = 0.0;
    let mut extension: f64 = 0.0;
    for a in 0..g.order() {
        for &gamma in perp.element_indices() {
            let b = g.add(a, gamma);
            for c in 0..table.section.len() {
                periodic = periodic.max((table.at_rep(a, c) - table.at_rep(b, c)).norm());
            }
        }
        for x in 0..g.order() {
            let direct: Complex64 = l
                .element_indices()
                .iter()
                .map(|&m| f.value(g.add(x, m)) * g.pairing(m, a).conj())
                .sum::<Complex64>()
                * index;
            extension = extension.max((table.get(a, x) - direct).norm());
        }
    }
    (periodic, extension)
}

fn nested_sections(k: &Lattice, l: &Lattice) -> Result<CosetSection> {
    if !is_sublattice(k, l) {
        return Err(Error::NotNested);
    }
    CosetSection::within(&k.annihilator(), &l.annihilator())
}

/// `max |Z_K(f)(alpha, x) - sum_{[beta] in K^perp/L^perp} Z_L(f)(alpha + beta, x)|`.
pub fn refinement_identity_residual(f: &GroupSignal, k: &Lattice, l: &Lattice) -> Result<f64> {
    let betas = nested_sections(k, l)?;
    let g = f.group();
    let zk = zak_lattice(f, k);
    let zl = zak_lattice(f, l);
    let mut worst: f64 = 0.0;
    for a in 0..g.order() {
        for x in 0..g.order() {
            let rhs: Complex64 = betas
                .rep_indices()
                .iter()
                .map(|&b| zl.get(g.add(a, b), x))
                .sum();
            worst = worst.max((zk.get(a, x) - rhs).norm());
        }
    }
    Ok(worst)
}

/// `max |Z_K(T_l f)(alpha, x) - sum_[beta] (-l, alpha + beta) Z_L(f)(alpha + beta, x)|`.
pub fn translate_identity_residual(
    f: &GroupSignal,
    k: &Lattice,
    l: &Lattice,
    shift: usize,
) -> Result<f64> {
    let betas = nested_sections(k, l)?;
    let g = f.group();
    if !l.contains_index(shift) {
        return Err(Error::NotInLattice(g.element(shift).to_string()));
    }
    let zk = zak_lattice(&f.translate(shift), k);
    let zl = zak_lattice(f, l);
    let mut worst: f64 = 0.0;
    for a in 0..g.order() {
        for x in 0..g.order() {
            let rhs: Complex64 = betas
                .rep_indices()
                .iter()
                .map(|&b| {
                    let ab = g.add(a, b);
                    g.pairing(shift, ab).conj() * zl.get(ab, x)
                })
                .sum();
            worst = worst.max((zk.get(a, x) - rhs).norm());
        }
    }
    Ok(worst)
}

/// `{ f^(alpha + gamma) }_{gamma in K^perp}`, with `gamma` in increasing index
/// order. `fhat` is the Fourier transform of the signal.
pub fn periodization_map(fhat: &GroupSignal, k: &Lattice, alpha: usize) -> Vec<Complex64> {
    let g = fhat.group();
    k.annihilator()
        .element_indices()
        .iter()
        .map(|&gamma| fhat.value(g.add(alpha, gamma)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, FiniteAbelianGroup};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(m: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(m).unwrap()
    }

    fn random_signal(g: &FiniteAbelianGroup, rng: &mut ChaCha8Rng) -> GroupSignal {
        GroupSignal::from_fn(g, |_| {
            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    #[test]
    fn delta_on_z4() {
        let z4 = group(&[4]);
        let l = Lattice::parse(&z4, "2").unwrap();
        let t = zak_lattice(&GroupSignal::delta(&z4, 0), &l);
        for a in 0..4 {
            assert_eq!(t.get(a, 0), Complex64::new(2.0, 0.0));
            assert!((t.get(a, 2) - 2.0 * z4.pairing(2, a).conj()).norm() < 1e-15);
            assert_eq!(t.get(a, 1), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn zero_signal_and_trivial_lattice() {
        let g = group(&[2, 3]);
        let zero = zak_lattice(&GroupSignal::zeros(&g), &Lattice::whole(&g));
        assert!(zero.values.iter().all(|v| *v == Complex64::new(0.0, 0.0)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_signal(&g, &mut rng);
        let t = zak_lattice(&f, &Lattice::trivial(&g));
        for a in 0..6 {
            for x in 0..6 {
                assert!((t.get(a, x) - 6.0 * f.value(x)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn spectral_path_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let z4 = group(&[4]);
        let l = Lattice::parse(&z4, "2").unwrap();
        let d = GroupSignal::delta(&z4, 0);
        assert!(zak_lattice(&d, &l).max_distance(&zak_lattice_spectral(&d, &l)) <= 1e-12);
        let z6 = group(&[6]);
        let l = Lattice::parse(&z6, "3").unwrap();
        let f = random_signal(&z6, &mut rng);
        assert!(zak_lattice(&f, &l).max_distance(&zak_lattice_spectral(&f, &l)) <= 1e-12);
        let zero = GroupSignal::zeros(&z6);
        assert_eq!(zak_lattice_spectral(&zero, &l).max_abs_over_x(0), 0.0);
    }

    #[test]
    fn quasi_periodicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = group(&[2, 6]);
        for l in all_subgroups(&g) {
            let f = random_signal(&g, &mut rng);
            let (p, e) = quasi_periodicity_residuals(&f, &l);
            assert_eq!(p, 0.0);
            assert!(e <= 1e-12);
        }
    }

    #[test]
    fn isometry_constant_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for m in [&[8u64][..], &[2, 6], &[3, 3]] {
            let g = group(m);
            for l in all_subgroups(&g) {
                for _ in 0..3 {
                    let f = random_signal(&g, &mut rng);
                    let c = isometry_constant(&l);
                    assert!((isometry_ratio(&f, &l) - c).abs() <= 1e-12 * c);
                }
            }
        }
    }

    #[test]
    fn refinement_and_translation_on_z8() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z8 = group(&[8]);
        let k = Lattice::parse(&z8, "4").unwrap();
        let l = Lattice::parse(&z8, "2").unwrap();
        let f = random_signal(&z8, &mut rng);
        assert!(refinement_identity_residual(&f, &k, &l).unwrap() <= 1e-12);
        assert!(refinement_identity_residual(&f, &l, &l).unwrap() <= 1e-12);
        for &s in l.element_indices() {
            assert!(translate_identity_residual(&f, &k, &l, s).unwrap() <= 1e-12);
        }
        assert_eq!(
            refinement_identity_residual(&f, &l, &k),
            Err(Error::NotNested)
        );
        assert!(matches!(
            translate_identity_residual(&f, &k, &l, 1),
            Err(Error::NotInLattice(_))
        ));
    }

    #[test]
    fn refinement_exhaustive_z12() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let g = group(&[12]);
        let subs = all_subgroups(&g);
        for k in &subs {
            for l in subs.iter().filter(|l| is_sublattice(k, l)) {
                let f = random_signal(&g, &mut rng);
                assert!(refinement_identity_residual(&f, k, l).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn periodization_map_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let z8 = group(&[8]);
        let k = Lattice::parse(&z8, "2").unwrap();
        let dhat = fourier(&GroupSignal::delta(&z8, 0));
        for a in 0..8 {
            let v = periodization_map(&dhat, &k, a);
            assert!(v.iter().all(|z| (z - 1.0).norm() < 1e-14));
        }
        // f^ = delta at 3: a unit vector exactly when alpha = 3 mod K^perp
        let spike = GroupSignal::delta(&z8, 3);
        let kperp = k.annihilator();
        for a in 0..8 {
            let v = periodization_map(&spike, &k, a);
            let ones = v.iter().filter(|z| **z == Complex64::new(1.0, 0.0)).count();
            let on_orbit = kperp.contains_index(z8.sub(3, a));
            assert_eq!(ones, usize::from(on_orbit));
        }
        let f = random_signal(&z8, &mut rng);
        let fhat = fourier(&f);
        let alphas = CosetSection::of(&kperp);
        let total: f64 = alphas
            .rep_indices()
            .iter()
            .flat_map(|&a| periodization_map(&fhat, &k, a))
            .map(|z| z.norm_sqr())
            .sum();
        assert!((total - fhat.l2_norm().powi(2)).abs() <= 1e-12 * total);
    }
}
