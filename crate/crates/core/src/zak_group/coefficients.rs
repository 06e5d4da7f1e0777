use num_complex::Complex64;

use super::table::{zak_lattice, ZakTable};
use crate::group::{is_sublattice, CosetSection, GroupSignal, Lattice};
use crate::{Error, Result};

/// Zak values over the `[beta]` classes at one `(alpha, x)` and their
/// character transform over the `[l]` classes:
/// `A_[l] = sum_[beta] (-l, beta) Z_L(psi)(alpha + beta, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupCoefficients {
    pub zak: Vec<Complex64>,
    pub a: Vec<Complex64>,
    /// `(l_i, beta_j)` for transversal elements, row-major in `i`.
    pairing: Vec<Complex64>,
}

impl GroupCoefficients {
    /// `max_beta |Z_L(alpha+beta, x) - |L/K|^-1 sum_l (l, beta) A_[l]|`.
    pub fn inversion_residual(&self) -> f64 {
        let n = self.a.len();
        (0..n)
            .map(|j| {
                let back: Complex64 = (0..n)
                    .map(|i| self.pairing[i * n + j] * self.a[i])
                    .sum::<Complex64>()
                    / n as f64;
                (back - self.zak[j]).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Precomputed state for coefficient families of one `(psi, K, L)`.
#[derive(Clone, Debug)]
pub struct CoefficientFamily {
    table: ZakTable,
    ells: CosetSection,
    betas: CosetSection,
    pairing: Vec<Complex64>,
}

impl CoefficientFamily {
    pub fn new(psi: &GroupSignal, k: &Lattice, l: &Lattice) -> Result<Self> {
        if !is_sublattice(k, l) {
            return Err(Error::NotNested);
        }
        let g = psi.group();
        let ells = CosetSection::within(l, k)?;
        let betas = CosetSection::within(&k.annihilator(), &l.annihilator())?;
        let pairing = ells
            .rep_indices()
            .iter()
            .flat_map(|&e| betas.rep_indices().iter().map(move |&b| g.pairing(e, b)))
            .collect();
        Ok(Self {
            table: zak_lattice(psi, l),
            ells,
            betas,
            pairing,
        })
    }

    pub fn classes(&self) -> usize {
        self.ells.len()
    }

    pub fn at(&self, alpha: usize, x: usize) -> GroupCoefficients {
        let g = self.table.lattice().parent();
        let n = self.classes();
        let zak: Vec<Complex64> = self
            .betas
            .rep_indices()
            .iter()
            .map(|&b| self.table.get(g.add(alpha, b), x))
            .collect();
        let a = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.pairing[i * n + j].conj() * zak[j])
                    .sum()
            })
            .collect();
        GroupCoefficients {
            zak,
            a,
            pairing: self.pairing.clone(),
        }
    }

    /// Largest spread of `A_[l1](alpha, x) A_[l2](alpha, y)` among pairs with
    /// the same `[l1] + [l2]`.
    pub fn coefficient_identity_residual(&self, alpha: usize, x: usize, y: usize) -> f64 {
        let g = self.table.lattice().parent();
        let ax = self.at(alpha, x).a;
        let ay = self.at(alpha, y).a;
        let reps = self.ells.rep_indices();
        let n = reps.len();
        let mut worst: f64 = 0.0;
        for &s in reps {
            let products: Vec<Complex64> = (0..n)
                .map(|i| {
                    let other = self.ells.class_of(g.sub(s, reps[i])).expect("class in L/K");
                    ax[i] * ay[other]
                })
                .collect();
            for i in 0..n {
                for j in i + 1..n {
                    worst = worst.max((products[i] - products[j]).norm());
                }
            }
        }
        worst
    }
}

pub fn proof_coefficients_group(
    psi: &GroupSignal,
    k: &Lattice,
    l: &Lattice,
    alpha: usize,
    x: usize,
) -> Result<GroupCoefficients> {
    Ok(CoefficientFamily::new(psi, k, l)?.at(alpha, x))
}
