use num_complex::Complex64;
use num_traits::Zero;

use super::table::{zak_lattice, ZakTable};
use crate::group::{
    check_same_group, fourier, is_sublattice, CosetSection, GroupElement, GroupSignal, Lattice,
};
use crate::{Error, Result};

/// Two `[beta]` classes that are both active over the same `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupWitness {
    pub alpha: GroupElement,
    pub beta1: GroupElement,
    pub beta2: GroupElement,
    /// `max_x |Z_L(psi)(alpha + beta_i, x)|` for both classes.
    pub magnitudes: [f64; 2],
}

/// Outcome of the `L`-invariance test for `<psi>_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupVerdict {
    pub invariant: bool,
    pub witnesses: Vec<GroupWitness>,
    /// Active `[beta]` positions (into the `K^perp/L^perp` transversal) for
    /// each `alpha` of the `K^perp` transversal.
    pub active: Vec<Vec<usize>>,
    pub tol: f64,
}

struct Setup {
    table: ZakTable,
    alphas: CosetSection,
    betas: CosetSection,
    threshold: f64,
}

fn setup(psi: &GroupSignal, k: &Lattice, l: &Lattice, tol: f64) -> Result<Setup> {
    if psi.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    check_same_group(psi, k, l)?;
    if !is_sublattice(k, l) {
        return Err(Error::NotNested);
    }
    let kperp = k.annihilator();
    Ok(Setup {
        table: zak_lattice(psi, l),
        betas: CosetSection::within(&kperp, &l.annihilator())?,
        alphas: CosetSection::of(&kperp),
        threshold: tol * psi.l2_norm(),
    })
}

impl Setup {
    /// `(position, magnitude)` of every `[beta]` with `Z_L(psi)(alpha + beta, .)`
    /// above the threshold.
    fn active(&self, alpha: usize) -> Vec<(usize, f64)> {
        let g = self.table.lattice().parent();
        self.betas
            .rep_indices()
            .iter()
            .enumerate()
            .map(|(i, &b)| (i, self.table.max_abs_over_x(g.add(alpha, b))))
            .filter(|&(_, m)| m > self.threshold)
            .collect()
    }
}

/// Decides whether `<psi>_K` is invariant under `L`: for each `alpha`, at
/// most one class `[beta] in K^perp/L^perp` may carry a nonzero
/// `Z_L(psi)(alpha + beta, .)`. "Nonzero" means above `tol * ||psi||_2`.
pub fn extra_invariance_group(
    psi: &GroupSignal,
    k: &Lattice,
    l: &Lattice,
    tol: f64,
) -> Result<GroupVerdict> {
    let s = setup(psi, k, l, tol)?;
    let g = psi.group();
    let mut witnesses = Vec::new();
    let mut active = Vec::new();
    for &a in s.alphas.rep_indices() {
        let on = s.active(a);
        for (i, &(b1, m1)) in on.iter().enumerate() {
            for &(b2, m2) in &on[i + 1..] {
                witnesses.push(GroupWitness {
                    alpha: g.element(a),
                    beta1: g.element(s.betas.rep_indices()[b1]),
                    beta2: g.element(s.betas.rep_indices()[b2]),
                    magnitudes: [m1, m2],
                });
            }
        }
        active.push(on.into_iter().map(|(b, _)| b).collect());
    }
    Ok(GroupVerdict {
        invariant: witnesses.is_empty(),
        witnesses,
        active,
        tol,
    })
}

/// `m_l(alpha) = (-l, alpha + beta)` when `alpha` lies in `S^[beta]`, and `1`
/// on the residual set, for `alpha` in the `K^perp` transversal; extended
/// `K^perp`-periodically.
#[derive(Clone, Debug)]
pub struct GroupMultiplier {
    pub shift: GroupElement,
    alphas: CosetSection,
    betas: CosetSection,
    /// Elements of the `K^perp` transversal in each `S^[beta]`.
    pub beta_sets: Vec<Vec<GroupElement>>,
    pub residual_set: Vec<GroupElement>,
    values: Vec<Complex64>,
}

impl GroupMultiplier {
    pub fn value(&self, alpha: usize) -> Complex64 {
        let c = self
            .alphas
            .class_of(alpha)
            .expect("transversal covers the group");
        self.values[c]
    }

    /// Values on the `K^perp` transversal, in its order.
    pub fn table(&self) -> Vec<(GroupElement, Complex64)> {
        let g = self.alphas.ambient().parent();
        self.alphas
            .rep_indices()
            .iter()
            .zip(&self.values)
            .map(|(&a, &v)| (g.element(a), v))
            .collect()
    }

    pub fn beta_reps(&self) -> Vec<GroupElement> {
        self.betas.reps()
    }
}

/// Builds `m_l` for `shift` in `L` and returns it with the residual of
/// `Z_K(T_l psi)(alpha, x) = m_l(alpha) Z_K(psi)(alpha, x)` over every
/// `alpha` and `x`.
pub fn construct_multiplier_group(
    psi: &GroupSignal,
    k: &Lattice,
    l: &Lattice,
    shift: usize,
    tol: f64,
) -> Result<(GroupMultiplier, f64)> {
    let s = setup(psi, k, l, tol)?;
    let g = psi.group();
    if !l.contains_index(shift) {
        return Err(Error::NotInLattice(g.element(shift).to_string()));
    }
    let mut beta_sets = vec![Vec::new(); s.betas.len()];
    let mut residual_set = Vec::new();
    let mut values = Vec::with_capacity(s.alphas.len());
    for &a in s.alphas.rep_indices() {
        match s.active(a).as_slice() {
            [] => {
                residual_set.push(g.element(a));
                values.push(Complex64::new(1.0, 0.0));
            }
            [(b, _)] => {
                beta_sets[*b].push(g.element(a));
                let ab = g.add(a, s.betas.rep_indices()[*b]);
                values.push(g.pairing(shift, ab).conj());
            }
            _ => return Err(Error::NotInvariant),
        }
    }
    let m = GroupMultiplier {
        shift: g.element(shift),
        alphas: s.alphas,
        betas: s.betas,
        beta_sets,
        residual_set,
        values,
    };
    let zk = zak_lattice(psi, k);
    let zk_shifted = zak_lattice(&psi.translate(shift), k);
    let mut residual: f64 = 0.0;
    for a in 0..g.order() {
        let ma = m.value(a);
        for x in 0..g.order() {
            residual = residual.max((zk_shifted.get(a, x) - ma * zk.get(a, x)).norm());
        }
    }
    Ok((m, residual))
}

/// `m_f` on the `K^perp` transversal with
/// `T_K(f)(alpha) = m_f(alpha) T_K(psi)(alpha)`.
#[derive(Clone, Debug)]
pub struct MembershipMultiplier {
    alphas: CosetSection,
    values: Vec<Complex64>,
    pub max_residual: f64,
}

impl MembershipMultiplier {
    pub fn value(&self, alpha: usize) -> Complex64 {
        self.values[self
            .alphas
            .class_of(alpha)
            .expect("transversal covers the group")]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Decides `f in <psi>_K` fibrewise. Returns `None` when some fibre of `f`
/// is not a multiple of the matching fibre of `psi`.
///
/// Fibres live on the Fourier side, so both thresholds scale with the
/// transformed norms `||f^||_2` and `||psi^||_2`.
pub fn membership_multiplier(
    f: &GroupSignal,
    psi: &GroupSignal,
    k: &Lattice,
    tol: f64,
) -> Result<Option<MembershipMultiplier>> {
    if psi.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    check_same_group(psi, k, k)?;
    if f.group() != psi.group() {
        return Err(Error::InvalidArgument(format!(
            "f lives in {} but the generator lives in {}",
            f.group(),
            psi.group()
        )));
    }
    let g = psi.group();
    let fhat = fourier(f);
    let psihat = fourier(psi);
    let psi_floor = tol * psihat.l2_norm();
    let f_floor = tol * fhat.l2_norm();
    let kperp = k.annihilator();
    let alphas = CosetSection::of(&kperp);
    let mut values = Vec::with_capacity(alphas.len());
    let mut max_residual: f64 = 0.0;
    for &a in alphas.rep_indices() {
        let fv: Vec<Complex64> = kperp
            .element_indices()
            .iter()
            .map(|&c| fhat.value(g.add(a, c)))
            .collect();
        let pv: Vec<Complex64> = kperp
            .element_indices()
            .iter()
            .map(|&c| psihat.value(g.add(a, c)))
            .collect();
        let pnorm_sq: f64 = pv.iter().map(|z| z.norm_sqr()).sum();
        let m = if pnorm_sq.sqrt() <= psi_floor {
            Complex64::zero()
        } else {
            fv.iter()
                .zip(&pv)
                .map(|(x, y)| x * y.conj())
                .sum::<Complex64>()
                / pnorm_sq
        };
        let residual = fv
            .iter()
            .zip(&pv)
            .map(|(x, y)| (x - m * y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > f_floor {
            return Ok(None);
        }
        max_residual = max_residual.max(residual);
        values.push(m);
    }
    Ok(Some(MembershipMultiplier {
        alphas,
        values,
        max_residual,
    }))
}
