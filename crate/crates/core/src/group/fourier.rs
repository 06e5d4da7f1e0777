use num_complex::Complex64;
use num_traits::Zero;

use super::abelian::FiniteAbelianGroup;
use super::lattice::{is_sublattice, CosetSection, Lattice};
use crate::{Error, Result};

/// A complex function on a finite abelian group, one value per element in
/// index order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSignal {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl GroupSignal {
    pub fn new(group: &FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "signal on a group of order {} needs {} values, got {}",
                group.order(),
                group.order(),
                values.len()
            )));
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn from_fn(group: &FiniteAbelianGroup, f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            group: group.clone(),
            values: (0..group.order()).map(f).collect(),
        }
    }

    pub fn zeros(group: &FiniteAbelianGroup) -> Self {
        Self::from_fn(group, |_| Complex64::zero())
    }

    pub fn delta(group: &FiniteAbelianGroup, at: usize) -> Self {
        Self::from_fn(group, |x| {
            if x == at {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            }
        })
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        Self::from_fn(group, |_| c)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> Complex64 {
        self.values[idx]
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `T_l f(x) = f(x - l)`.
    pub fn translate(&self, shift: usize) -> Self {
        let g = &self.group;
        Self::from_fn(g, |x| self.values[g.sub(x, shift)])
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// One-dimensional DFT along every axis; `sign = -1` is the forward transform.
fn separable_dft(f: &GroupSignal, sign: i64) -> GroupSignal {
    let g = f.group();
    let moduli = g.moduli();
    let mut data = f.values().to_vec();
    let mut stride = 1usize;
    for &m in moduli.iter().rev() {
        let m = m as usize;
        let e = g.exponent();
        let step = e / m as u64;
        let block = stride * m;
        let mut out = vec![Complex64::zero(); data.len()];
        for base in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                for k in 0..m {
                    let mut acc = Complex64::zero();
                    for j in 0..m {
                        let turns = (j * k) as u64 % m as u64 * step;
                        let turns = if sign < 0 { (e - turns) % e } else { turns };
                        acc += data[base + inner + j * stride] * g.root(turns);
                    }
                    out[base + inner + k * stride] = acc;
                }
            }
        }
        data = out;
        stride = block;
    }
    GroupSignal {
        group: g.clone(),
        values: data,
    }
}

/// `f^(alpha) = sum_x f(x) (-x, alpha)` with counting measure on `G`.
pub fn fourier(f: &GroupSignal) -> GroupSignal {
    separable_dft(f, -1)
}

/// `f(x) = |G|^-1 sum_alpha f^(alpha) (x, alpha)`.
pub fn inverse_fourier(fhat: &GroupSignal) -> GroupSignal {
    let n = fhat.group().order() as f64;
    let raw = separable_dft(fhat, 1);
    raw.scaled(Complex64::new(1.0 / n, 0.0))
}

/// `| [G:L] sum_{l in L} F(l) - sum_{gamma in L^perp} F^(gamma) |`.
pub fn poisson_check(f: &GroupSignal, l: &Lattice) -> f64 {
    let lhs: Complex64 = l
        .element_indices()
        .iter()
        .map(|&x| f.value(x))
        .sum::<Complex64>()
        * l.index() as f64;
    let fhat = fourier(f);
    let rhs: Complex64 = l
        .annihilator()
        .element_indices()
        .iter()
        .map(|&a| fhat.value(a))
        .sum();
    (lhs - rhs).norm()
}

/// Largest deviation of the two character-sum identities over `L/K` and
/// `K^perp/L^perp` from `|L/K|` (trivial class) or `0` (other classes).
pub fn orthogonality_residual(l: &Lattice, k: &Lattice) -> Result<f64> {
    if !is_sublattice(k, l) {
        return Err(Error::NotNested);
    }
    let g = l.parent();
    let ell = CosetSection::within(l, k)?;
    let beta = CosetSection::within(&k.annihilator(), &l.annihilator())?;
    let size = ell.len() as f64;
    let expected = |trivial: bool| if trivial { size } else { 0.0 };
    let mut worst: f64 = 0.0;
    for &b in beta.rep_indices() {
        let s: Complex64 = ell.rep_indices().iter().map(|&x| g.pairing(x, b)).sum();
        worst = worst.max((s - expected(b == 0)).norm());
    }
    for &x in ell.rep_indices() {
        let s: Complex64 = beta.rep_indices().iter().map(|&b| g.pairing(x, b)).sum();
        worst = worst.max((s - expected(x == 0)).norm());
    }
    Ok(worst)
}

/// Both character-sum identities hold to `1e-12`; `false` when `K` is not
/// inside `L`.
pub fn orthogonality_check(l: &Lattice, k: &Lattice) -> bool {
    orthogonality_residual(l, k).is_ok_and(|r| r <= 1e-12)
}
