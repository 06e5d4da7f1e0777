use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::multiplier::{construct_multiplier_line, MultiplierConstruction};
use crate::spectra::{IntervalUnion, Spectrum};
use crate::{Error, Rational, Result};

/// A pair of branches whose Zak supports overlap on a set of positive measure.
#[derive(Clone, Debug, PartialEq)]
pub struct LineWitness {
    pub p: u32,
    pub q: u32,
    pub overlap: IntervalUnion,
}

/// Outcome of a `(1/N)Z` extra-invariance test.
///
/// `invariant` holds exactly when `witnesses` is empty. Witnesses from
/// [`extra_invariance_line`] index branches `p < q` and carry overlaps in
/// `[0, 1)`. Witnesses from [`periodization_criterion_line`] carry `p = 0`, `q` the
/// shift, and an overlap inside `[0, N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceVerdict {
    pub n: u32,
    pub invariant: bool,
    pub witnesses: Vec<LineWitness>,
    pub certificate: Option<MultiplierConstruction>,
}

fn check_args(s: &Spectrum, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "N must be at least 2 (got {n})"
        )));
    }
    if s.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    Ok(())
}

/// `E_p = { xi in [0,1) : P_{psi,N}(xi + p) > 0 }` for `p = 0..N`.
///
/// For fixed `xi`, `x -> Z_N(psi)(x, xi + p)` is a finite exponential sum with
/// distinct frequencies `xi + p + N k` and coefficients `psi^(xi + p + N k)`,
/// so it vanishes for almost every `x` iff every coefficient vanishes. `E_p`
/// is therefore the set of `xi` where the `p`-th branch is not a.e. zero in `x`.
pub fn folded_supports(s: &Spectrum, n: u32) -> Vec<IntervalUnion> {
    let folded = s.periodization_support(n);
    (0..n)
        .map(|p| {
            let p = Rational::from_integer(BigInt::from(p));
            let one = Rational::one();
            folded.clip(&p, &(&p + &one)).translate(&-p)
        })
        .collect()
}

/// Decides whether `<psi>_Z` is `(1/N)Z`-invariant from the Zak transform:
/// invariant iff `Z_N(psi)(x, xi+p) Z_N(psi)(y, xi+q) = 0` a.e. for all
/// `p != q`, i.e. iff the branch supports `E_p` are pairwise a.e. disjoint.
pub fn extra_invariance_line(s: &Spectrum, n: u32) -> Result<InvarianceVerdict> {
    check_args(s, n)?;
    let branches = folded_supports(s, n);
    let mut witnesses = Vec::new();
    for p in 0..n as usize {
        for q in p + 1..n as usize {
            let overlap = branches[p].intersection(&branches[q]);
            if overlap.measure().is_positive() {
                witnesses.push(LineWitness {
                    p: p as u32,
                    q: q as u32,
                    overlap,
                });
            }
        }
    }
    let invariant = witnesses.is_empty();
    let certificate = if invariant {
        Some(construct_multiplier_line(s, n)?)
    } else {
        None
    };
    Ok(InvarianceVerdict {
        n,
        invariant,
        witnesses,
        certificate,
    })
}

/// The periodization test: invariant iff `P_{psi,N}(xi) P_{psi,N}(xi + p) = 0`
/// for a.e. `xi` and every `p = 1..N-1`.
pub fn periodization_criterion_line(s: &Spectrum, n: u32) -> Result<InvarianceVerdict> {
    check_args(s, n)?;
    let period = Rational::from_integer(BigInt::from(n));
    let support = s.periodization_support(n);
    let mut witnesses = Vec::new();
    for shift in 1..n {
        let back = Rational::from_integer(BigInt::from(shift));
        // { xi : P(xi + p) > 0 } = support - p, taken mod N
        let moved = support.translate(&-back).fold(&period);
        let overlap = support.intersection(&moved);
        if overlap.measure() > Rational::zero() {
            witnesses.push(LineWitness {
                p: 0,
                q: shift,
                overlap,
            });
        }
    }
    Ok(InvarianceVerdict {
        n,
        invariant: witnesses.is_empty(),
        witnesses,
        certificate: None,
    })
}
