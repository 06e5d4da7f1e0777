use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::group::{is_sublattice, CosetSection, GroupElement, GroupSignal, Lattice};
use crate::{Error, Result};

/// Relative singular-value cutoff for the Gram pseudo-inverse.
const PINV_CUTOFF: f64 = 1e-12;

/// Least-squares projection of a target onto a span.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionReport {
    /// `||target - sum_i coefficients_i basis_i||_2`, recomputed after the solve.
    pub residual: f64,
    pub coefficients: Vec<Complex64>,
    /// `residual <= tol ||target||_2`.
    pub decision: bool,
}

/// Orthogonal projector onto `span(basis)` through the Gram system
/// `G c = B^* t`, solved with a pseudo-inverse so rank-deficient families
/// need no special handling.
#[derive(Clone, Debug)]
pub struct SpanProjector {
    basis: DMatrix<Complex64>,
    gram_pinv: DMatrix<Complex64>,
}

impl SpanProjector {
    pub fn new(basis: &[GroupSignal]) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::InvalidArgument("span basis is empty".into()));
        };
        let n = first.group().order();
        if basis.iter().any(|b| b.values().len() != n) {
            return Err(Error::InvalidArgument(
                "basis vectors differ in length".into(),
            ));
        }
        let b = DMatrix::from_fn(n, basis.len(), |r, c| basis[c].value(r));
        // The Gram matrix is Hermitian PSD, so its eigenvalues are its
        // singular values. nalgebra's general SVD misreports the spectrum of
        // exactly rank-deficient matrices such as a constant Gram block.
        let gram = b.adjoint() * &b;
        let eig = gram.symmetric_eigen();
        let cutoff = PINV_CUTOFF * eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
        let inverted = DVector::from_iterator(
            eig.eigenvalues.len(),
            eig.eigenvalues.iter().map(|&v| {
                if v > cutoff {
                    Complex64::new(1.0 / v, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        );
        let vectors = &eig.eigenvectors;
        let gram_pinv = vectors * DMatrix::from_diagonal(&inverted) * vectors.adjoint();
        Ok(Self {
            basis: b,
            gram_pinv,
        })
    }

    pub fn project(&self, target: &GroupSignal, tol: f64) -> ProjectionReport {
        let t = DVector::from_column_slice(target.values());
        let rhs = self.basis.adjoint() * &t;
        let coeffs = &self.gram_pinv * rhs;
        let residual = (&t - &self.basis * &coeffs).norm();
        ProjectionReport {
            residual,
            coefficients: coeffs.iter().copied().collect(),
            decision: residual <= tol * target.l2_norm(),
        }
    }
}

pub fn span_membership(
    target: &GroupSignal,
    basis: &[GroupSignal],
    tol: f64,
) -> Result<ProjectionReport> {
    Ok(SpanProjector::new(basis)?.project(target, tol))
}

/// Projection verdict for `<psi>_K` under `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleVerdict {
    pub invariant: bool,
    /// One report per `[l] in L/K`, keyed by its lexicographically minimal
    /// representative.
    pub reports: Vec<(GroupElement, ProjectionReport)>,
    pub max_residual: f64,
}

/// `<psi>_K` is `L`-invariant iff `T_l psi in span{T_k psi : k in K}` for
/// every `l` in a transversal of `L/K`.
pub fn invariance_oracle(
    psi: &GroupSignal,
    k: &Lattice,
    l: &Lattice,
    tol: f64,
) -> Result<OracleVerdict> {
    if psi.is_zero() {
        return Err(Error::EmptyGenerator);
    }
    crate::group::check_same_group(psi, k, l)?;
    if !is_sublattice(k, l) {
        return Err(Error::NotNested);
    }
    let g = psi.group();
    let basis: Vec<GroupSignal> = k
        .element_indices()
        .iter()
        .map(|&s| psi.translate(s))
        .collect();
    let projector = SpanProjector::new(&basis)?;
    let reports: Vec<(GroupElement, ProjectionReport)> = CosetSection::within(l, k)?
        .rep_indices()
        .iter()
        .map(|&s| (g.element(s), projector.project(&psi.translate(s), tol)))
        .collect();
    Ok(OracleVerdict {
        invariant: reports.iter().all(|(_, r)| r.decision),
        max_residual: reports.iter().map(|(_, r)| r.residual).fold(0.0, f64::max),
        reports,
    })
}
