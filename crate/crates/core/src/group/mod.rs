//! Finite abelian groups `Z_{m_1} x ... x Z_{m_d}`, their subgroups, and the
//! finite Fourier transform.
//!
//! The dual group is identified with the group itself through
//! `(x, alpha) = exp(2 pi i sum_j x_j alpha_j / m_j)`, so annihilators live in
//! the same coordinates. Haar measure is counting measure, which makes the
//! measure of a fundamental domain of `L` equal to the index `[G : L]`.

mod abelian;
mod fourier;
mod lattice;

pub use abelian::{FiniteAbelianGroup, GroupElement};
pub use fourier::{
    fourier, inverse_fourier, orthogonality_check, orthogonality_residual, poisson_check,
    GroupSignal,
};
pub use lattice::{all_subgroups, enumerate_subgroup, is_sublattice, CosetSection, Lattice};

/// Largest supported group order.
pub const MAX_ORDER: usize = 4096;

/// Rejects lattices that live in a different group than the signal.
pub fn check_same_group(psi: &GroupSignal, k: &Lattice, l: &Lattice) -> crate::Result<()> {
    for (name, lat) in [("K", k), ("L", l)] {
        if lat.parent() != psi.group() {
            return Err(crate::Error::InvalidArgument(format!(
                "lattice {name} lives in {} but the generator lives in {}",
                lat.parent(),
                psi.group()
            )));
        }
    }
    Ok(())
}
