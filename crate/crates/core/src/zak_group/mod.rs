//! The lattice Zak transform on finite abelian groups and the extra-invariance
//! decision for principal `K`-invariant spaces.
//!
//! `Z_L(f)(alpha, x) = [G:L] sum_{l in L} f(x + l) (-l, alpha)`.

mod coefficients;
mod criterion;
mod table;

pub use coefficients::{proof_coefficients_group, CoefficientFamily, GroupCoefficients};
pub use criterion::{
    construct_multiplier_group, extra_invariance_group, membership_multiplier, GroupMultiplier,
    GroupVerdict, GroupWitness, MembershipMultiplier,
};
pub use table::{
    isometry_constant, isometry_ratio, periodization_map, quasi_periodicity_residuals,
    refinement_identity_residual, translate_identity_residual, zak_lattice, zak_lattice_spectral,
    ZakTable,
};
