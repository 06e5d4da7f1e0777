//! Brute-force ground truth for invariance verdicts, independent of every Zak
//! transform code path: translates are projected onto spans by least squares.

mod agreement;
mod line;
mod projection;

pub use agreement::{agreement_suite, psi_hash, AgreementReport, Sampler, TrialRecord};
pub use line::{line_discretization_oracle, LineOracleVerdict, MAX_DISCRETE_ORDER};
pub use projection::{
    invariance_oracle, span_membership, OracleVerdict, ProjectionReport, SpanProjector,
};
