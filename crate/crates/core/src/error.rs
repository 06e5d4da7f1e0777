use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("endpoint `{0}` is not an exact rational")]
    NonRationalEndpoint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator is identically zero")]
    EmptyGenerator,

    #[error("generator does not satisfy the extra-invariance criterion")]
    NotInvariant,

    #[error("lattice K is not contained in lattice L")]
    NotNested,

    #[error("translation {0} is not an element of the lattice")]
    NotInLattice(String),

    #[error("time-domain truncation too small: tail bound {bound:e} exceeds 1e-12")]
    TruncationTooSmall { bound: f64 },

    #[error("spectrum breakpoints are not multiples of 1/{0}")]
    GridMismatch(u64),

    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::group::MAX_ORDER)]
    GroupTooLarge(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
