use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by series arithmetic, constructors, the lattice oracle and
/// the identity harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant coefficient {constant} is not a unit (expected +1 or -1)")]
    NotAUnit { constant: BigInt },

    #[error("order {got} is too small; {needed} required")]
    OrderTooSmall { needed: usize, got: usize },

    #[error("order must be positive")]
    ZeroOrder,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("divergent Lambert specification: {0}")]
    DivergentSpec(String),

    #[error("product has a vanishing factor 1 - q^0: {0}")]
    ZeroFactor(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("series {0} has no lattice expansion")]
    UnsupportedSeries(String),

    #[error("no sign s in {{+1, -1}} makes {identity} hold through q^{last_index}")]
    NoConsistentSign { identity: String, last_index: usize },

    #[error("both sides of {identity} vanish through q^{last_index}; sign is indeterminate")]
    IndeterminateSign { identity: String, last_index: usize },

    #[error("{0} is not a sign-ambiguous identity")]
    NotSignAmbiguous(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
