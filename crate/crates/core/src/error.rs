use thiserror::Error;

use crate::series::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(
        "coefficient at q^{n} requested but the series is only certified through q^{valid_to}"
    )]
    QueryBeyondPrecision { n: i64, valid_to: i64 },

    #[error("ring mismatch: {left:?} vs {right:?}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("leading coefficient at q^{exponent} is not a unit")]
    NonUnitLeadingCoefficient { exponent: i64 },

    #[error("exponent arithmetic overflowed")]
    ExponentOverflow,

    #[error("eta quotient prefactor sum {weighted_sum} is not divisible by 24")]
    FractionalPrefactor { weighted_sum: i64 },

    #[error("invalid eta quotient: {0}")]
    InvalidEtaQuotient(String),

    #[error("level {0} is not one of 2, 3, 4, 5, 7, 13")]
    UnsupportedLevel(u32),

    #[error("integer expansion to q^{requested} exceeds the configured limit q^{limit}")]
    IntPrecisionLimit { requested: i64, limit: i64 },

    #[error("unsupported claim family: {0}")]
    UnsupportedFamily(String),

    #[error("malformed series data: {0}")]
    Malformed(String),
}
