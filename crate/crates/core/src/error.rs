use thiserror::Error;

use crate::cards::CardViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition parts must be positive, got {0:?}")]
    NonPositivePart(Vec<u32>),

    #[error("invalid card: {0}")]
    InvalidCard(CardViolation),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid card sequence: {0}")]
    InvalidSequence(String),

    #[error("series profiles differ: {left} vs {right}")]
    ProfileMismatch { left: String, right: String },

    #[error("series constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("exponent {exponents:?} lies outside the truncation box {orders:?}")]
    OutOfBox { exponents: Vec<u32>, orders: Vec<u32> },

    #[error("unknown or out-of-range variable: {0}")]
    BadVariable(String),

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("{what} budget exceeded: need {needed}, limit {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
