use thiserror::Error;

use crate::ncalg::Letter;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("unexpected letter `{letter}` ({context})")]
    UnexpectedLetter { letter: Letter, context: &'static str },

    #[error("unbound letter `{0}` during evaluation")]
    UnboundLetter(String),

    #[error("hole letter `{0}` already occurs in the polynomial")]
    HoleOccupied(Letter),

    #[error("no divergence: Div X[h] is not left h-linear (witness unit {unit}, residual {residual})")]
    NotLeftLinear { unit: char, residual: String },

    #[error("no rotor: Rot X[h] is not left h-linear (witness unit {unit}, residual {residual})")]
    NoRotor { unit: char, residual: String },

    #[error("nonzero rotor: {0}")]
    NonzeroRotor(String),

    #[error("nonzero divergence: {0}")]
    NonzeroDivergence(String),

    #[error("not in normal form: {reason}; offending words: {words:?}")]
    NotNormalForm { reason: String, words: Vec<String> },

    #[error("not bidegree full: {0}")]
    NotBf(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("singular matrix")]
    Singular,

    #[error("linear part is not the identity: {0}")]
    NonIdentityLinearPart(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
