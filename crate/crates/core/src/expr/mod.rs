//! Text exchange format for polynomials, vector fields and quaternion
//! matrices.
//!
//! ```text
//! sum     := signed (('+' | '-') signed)*
//! signed  := '-' signed | '+' signed | product
//! product := power ('*' power)*
//! power   := atom ('^' INT)?
//! atom    := INT | INT '/' INT | z | w | h1 | h2 | t | s | i | j | k | '(' sum ')'
//! field   := sum ';' sum
//! matrix  := '[' '[' q ',' q ']' ',' '[' q ',' q ']' ']'
//! ```
//!
//! Multiplication is never implicit. The one exception is inside quaternion
//! literals, where a number may be glued to a unit (`1+i-3/2k`).

mod format;
mod lexer;
mod parser;

use thiserror::Error;

pub use format::{format, format_field, format_matrix, format_quaternion};
pub use parser::{parse, parse_field, parse_matrix, parse_quaternion, parse_rational, MAX_EXPONENT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {}, found {found}", expected.join(" or "))]
    Syntax { line: usize, column: usize, expected: Vec<String>, found: String },

    #[error("line {line}, column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, column: usize, name: String },

    #[error("line {line}, column {column}: zero denominator")]
    ZeroDenominator { line: usize, column: usize },

    #[error("line {line}, column {column}: exponent larger than {max}")]
    ExponentTooLarge { line: usize, column: usize, max: u32 },

    #[error("{0}")]
    Invalid(String),
}
