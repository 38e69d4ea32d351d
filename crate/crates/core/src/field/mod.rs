//! Exact arithmetic in Q(x).

mod parse;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use parse::{parse_poly, parse_ratfunc, parse_rational};
pub use poly::{Poly, Rational};
pub use ratfunc::{rf_arith, rf_eval, rf_normalize, ArithOp, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Shorthand for an integer rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
