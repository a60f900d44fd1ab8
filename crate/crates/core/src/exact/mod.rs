//! Exact arithmetic substrate: rationals, tagged multivariate polynomials,
//! truncated lambda-series, Taylor/dual evaluators and 2x2 matrices.

pub mod atom;
pub mod mat2;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod series;
pub mod taylor;
pub mod upoly;

pub use atom::{Atom, Family, Role};
pub use mat2::Mat2;
pub use poly::{Monomial, MultiPoly};
pub use rational::{int, rat, Rational};
pub use ring::Ring;
pub use series::LambdaSeries;
pub use taylor::{Dual, Taylor};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("ring-tag mismatch: {0}")]
    RingTag(String),
    #[error("coefficient of lambda^{exp} requested below watermark lambda^{floor}")]
    BelowWatermark { exp: String, floor: String },
    #[error("leading coefficient is not invertible")]
    NonInvertible,
    #[error("series is not monic: {0}")]
    NotMonic(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("not a polynomial in lambda: {0}")]
    NotPolynomial(String),
    #[error("atom {0} has no value")]
    Unbound(Atom),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
