//! Exact sparse polynomials in the formal variables `d, z, x, y, w`.

mod chebyshev;
mod coeff;
mod factored;
pub mod modular;
mod monomial;
mod poly;
mod serial;

pub use chebyshev::{chebyshev_t, chebyshev_t_in};
pub use coeff::Coefficient;
pub use factored::FactoredPolynomial;
pub use modular::{Montgomery, PrimeField, DEFAULT_PRIME};
pub use monomial::{Monomial, Var, MAX_DEGREE, NVARS};
pub use poly::{Division, Polynomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("substituent must be a polynomial in d only")]
    InvalidSubstituent,
    #[error("factor must be nonzero")]
    ZeroFactor,
    #[error("factor exponent must be positive")]
    ZeroExponent,
    #[error("quotient failed verification multiply")]
    VerificationFailed,
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests;
