//! Exact Gram matrices and Gram determinants for crossingless-connection
//! bases of the annulus and the Möbius band.
//!
//! The pipeline is: enumerate a diagram basis ([`diagrams`]), glue pairs of
//! diagrams and classify the closed curves they form ([`pairing`]), assemble
//! the Gram matrix over `Z[d, z, x, y, w]` and take determinants or ranks
//! ([`gram`]), then compare against closed product formulas ([`verify`]).
//!
//! Polynomial and elimination code is generic over the coefficient scalar
//! ([`polyring::Coefficient`]); the aliases below fix the production choice
//! of arbitrary-precision integers.

pub mod diagrams;
pub mod pairing;
pub mod gram;
pub mod polyring;
pub mod verify;

pub use polyring::{DEFAULT_PRIME, Var};

/// Production coefficient ring.
pub type Coeff = num_bigint::BigInt;
/// Polynomials over [`Coeff`].
pub type Poly = polyring::Polynomial<Coeff>;
/// Factored polynomials over [`Coeff`].
pub type FactoredPoly = polyring::FactoredPolynomial<Coeff>;
