use serde::{Deserialize, Serialize};

use super::coeff::Coefficient;
use super::modular::PrimeField;
use super::monomial::NVARS;
use super::poly::Polynomial;
use super::PolyError;

/// A product of polynomial factors raised to positive exponents, kept
/// unexpanded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "C: Coefficient")]
pub struct FactoredPolynomial<C> {
    factors: Vec<(Polynomial<C>, u32)>,
}

impl<C: Coefficient> FactoredPolynomial<C> {
    pub fn new(factors: Vec<(Polynomial<C>, u32)>) -> Result<Self, PolyError> {
        if factors.iter().any(|(f, _)| f.is_zero()) {
            return Err(PolyError::ZeroFactor);
        }
        if factors.iter().any(|(_, e)| *e == 0) {
            return Err(PolyError::ZeroExponent);
        }
        Ok(FactoredPolynomial { factors })
    }

    pub fn one() -> Self {
        FactoredPolynomial {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(Polynomial<C>, u32)] {
        &self.factors
    }

    /// Appends `f^e`; a zero exponent is a no-op.
    pub fn push(&mut self, f: Polynomial<C>, e: u32) -> Result<(), PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroFactor);
        }
        if e > 0 {
            self.factors.push((f, e));
        }
        Ok(())
    }

    pub fn expand(&self) -> Polynomial<C> {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    /// Total degree of the expansion.
    pub fn total_degree(&self) -> u32 {
        self.factors
            .iter()
            .map(|(f, e)| f.total_degree().unwrap_or(0) * e)
            .sum()
    }

    /// Evaluates factor by factor without expanding.
    pub fn eval_mod(&self, point: &[u64; NVARS], field: &PrimeField) -> u64 {
        self.factors.iter().fold(1, |acc, (f, e)| {
            let v = f.eval_mod(point, field.prime());
            field.mul(acc, field.pow(v, *e as u64))
        })
    }
}
