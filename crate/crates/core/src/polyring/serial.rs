//! Canonical text and JSON forms.
//!
//! Text: terms in canonical order joined by `" + "`, each written as
//! `coeff*d^a*z^b*x^c*y^e*w^f` with zero exponents omitted (a constant term is
//! just `coeff`); the zero polynomial is `0`. JSON: a list of
//! `[coeff-string, [a, b, c, e, f]]` pairs in the same order.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::Coefficient;
use super::monomial::{Monomial, Var, NVARS};
use super::poly::Polynomial;
use super::PolyError;

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", c)?;
            if !m.is_one() {
                write!(f, "*{}", m)?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> FromStr for Polynomial<C> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for (k, raw) in s.split(" + ").enumerate() {
            let bad = |msg: &str| PolyError::Parse(format!("term {}: {}", k + 1, msg));
            let mut parts = raw.split('*');
            let coeff: C = parts
                .next()
                .unwrap_or_default()
                .parse()
                .map_err(|_| bad("bad coefficient"))?;
            let mut exps = [0u32; NVARS];
            for factor in parts {
                let (name, e) = factor.split_once('^').ok_or_else(|| bad("expected var^exp"))?;
                let v = Var::from_name(name).ok_or_else(|| bad("unknown variable"))?;
                let e: u32 = e.parse().map_err(|_| bad("bad exponent"))?;
                if e == 0 || exps[v.index()] != 0 {
                    return Err(bad("zero or repeated exponent"));
                }
                exps[v.index()] = e;
            }
            let m = Monomial::new(exps).ok_or_else(|| bad("degree overflow"))?;
            terms.push((m, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<C: Coefficient> Serialize for Polynomial<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(String, [u32; NVARS])> = self
            .terms()
            .iter()
            .map(|(m, c)| (c.to_string(), m.exponents()))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for Polynomial<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(String, [u32; NVARS])> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (c, e) in pairs {
            let c: C = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            let m = Monomial::new(e).ok_or_else(|| D::Error::custom("degree overflow"))?;
            terms.push((m, c));
        }
        let p = Self::from_terms(terms.iter().cloned());
        if p.len() != terms.len() {
            return Err(D::Error::custom("repeated monomial"));
        }
        Ok(p)
    }
}
