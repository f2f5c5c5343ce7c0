//! Packed exponent vectors over the five formal variables.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of formal variables.
pub const NVARS: usize = 5;

/// Largest total degree a [`Monomial`] can carry.
pub const MAX_DEGREE: u32 = (1 << FIELD_BITS) - 1;

const FIELD_BITS: u32 = 10;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;
const TOTAL_SHIFT: u32 = FIELD_BITS * NVARS as u32;

/// The formal variables, listed in precedence order `d > z > x > y > w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Var {
    D,
    Z,
    X,
    Y,
    W,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::D, Var::Z, Var::X, Var::Y, Var::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::D => "d",
            Var::Z => "z",
            Var::X => "x",
            Var::Y => "y",
            Var::W => "w",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    fn shift(self) -> u32 {
        FIELD_BITS * (NVARS - 1 - self.index()) as u32
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A monomial `d^a z^b x^c y^e w^f`.
///
/// The exponents live in 10-bit fields below a 10-bit total-degree field, so
/// comparing the packed words is exactly graded lexicographic order with
/// `d > z > x > y > w`. Every exponent is bounded by the total degree, hence
/// only the total needs an overflow check.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// Builds a monomial from `[e_d, e_z, e_x, e_y, e_w]`; `None` if the total
    /// degree exceeds [`MAX_DEGREE`].
    pub fn new(exps: [u32; NVARS]) -> Option<Monomial> {
        let total: u32 = exps.iter().sum();
        if total > MAX_DEGREE {
            return None;
        }
        let mut packed = (total as u64) << TOTAL_SHIFT;
        for (v, e) in Var::ALL.into_iter().zip(exps) {
            packed |= (e as u64) << v.shift();
        }
        Some(Monomial(packed))
    }

    pub fn var(v: Var) -> Monomial {
        let mut exps = [0; NVARS];
        exps[v.index()] = 1;
        Monomial::new(exps).unwrap()
    }

    pub fn exponent(self, v: Var) -> u32 {
        ((self.0 >> v.shift()) & FIELD_MASK) as u32
    }

    pub fn exponents(self) -> [u32; NVARS] {
        Var::ALL.map(|v| self.exponent(v))
    }

    pub fn degree(self) -> u32 {
        (self.0 >> TOTAL_SHIFT) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        if self.degree() + other.degree() > MAX_DEGREE {
            None
        } else {
            Some(Monomial(self.0 + other.0))
        }
    }

    /// Panics if the product overflows [`MAX_DEGREE`].
    pub fn mul(self, other: Monomial) -> Monomial {
        self.checked_mul(other)
            .unwrap_or_else(|| panic!("monomial degree exceeds {MAX_DEGREE}"))
    }

    pub fn divides(self, other: Monomial) -> bool {
        Var::ALL
            .into_iter()
            .all(|v| self.exponent(v) <= other.exponent(v))
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0 - self.0))
        } else {
            None
        }
    }

    /// Same monomial with the exponent of `v` cleared.
    pub fn without(self, v: Var) -> Monomial {
        let e = self.exponent(v) as u64;
        Monomial(self.0 - (e << v.shift()) - (e << TOTAL_SHIFT))
    }

    /// Same monomial with the exponent of `v` replaced.
    pub fn with_exponent(self, v: Var, e: u32) -> Option<Monomial> {
        let mut exps = self.exponents();
        exps[v.index()] = e;
        Monomial::new(exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:?})", self.exponents())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}^{}", v, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_order_is_grlex() {
        let m = |e| Monomial::new(e).unwrap();
        // higher total degree wins
        assert!(m([0, 0, 0, 0, 2]) > m([1, 0, 0, 0, 0]));
        // d beats z at equal degree
        assert!(m([1, 0, 0, 0, 0]) > m([0, 1, 0, 0, 0]));
        assert!(m([0, 1, 1, 0, 0]) > m([0, 1, 0, 0, 1]));
        assert!(m([0, 0, 0, 1, 0]) > m([0, 0, 0, 0, 1]));
    }

    #[test]
    fn exponent_roundtrip_and_mul() {
        let a = Monomial::new([3, 1, 0, 2, 7]).unwrap();
        assert_eq!(a.exponents(), [3, 1, 0, 2, 7]);
        assert_eq!(a.degree(), 13);
        let b = Monomial::new([1, 0, 4, 0, 0]).unwrap();
        assert_eq!(a.mul(b).exponents(), [4, 1, 4, 2, 7]);
        assert_eq!(b.div(a.mul(b)), Some(a));
        assert_eq!(a.div(b), None);
        assert_eq!(a.without(Var::W).exponents(), [3, 1, 0, 2, 0]);
        assert_eq!(a.with_exponent(Var::X, 5).unwrap().exponents(), [3, 1, 5, 2, 7]);
    }

    #[test]
    fn overflow_is_detected() {
        assert!(Monomial::new([MAX_DEGREE, 0, 0, 0, 0]).is_some());
        assert!(Monomial::new([MAX_DEGREE, 1, 0, 0, 0]).is_none());
        let big = Monomial::new([600, 0, 0, 0, 0]).unwrap();
        assert!(big.checked_mul(big).is_none());
    }
}
