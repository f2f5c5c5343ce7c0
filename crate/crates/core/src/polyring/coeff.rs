//! Coefficient scalars for [`Polynomial`](super::Polynomial).
//!
//! Everything above this layer is written against [`Coefficient`], so the
//! same polynomial and elimination code runs over arbitrary-precision
//! integers (the production choice) and over machine integers (cheap tests).

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// An exact integral-domain scalar with divisibility tests.
pub trait Coefficient:
    Clone
    + Eq
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + Zero
    + One
    + From<i64>
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `Some(q)` with `q * rhs == self`, or `None` when no such `q` exists.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    /// Representative in `[0, prime)`.
    fn residue(&self, prime: u64) -> u64;

    fn is_negative(&self) -> bool;
}

impl Coefficient for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    fn residue(&self, prime: u64) -> u64 {
        let (sign, digits) = self.to_u64_digits();
        let p = prime as u128;
        let mut acc: u128 = 0;
        for &limb in digits.iter().rev() {
            acc = ((acc << 64) | limb as u128) % p;
        }
        let r = acc as u64;
        if sign == Sign::Minus && r != 0 {
            prime - r
        } else {
            r
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

macro_rules! machine_coefficient {
    ($t:ty) => {
        impl Coefficient for $t {
            fn mul_ref(&self, rhs: &Self) -> Self {
                self.checked_mul(*rhs)
                    .expect(concat!(stringify!($t), " coefficient overflow"))
            }

            fn exact_div(&self, rhs: &Self) -> Option<Self> {
                if *rhs == 0 || self % rhs != 0 {
                    None
                } else {
                    Some(self / rhs)
                }
            }

            fn residue(&self, prime: u64) -> u64 {
                (*self as i128).rem_euclid(prime as i128) as u64
            }

            fn is_negative(&self) -> bool {
                *self < 0
            }
        }
    };
}

machine_coefficient!(i64);
machine_coefficient!(i128);
