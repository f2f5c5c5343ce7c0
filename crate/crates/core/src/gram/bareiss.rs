//! Fraction-free elimination over an integral domain.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyring::{Coefficient, Polynomial};

/// The operations fraction-free elimination needs.
pub trait IntegralDomain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the division is exact.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl<C: Coefficient> IntegralDomain for Polynomial<C> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        Polynomial::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Polynomial::sub(self, o)
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_one() {
            return Some(self.clone());
        }
        self.div_exact_unchecked(o)
    }
}

impl IntegralDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Coefficient::exact_div(self, o)
    }
}

/// A pivot did not divide the next minor, i.e. Sylvester's identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nondivisible {
    pub step: usize,
    pub row: usize,
    pub col: usize,
}

/// Determinant by Bareiss elimination. Pivots are the first nonzero entry of
/// the current column in row order; a zero column ends early with 0.
pub fn bareiss_det<R: IntegralDomain>(mut a: Vec<Vec<R>>) -> Result<R, Nondivisible> {
    let n = a.len();
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(R::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for (off, row) in rest.iter_mut().enumerate() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let t = pivot_row[k].mul(&row[j]);
                let t = if lead.is_zero() {
                    t
                } else {
                    t.sub(&lead.mul(&pivot_row[j]))
                };
                row[j] = t.div_exact(&prev).ok_or(Nondivisible {
                    step: k,
                    row: k + 1 + off,
                    col: j,
                })?;
            }
            row[k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = vec![vec![p("1*d^1"), p("1*z^1")], vec![p("1*z^1"), p("1*d^1")]];
        assert_eq!(bareiss_det(m).unwrap(), p("1*d^2 + -1*z^2"));
    }

    #[test]
    fn one_by_one_and_empty() {
        assert_eq!(bareiss_det(vec![vec![p("1*d^3")]]).unwrap(), p("1*d^3"));
        assert_eq!(bareiss_det::<Poly>(vec![]).unwrap(), Poly::one());
    }

    #[test]
    fn integer_matrices_with_pivoting() {
        let b = |v: i64| BigInt::from(v);
        let m = vec![
            vec![b(0), b(2), b(1)],
            vec![b(3), b(1), b(4)],
            vec![b(1), b(5), b(9)],
        ];
        // cofactor expansion along the first row: -2*(27-4) + (15-1)
        assert_eq!(bareiss_det(m).unwrap(), b(-32));
        let singular = vec![vec![b(1), b(2)], vec![b(2), b(4)]];
        assert_eq!(bareiss_det(singular).unwrap(), b(0));
        let zero_col = vec![vec![b(0), b(2)], vec![b(0), b(4)]];
        assert_eq!(bareiss_det(zero_col).unwrap(), b(0));
    }
}
