use super::coeff::Coefficient;
use super::monomial::Var;
use super::poly::Polynomial;

/// `T_k` in the normalization `T_0 = 2`, `T_1 = v`, `T_{k+1} = v T_k - T_{k-1}`,
/// as a polynomial in the variable `v`.
pub fn chebyshev_t_in<C: Coefficient>(k: u32, v: Var) -> Polynomial<C> {
    let x = Polynomial::var(v);
    let mut prev = Polynomial::from_i64(2);
    if k == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..k {
        let next = x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_k(d)`.
pub fn chebyshev_t<C: Coefficient>(k: u32) -> Polynomial<C> {
    chebyshev_t_in(k, Var::D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    #[test]
    fn first_values() {
        assert_eq!(chebyshev_t::<i64>(0).to_string(), "2");
        assert_eq!(chebyshev_t::<i64>(1).to_string(), "1*d^1");
        assert_eq!(chebyshev_t::<i64>(2).to_string(), "1*d^2 + -2");
        // T_4 = d T_3 - T_2 with T_3 = d^3 - 3d
        assert_eq!(chebyshev_t::<i64>(4).to_string(), "1*d^4 + -4*d^2 + 2");
    }

    #[test]
    fn value_at_two_is_two() {
        for k in 0..=64 {
            assert_eq!(chebyshev_t::<crate::Coeff>(k).eval_mod(&[2, 0, 0, 0, 0], crate::DEFAULT_PRIME), 2);
        }
    }

    #[test]
    fn in_w() {
        let t: Poly = chebyshev_t_in(3, Var::W);
        assert_eq!(t.to_string(), "1*w^3 + -3*w^1");
    }
}
