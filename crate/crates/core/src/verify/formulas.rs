use super::{FormulaSpec, FormulaTag, VerifyError};
use crate::diagrams::binomial;
use crate::polyring::{chebyshev_t, chebyshev_t_in, Var};
use crate::{FactoredPoly, Poly};

fn c(n: u32, k: u32) -> u32 {
    binomial(2 * n as u64, (n - k) as u64) as u32
}

fn t(k: u32) -> Poly {
    chebyshev_t(k)
}

fn v(var: Var) -> Poly {
    Poly::var(var)
}

fn int(c: i64) -> Poly {
    Poly::from_i64(c)
}

/// `(-1)^k`
fn sign(k: u32) -> Poly {
    int(if k % 2 == 0 { 1 } else { -1 })
}

/// `T_k(d)^2 - z^2`
fn annular_factor(k: u32) -> Poly {
    t(k).pow(2).sub(&v(Var::Z).pow(2))
}

/// `w (d + z) - 2 x y`
fn crosscap_factor() -> Poly {
    v(Var::W)
        .mul(&v(Var::D).add(&v(Var::Z)))
        .sub(&int(2).mul(&v(Var::X)).mul(&v(Var::Y)))
}

/// `(T_k(d) - (-1)^k z) T_k(w) - 2xy` for odd `k`, `... - 2(2 - z)` for even `k`.
fn chen_middle_factor(k: u32) -> Poly {
    let lead = t(k).sub(&sign(k).mul(&v(Var::Z))).mul(&chebyshev_t_in(k, Var::W));
    let tail = if k % 2 == 1 {
        int(2).mul(&v(Var::X)).mul(&v(Var::Y))
    } else {
        int(2).mul(&int(2).sub(&v(Var::Z)))
    };
    lead.sub(&tail)
}

/// `T_k(d) + (-1)^k z`
fn shifted_factor(k: u32) -> Poly {
    t(k).add(&sign(k).mul(&v(Var::Z)))
}

/// Collects factors, merging equal ones; zero exponents are dropped.
struct Builder(Vec<(Poly, u32)>);

impl Builder {
    fn push(&mut self, f: Poly, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.iter_mut().find(|(g, _)| *g == f) {
            Some((_, acc)) => *acc += e,
            None => self.0.push((f, e)),
        }
    }
}

/// The product formula for `spec`, unexpanded.
pub fn formula(spec: FormulaSpec) -> Result<FactoredPoly, VerifyError> {
    let FormulaSpec { tag, n } = spec;
    let min_n = if tag == FormulaTag::Prop210 { 2 } else { 1 };
    if n < min_n {
        return Err(VerifyError::UnsupportedN { tag, n });
    }
    let mut b = Builder(Vec::new());
    match tag {
        FormulaTag::TheoremB => {
            for k in 1..=n {
                b.push(annular_factor(k), c(n, k));
            }
        }
        FormulaTag::ChenMb => {
            for k in 1..=n {
                b.push(shifted_factor(k), c(n, k));
            }
            for k in 1..=n {
                b.push(chen_middle_factor(k), c(n, k));
            }
            for i in 1..n {
                for k in i + 1..=n {
                    b.push(t(2 * k).sub(&int(2)), c(n, k));
                }
            }
        }
        FormulaTag::ConjMb1 => {
            b.push(v(Var::D).sub(&v(Var::Z)), c(n, 1));
            b.push(crosscap_factor(), c(n, 1));
            for k in 2..=n {
                b.push(annular_factor(k), c(n, k));
            }
            for k in 2..=n {
                b.push(t(2 * k).sub(&int(2)), c(n, k));
            }
        }
        FormulaTag::Prop28 => b.push(v(Var::D).sub(&v(Var::Z)), c(n, 1)),
        FormulaTag::Prop29 | FormulaTag::Prop33 => b.push(crosscap_factor(), c(n, 1)),
        FormulaTag::Prop210 => b.push(chen_middle_factor(2), c(n, 2)),
        FormulaTag::Thm317Factor => {
            for k in 1..=n {
                b.push(shifted_factor(k), c(n, k));
            }
        }
    }
    Ok(FactoredPoly::new(b.0)?)
}
