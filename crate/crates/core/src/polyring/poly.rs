use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coefficient;
use super::monomial::{Monomial, Var, NVARS};
use super::PolyError;

/// A sparse polynomial in `d, z, x, y, w` with exact coefficients.
///
/// Terms are kept strictly decreasing in graded lexicographic order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: Vec<(Monomial, C)>,
}

/// Outcome of [`Polynomial::exact_div`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division<C> {
    Exact(Polynomial<C>),
    /// `p = q * quotient + remainder` with a nonzero remainder.
    NotDivisible {
        quotient: Polynomial<C>,
        remainder: Polynomial<C>,
    },
}

impl<C> Division<C> {
    pub fn into_exact(self) -> Option<Polynomial<C>> {
        match self {
            Division::Exact(q) => Some(q),
            Division::NotDivisible { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Division::Exact(_))
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(C::from(c))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    /// Coefficient-one monomial from an exponent vector; panics on degree overflow.
    pub fn monomial(exps: [u32; NVARS]) -> Self {
        Self::term(
            C::one(),
            Monomial::new(exps).expect("monomial degree overflow"),
        )
    }

    /// Canonicalizes an arbitrary list of terms: sorts, merges like terms and
    /// drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut terms: Vec<(Monomial, C)> = terms.into_iter().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    /// Trusts that `terms` is already canonical.
    fn from_sorted(terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Whether `v` occurs in any term.
    pub fn involves(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(v) > 0)
    }

    /// The single monomial when this is `1 * m`.
    pub fn as_unit_monomial(&self) -> Option<Monomial> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() => Some(*m),
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(self.terms.iter().map(|(m, a)| (*m, a.mul_ref(c))).collect())
    }

    pub fn mul_monomial(&self, c: &C, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(
            self.terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), a.mul_ref(c)))
                .collect(),
        )
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &C| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let mut c = a[i].1.clone();
                    if negate_other {
                        c -= &b[j].1;
                    } else {
                        c += &b[j].1;
                    }
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, fix(c))));
        Self::from_sorted(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        Self::from_sorted(self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }

    /// Product by heap merge of the partial rows, producing terms in order.
    pub fn mul(&self, other: &Self) -> Self {
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        match short.len() {
            0 => return Self::zero(),
            1 => return long.mul_monomial(&short.terms[0].1, short.terms[0].0),
            _ => {}
        }
        let (f, g) = (&short.terms, &long.terms);
        let mut heap: BinaryHeap<(Monomial, std::cmp::Reverse<usize>, usize)> = f
            .iter()
            .enumerate()
            .map(|(i, (m, _))| (m.mul(g[0].0), std::cmp::Reverse(i), 0))
            .collect();
        let mut out: Vec<(Monomial, C)> = Vec::new();
        while let Some((m, std::cmp::Reverse(i), j)) = heap.pop() {
            let prod = f[i].1.mul_ref(&g[j].1);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &prod,
                _ => {
                    if matches!(out.last(), Some((_, c)) if c.is_zero()) {
                        out.pop();
                    }
                    out.push((m, prod));
                }
            }
            if j + 1 < g.len() {
                heap.push((f[i].0.mul(g[j + 1].0), std::cmp::Reverse(i), j + 1));
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Self::from_sorted(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division by `q` in graded lexicographic order.
    ///
    /// Uses a heap over the pending products `q_i * s_j` so the cost is
    /// proportional to `|q| * |quotient|`, not to the size of intermediate
    /// remainders. Exact quotients are confirmed by multiplying back.
    pub fn exact_div(&self, q: &Self) -> Result<Division<C>, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (quotient, remainder) = self.div_rem_heap(q);
        if !remainder.is_zero() {
            return Ok(Division::NotDivisible {
                quotient,
                remainder,
            });
        }
        if &quotient.mul(q) != self {
            // the heap division cannot disagree with the product; reaching
            // this is an arithmetic bug
            return Err(PolyError::VerificationFailed);
        }
        Ok(Division::Exact(quotient))
    }

    /// Exact division without the verification product; `None` if `q` does
    /// not divide. Callers that certify results another way use this.
    pub fn div_exact_unchecked(&self, q: &Self) -> Option<Self> {
        if q.is_zero() {
            return None;
        }
        let (quotient, remainder) = self.div_rem_heap_early_exit(q)?;
        remainder.is_zero().then_some(quotient)
    }

    fn div_rem_heap(&self, q: &Self) -> (Self, Self) {
        self.div_rem_impl(q, false).expect("full division always completes")
    }

    fn div_rem_heap_early_exit(&self, q: &Self) -> Option<(Self, Self)> {
        self.div_rem_impl(q, true)
    }

    fn div_rem_impl(&self, q: &Self, stop_on_remainder: bool) -> Option<(Self, Self)> {
        let (lm, lc) = q.terms[0].clone();
        let qt = &q.terms;
        let mut quot: Vec<(Monomial, C)> = Vec::new();
        let mut rem: Vec<(Monomial, C)> = Vec::new();
        // heap entries (q_i * s_j monomial, i, j) for i >= 1
        let mut heap: BinaryHeap<(Monomial, usize, usize)> = BinaryHeap::new();
        let mut k = 0;
        let p = &self.terms;
        loop {
            let next_p = p.get(k).map(|t| t.0);
            let next_h = heap.peek().map(|e| e.0);
            let m = match (next_p, next_h) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.max(b),
            };
            let mut c = if next_p == Some(m) {
                k += 1;
                p[k - 1].1.clone()
            } else {
                C::zero()
            };
            while let Some(&(hm, i, j)) = heap.peek() {
                if hm != m {
                    break;
                }
                heap.pop();
                c -= &qt[i].1.mul_ref(&quot[j].1);
                if i + 1 < qt.len() {
                    heap.push((qt[i + 1].0.mul(quot[j].0), i + 1, j));
                }
            }
            if c.is_zero() {
                continue;
            }
            let step = lm.div(m).and_then(|mm| c.exact_div(&lc).map(|cc| (mm, cc)));
            match step {
                Some((mm, cc)) => {
                    quot.push((mm, cc));
                    if qt.len() > 1 {
                        heap.push((qt[1].0.mul(mm), 1, quot.len() - 1));
                    }
                }
                None => {
                    if stop_on_remainder {
                        return None;
                    }
                    rem.push((m, c));
                }
            }
        }
        Some((Self::from_sorted(quot), Self::from_sorted(rem)))
    }

    /// Replaces `z` by `s`, which must be a polynomial in `d` alone.
    pub fn substitute_z(&self, s: &Self) -> Result<Self, PolyError> {
        if [Var::Z, Var::X, Var::Y, Var::W].into_iter().any(|v| s.involves(v)) {
            return Err(PolyError::InvalidSubstituent);
        }
        self.substitute(Var::Z, s)
    }

    /// Replaces `v` by `s` when `s` does not itself involve `v`.
    pub fn substitute(&self, v: Var, s: &Self) -> Result<Self, PolyError> {
        if s.involves(v) {
            return Err(PolyError::InvalidSubstituent);
        }
        let top = self.degree_in(v) as usize;
        let mut powers = vec![Self::one()];
        for k in 1..=top {
            powers.push(powers[k - 1].mul(s));
        }
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            buckets[m.exponent(v) as usize].push((m.without(v), c.clone()));
        }
        let mut acc = Self::zero();
        for (k, bucket) in buckets.into_iter().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            acc = acc.add(&Self::from_terms(bucket).mul(&powers[k]));
        }
        Ok(acc)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.exponents();
            e.swap(a.index(), b.index());
            (Monomial::new(e).unwrap(), c.clone())
        }))
    }

    /// Value at `point` (residues for `d, z, x, y, w`) modulo `modulus`.
    pub fn eval_mod(&self, point: &[u64; NVARS], modulus: u64) -> u64 {
        assert!(modulus >= 2, "modulus must be at least 2");
        let m = modulus as u128;
        let tables = PowerTables::new(self, point, modulus);
        let mut acc: u128 = 0;
        for (mono, c) in &self.terms {
            let mut t = c.residue(modulus) as u128;
            for v in Var::ALL {
                t = t * tables.get(v, mono.exponent(v)) as u128 % m;
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }
}

struct PowerTables {
    tables: [Vec<u64>; NVARS],
}

impl PowerTables {
    fn new<C: Coefficient>(p: &Polynomial<C>, point: &[u64; NVARS], modulus: u64) -> Self {
        let tables = Var::ALL.map(|v| {
            let top = p.degree_in(v) as usize;
            let base = point[v.index()] % modulus;
            let mut t = Vec::with_capacity(top + 1);
            t.push(1 % modulus);
            for k in 1..=top {
                t.push(((t[k - 1] as u128 * base as u128) % modulus as u128) as u64);
            }
            t
        });
        PowerTables { tables }
    }

    fn get(&self, v: Var, e: u32) -> u64 {
        self.tables[v.index()][e as usize]
    }
}

impl<C: Coefficient> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: fmt::Debug> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<'a, C: Coefficient> Add for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        Polynomial::add(self, rhs)
    }
}

impl<'a, C: Coefficient> Sub for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        Polynomial::sub(self, rhs)
    }
}

impl<'a, C: Coefficient> Mul for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        Polynomial::mul(self, rhs)
    }
}

impl<'a, C: Coefficient> Neg for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial::neg(self)
    }
}
