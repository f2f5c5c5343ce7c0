//! Exact determinants by evaluation and interpolation.
//!
//! Entries are unit monomials, so each coefficient of the determinant is at
//! most `N!` in absolute value. The determinant is evaluated on a grid modulo
//! a few word-sized primes, interpolated per prime and lifted by CRT.
//!
//! Two kinds of structure shrink the grid:
//! - an integer form `L` with `L(e_ij) = r_i + s_j` gives every term of the
//!   determinant the same `L`-degree, so one variable per form can be set to
//!   1 and its exponent recovered afterwards;
//! - the same condition mod 2 means that negating a set of variables
//!   multiplies the determinant by a fixed sign, so on a symmetric grid only
//!   one point per orbit needs an elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::modular::det_mont;
use super::{det_mod_at, GramError, GramMatrix};
use crate::polyring::modular::primes_below;
use crate::polyring::{Monomial, Montgomery, PrimeField, DEFAULT_PRIME, NVARS};
use crate::Poly;

type Form = [i64; NVARS];

/// The common `L`-degree of all terms of the determinant, if `lambda` is
/// separable on `g` (modulo `modulus` when given).
fn separable(g: &GramMatrix, lambda: &Form, modulus: Option<i64>) -> Option<i64> {
    let n = g.side();
    let reduce = |v: i64| modulus.map_or(v, |m| v.rem_euclid(m));
    let l = |i: usize, j: usize| {
        let e = g.entry(i, j).exponents();
        reduce((0..NVARS).map(|v| lambda[v] * e[v] as i64).sum())
    };
    let r: Vec<i64> = (0..n).map(|i| l(i, 0)).collect();
    let s: Vec<i64> = (0..n).map(|j| l(0, j) - l(0, 0)).collect();
    for i in 0..n {
        for j in 0..n {
            if l(i, j) != reduce(r[i] + s[j]) {
                return None;
            }
        }
    }
    Some(reduce(r.iter().chain(&s).sum()))
}

/// Largest total weight of a permutation, by the Hungarian method.
pub(crate) fn max_assignment(w: &[Vec<i64>]) -> i64 {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let inf = i64::MAX / 4;
    let (mut u, mut v) = (vec![0i64; n + 1], vec![0i64; n + 1]);
    let (mut p, mut way) = (vec![0usize; n + 1], vec![0usize; n + 1]);
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let (mut delta, mut j1) = (inf, 0);
            for j in 1..=n {
                if !used[j] {
                    let cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| w[p[j] - 1][j - 1]).sum()
}

/// How the determinant will be reconstructed.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    /// Interpolated variables and their degree bounds.
    pub kept: Vec<(usize, u32)>,
    /// Variables set to 1, in elimination order, with their forms and degrees.
    pub eliminated: Vec<(usize, Form, i64)>,
    /// Sign-flip group on kept positions: (mask, odd).
    pub flips: Vec<(u32, bool)>,
}

impl Plan {
    pub fn grid_size(&self) -> usize {
        self.kept.iter().map(|&(_, b)| b as usize + 1).product()
    }

    pub fn new(g: &GramMatrix) -> Plan {
        let n = g.side();
        let active: Vec<usize> = (0..NVARS)
            .filter(|&v| g.entries().iter().any(|m| m.exponents()[v] > 0))
            .collect();
        let bound = |v: usize| {
            let w: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| g.entry(i, j).exponents()[v] as i64).collect())
                .collect();
            max_assignment(&w) as u32
        };
        let bounds: Vec<u32> = (0..NVARS).map(|v| if active.contains(&v) { bound(v) } else { 0 }).collect();

        let mut forms = Vec::new();
        for_each_form(&active, -2..=2, &mut |lambda| {
            let first = active.iter().map(|&v| lambda[v]).find(|&c| c != 0);
            if first.is_some_and(|c| c > 0) {
                if let Some(c) = separable(g, lambda, None) {
                    forms.push((*lambda, c));
                }
            }
        });

        // Choose the elimination order that leaves the smallest grid.
        let mut best: Option<(u128, Vec<(usize, Form, i64)>)> = None;
        for order in permutations(&active) {
            let mut elim: Vec<(usize, Form, i64)> = Vec::new();
            for &v in &order {
                let usable = forms.iter().find(|(l, _)| {
                    l[v].abs() == 1 && elim.iter().all(|&(u, _, _)| l[u] == 0)
                });
                if let Some(&(l, c)) = usable {
                    elim.push((v, l, c));
                }
            }
            let size: u128 = active
                .iter()
                .filter(|v| !elim.iter().any(|e| e.0 == **v))
                .map(|&v| bounds[v] as u128 + 1)
                .product();
            if best.as_ref().map_or(true, |(s, _)| size < *s) {
                best = Some((size, elim));
            }
        }
        let eliminated = best.map(|b| b.1).unwrap_or_default();
        let kept: Vec<(usize, u32)> = active
            .iter()
            .filter(|v| !eliminated.iter().any(|e| e.0 == **v))
            .map(|&v| (v, bounds[v]))
            .collect();

        let mut generators = Vec::new();
        for mask in 1u32..1 << kept.len() {
            let mut lambda = [0i64; NVARS];
            for (pos, &(v, _)) in kept.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    lambda[v] = 1;
                }
            }
            if let Some(c) = separable(g, &lambda, Some(2)) {
                generators.push((mask, c == 1));
            }
        }
        let mut flips = vec![(0u32, false)];
        for (mask, odd) in generators {
            if flips.iter().any(|f| f.0 == mask) {
                continue;
            }
            let extra: Vec<(u32, bool)> = flips.iter().map(|&(m, o)| (m ^ mask, o ^ odd)).collect();
            flips.extend(extra);
        }
        Plan {
            kept,
            eliminated,
            flips,
        }
    }
}

impl Plan {
    /// The same plan with each degree bound replaced by the degree observed
    /// along that axis through two random points.
    pub fn probe_degrees(&self, g: &GramMatrix) -> Plan {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let m = Montgomery::new(&f);
        let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
        let mut out = self.clone();
        for (ax, &(v, bound)) in self.kept.iter().enumerate() {
            let count = bound as usize + 1;
            let mut degree = 0;
            for _ in 0..2 {
                let mut point = [1u64; NVARS];
                for &(u, _) in &self.kept {
                    point[u] = f.random(&mut rng);
                }
                let mut values: Vec<u64> = symmetric_nodes(count)
                    .into_iter()
                    .map(|x| {
                        point[v] = f.from_i64(x);
                        m.to_mont(det_mod_at(g, &point, &f))
                    })
                    .collect();
                interpolate(&mut values, &[count], &m, &f);
                degree = degree.max(values.iter().rposition(|&c| c != 0).unwrap_or(0) as u32);
            }
            out.kept[ax].1 = degree;
        }
        out
    }
}

fn for_each_form(active: &[usize], range: std::ops::RangeInclusive<i64>, f: &mut dyn FnMut(&Form)) {
    fn go(
        active: &[usize],
        at: usize,
        range: &std::ops::RangeInclusive<i64>,
        cur: &mut Form,
        f: &mut dyn FnMut(&Form),
    ) {
        if at == active.len() {
            f(cur);
            return;
        }
        for c in range.clone() {
            cur[active[at]] = c;
            go(active, at + 1, range, cur, f);
        }
        cur[active[at]] = 0;
    }
    go(active, 0, &range, &mut [0; NVARS], f);
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// `count` integers symmetric about 0, ascending, skipping 0 when `count` is even.
fn symmetric_nodes(count: usize) -> Vec<i64> {
    let h = (count / 2) as i64;
    if count % 2 == 1 {
        (-h..=h).collect()
    } else {
        (-h..0).chain(1..=h).collect()
    }
}

/// Values of the reduced determinant on the grid, in Montgomery form.
fn evaluate_grid(g: &GramMatrix, plan: &Plan, m: &Montgomery, f: &PrimeField) -> Vec<u64> {
    let side = g.side();
    let dims: Vec<usize> = plan.kept.iter().map(|&(_, b)| b as usize + 1).collect();
    let mut strides = vec![1usize; dims.len()];
    for a in (0..dims.len().saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * dims[a + 1];
    }
    let total = plan.grid_size();

    // Distinct entries, and per-axis power tables.
    let mut distinct: Vec<Monomial> = g.entries().to_vec();
    distinct.sort();
    distinct.dedup();
    let entry_ids: Vec<usize> = g
        .entries()
        .iter()
        .map(|e| distinct.binary_search(e).unwrap())
        .collect();
    let exps: Vec<Vec<usize>> = distinct
        .iter()
        .map(|e| plan.kept.iter().map(|&(v, _)| e.exponents()[v] as usize).collect())
        .collect();
    let max_exp = g.entries().iter().flat_map(|e| e.exponents()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Vec<u64>>> = dims
        .iter()
        .map(|&d| {
            symmetric_nodes(d)
                .into_iter()
                .map(|x| {
                    let x = m.to_mont(f.from_i64(x));
                    let mut row = vec![m.one(); max_exp + 1];
                    for e in 1..=max_exp {
                        row[e] = m.mul(row[e - 1], x);
                    }
                    row
                })
                .collect()
        })
        .collect();

    let mut values = vec![0u64; total];
    let mut idx = vec![0usize; dims.len()];
    let mut vals = vec![0u64; distinct.len()];
    let mut a = vec![0u64; side * side];
    for lin in 0..total {
        let mut rem = lin;
        for (ax, s) in strides.iter().enumerate() {
            idx[ax] = rem / s;
            rem %= s;
        }
        let mut rep = (lin, false);
        for &(mask, odd) in &plan.flips[1..] {
            let other: usize = (0..dims.len())
                .map(|ax| {
                    let t = if mask >> ax & 1 == 1 { dims[ax] - 1 - idx[ax] } else { idx[ax] };
                    t * strides[ax]
                })
                .sum();
            if other < rep.0 {
                rep = (other, odd);
            }
        }
        if rep.0 < lin {
            let v = values[rep.0];
            values[lin] = if rep.1 { m.neg(v) } else { v };
            continue;
        }
        for (val, ex) in vals.iter_mut().zip(&exps) {
            *val = ex
                .iter()
                .enumerate()
                .fold(m.one(), |acc, (ax, &e)| m.mul(acc, powers[ax][idx[ax]][e]));
        }
        for (slot, &id) in a.iter_mut().zip(&entry_ids) {
            *slot = vals[id];
        }
        values[lin] = det_mont(&mut a, side, m);
    }
    values
}

/// Converts grid values to monomial coefficients in place, axis by axis.
fn interpolate(values: &mut [u64], dims: &[usize], m: &Montgomery, f: &PrimeField) {
    let total = values.len();
    let mut stride = total;
    for &d in dims {
        stride /= d;
        let xs: Vec<u64> = symmetric_nodes(d)
            .into_iter()
            .map(|x| m.to_mont(f.from_i64(x)))
            .collect();
        // inv[i][j] = 1 / (x_i - x_{i-j})
        let inv: Vec<Vec<u64>> = (0..d)
            .map(|i| (1..=i).map(|j| m.inv(m.sub(xs[i], xs[i - j]))).collect())
            .collect();
        let mut line = vec![0u64; d];
        let mut poly = vec![0u64; d];
        for block in (0..total).step_by(stride * d) {
            for off in 0..stride {
                let base = block + off;
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = values[base + k * stride];
                }
                // divided differences
                for j in 1..d {
                    for i in (j..d).rev() {
                        line[i] = m.mul(m.sub(line[i], line[i - 1]), inv[i][j - 1]);
                    }
                }
                // Newton form to monomial basis
                poly.fill(0);
                poly[0] = line[d - 1];
                for k in (0..d - 1).rev() {
                    let deg = d - 1 - k;
                    for t in (1..=deg).rev() {
                        poly[t] = m.sub(poly[t - 1], m.mul(poly[t], xs[k]));
                    }
                    poly[0] = m.sub(line[k], m.mul(poly[0], xs[k]));
                }
                for (k, &c) in poly.iter().enumerate() {
                    values[base + k * stride] = c;
                }
            }
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact determinant through the modular interpolation pipeline.
pub(crate) fn det_interpolated(g: &GramMatrix) -> Result<Poly, GramError> {
    let plan = Plan::new(g);
    let probed = plan.probe_degrees(g);
    if probed.grid_size() < plan.grid_size() {
        // A probe can only underestimate by landing on a root of a leading
        // coefficient; the spot check catches that and the safe plan reruns.
        if let Ok(det) = reconstruct(g, &probed) {
            return Ok(det);
        }
    }
    reconstruct(g, &plan)
}

fn reconstruct(g: &GramMatrix, plan: &Plan) -> Result<Poly, GramError> {
    let dims: Vec<usize> = plan.kept.iter().map(|&(_, b)| b as usize + 1).collect();
    let bound = factorial(g.side()) * 2;
    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    for p in primes_below(1 << 62, 64) {
        if modulus > bound {
            break;
        }
        modulus *= p;
        primes.push(p);
    }

    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for &p in &primes {
        let f = PrimeField::new(p).expect("primes_below yields primes");
        let m = Montgomery::new(&f);
        let mut values = evaluate_grid(g, plan, &m, &f);
        interpolate(&mut values, &dims, &m, &f);
        values.iter_mut().for_each(|v| *v = m.from_mont(*v));
        residues.push(values);
    }

    let half = &modulus >> 1;
    let mut terms = Vec::new();
    let mut idx = vec![0usize; dims.len()];
    for lin in 0..plan.grid_size() {
        if residues.iter().all(|r| r[lin] == 0) {
            continue;
        }
        // Garner's mixed-radix reconstruction.
        let mut x = BigInt::zero();
        let mut radix = BigInt::one();
        for (r, &p) in residues.iter().zip(&primes) {
            let pb = BigInt::from(p);
            let cur = (&x).mod_floor(&pb);
            let diff = (BigInt::from(r[lin]) - cur).mod_floor(&pb);
            let f = PrimeField::new(p).unwrap();
            let rinv = f.inv((&radix).mod_floor(&pb).try_into().unwrap());
            let t = (diff * rinv).mod_floor(&pb);
            x += &radix * t;
            radix *= p;
        }
        if x > half {
            x -= &modulus;
        }
        let mut rem = lin;
        for ax in (0..dims.len()).rev() {
            idx[ax] = rem % dims[ax];
            rem /= dims[ax];
        }
        terms.push((recover_exponents(plan, &idx)?, x));
    }
    let det = Poly::from_terms(terms);

    // Independent spot check at a random point.
    let f = PrimeField::new(DEFAULT_PRIME).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(g.side() as u64);
    let point: [u64; NVARS] = std::array::from_fn(|_| f.random(&mut rng));
    if det.eval_mod(&point, f.prime()) != det_mod_at(g, &point, &f) {
        return Err(GramError::Reconstruction("spot check failed".into()));
    }
    Ok(det)
}

fn recover_exponents(plan: &Plan, idx: &[usize]) -> Result<Monomial, GramError> {
    let mut exps = [0i64; NVARS];
    for (&(v, _), &e) in plan.kept.iter().zip(idx) {
        exps[v] = e as i64;
    }
    for &(v, lambda, c) in plan.eliminated.iter().rev() {
        let rest: i64 = (0..NVARS).filter(|&u| u != v).map(|u| lambda[u] * exps[u]).sum();
        let e = (c - rest) * lambda[v];
        if e < 0 {
            return Err(GramError::Reconstruction(format!(
                "negative exponent for variable {v} at grid index {idx:?}"
            )));
        }
        exps[v] = e;
    }
    let exps: [u32; NVARS] = std::array::from_fn(|v| exps[v] as u32);
    Monomial::new(exps).ok_or_else(|| GramError::Reconstruction("exponent overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{BasisFamily, FamilyTag};
    use crate::gram::{bareiss_det, build_gram};
    use crate::Var;

    fn brute_max(w: &[Vec<i64>]) -> i64 {
        fn go(w: &[Vec<i64>], row: usize, used: &mut Vec<bool>) -> i64 {
            if row == w.len() {
                return 0;
            }
            let mut best = i64::MIN;
            for j in 0..w.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.max(w[row][j] + go(w, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(w, 0, &mut vec![false; w.len()])
    }

    #[test]
    fn hungarian_matches_brute_force() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        use rand::Rng;
        for n in 1..=6 {
            for _ in 0..20 {
                let w: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..6)).collect()).collect();
                assert_eq!(max_assignment(&w), brute_max(&w));
            }
        }
    }

    #[test]
    fn nodes_are_symmetric() {
        assert_eq!(symmetric_nodes(1), [0]);
        assert_eq!(symmetric_nodes(4), [-2, -1, 1, 2]);
        assert_eq!(symmetric_nodes(5), [-2, -1, 0, 1, 2]);
    }

    #[test]
    fn agrees_with_fraction_free_elimination() {
        for (tag, n) in [
            (FamilyTag::B, 1),
            (FamilyTag::B, 2),
            (FamilyTag::B, 3),
            (FamilyTag::Mb0, 2),
            (FamilyTag::Mb1, 2),
            (FamilyTag::Mb1Union, 2),
            (FamilyTag::MbFull, 1),
            (FamilyTag::MbFull, 2),
        ] {
            let g = build_gram(BasisFamily::new(tag, n)).unwrap();
            let exact = bareiss_det(g.to_poly_rows()).unwrap();
            assert_eq!(det_interpolated(&g).unwrap(), exact, "{tag} n={n}");
        }
    }

    #[test]
    fn probed_bounds_are_tight_and_sufficient() {
        for (tag, n) in [(FamilyTag::Mb1Union, 2), (FamilyTag::MbFull, 2), (FamilyTag::B, 3)] {
            let g = build_gram(BasisFamily::new(tag, n)).unwrap();
            let plan = Plan::new(&g);
            let probed = plan.probe_degrees(&g);
            let exact = bareiss_det(g.to_poly_rows()).unwrap();
            for (&(v, bound), &(_, seen)) in plan.kept.iter().zip(&probed.kept) {
                assert!(seen <= bound, "{tag} n={n}: probe above the bound");
                assert_eq!(seen, exact.degree_in(Var::ALL[v]), "{tag} n={n}: var {v}");
            }
            assert_eq!(reconstruct(&g, &probed).unwrap(), exact, "{tag} n={n}");
        }
    }

    #[test]
    fn singular_matrix_gives_zero() {
        let g = build_gram(BasisFamily::new(FamilyTag::MbFull, 2)).unwrap();
        let row0: Vec<_> = (0..g.side()).map(|j| g.entry(0, j)).collect();
        let mut s = g.clone();
        for (j, m) in row0.into_iter().enumerate() {
            s = s.with_entry(1, j, m);
        }
        assert!(det_interpolated(&s).unwrap().is_zero());
    }
}
