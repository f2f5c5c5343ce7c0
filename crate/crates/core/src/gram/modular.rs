//! Determinant and rank of numeric matrices over a prime field.

use crate::polyring::{Montgomery, PrimeField};

/// Determinant of the row-major `n x n` matrix `a`, which is destroyed.
pub fn det_mod(a: &mut [u64], n: usize, f: &PrimeField) -> u64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1u64;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if p != k {
            for j in k..n {
                a.swap(p * n + j, k * n + j);
            }
            det = f.neg(det);
        }
        let piv = a[k * n + k];
        det = f.mul(det, piv);
        let inv = f.inv(piv);
        for r in k + 1..n {
            let factor = f.mul(a[r * n + k], inv);
            if factor == 0 {
                continue;
            }
            for j in k + 1..n {
                let t = f.mul(factor, a[k * n + j]);
                a[r * n + j] = f.sub(a[r * n + j], t);
            }
        }
    }
    det
}

/// As [`det_mod`], with the matrix and result in Montgomery form.
pub fn det_mont(a: &mut [u64], n: usize, m: &Montgomery) -> u64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = m.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return 0;
        };
        if p != k {
            for j in k..n {
                a.swap(p * n + j, k * n + j);
            }
            det = m.neg(det);
        }
        let piv = a[k * n + k];
        det = m.mul(det, piv);
        let inv = m.inv(piv);
        let (top, rest) = a.split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n + k + 1..k * n + n];
        for row in rest.chunks_exact_mut(n) {
            let factor = m.mul(row[k], inv);
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x = m.sub(*x, m.mul(factor, y));
            }
        }
    }
    det
}

/// Rank of the row-major `rows x cols` matrix `a`, which is destroyed.
pub fn rank_mod(a: &mut [u64], rows: usize, cols: usize, f: &PrimeField) -> usize {
    debug_assert_eq!(a.len(), rows * cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        for j in c..cols {
            a.swap(p * cols + j, rank * cols + j);
        }
        let inv = f.inv(a[rank * cols + c]);
        for r in rank + 1..rows {
            let factor = f.mul(a[r * cols + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let t = f.mul(factor, a[rank * cols + j]);
                a[r * cols + j] = f.sub(a[r * cols + j], t);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::DEFAULT_PRIME;

    #[test]
    fn small_cases() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let mut a = vec![0, 2, 1, 3, 1, 4, 1, 5, 9];
        assert_eq!(det_mod(&mut a, 3, &f), f.from_i64(-32));
        let mut a = vec![1, 2, 2, 4];
        assert_eq!(det_mod(&mut a, 2, &f), 0);
        let mut a = vec![1, 2, 3, 2, 4, 6, 1, 0, 1];
        assert_eq!(rank_mod(&mut a, 3, 3, &f), 2);
        let mut a = vec![0, 0, 0, 0, 0, 0];
        assert_eq!(rank_mod(&mut a, 2, 3, &f), 0);
        let mut a = vec![1, 0, 0, 1, 1, 1];
        assert_eq!(rank_mod(&mut a, 2, 3, &f), 2);
    }

    #[test]
    fn montgomery_det_matches() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let m = Montgomery::new(&f);
        let a = vec![0, 2, 1, 3, 1, 4, 1, 5, 9, 7, 7, 2, 5, 0, 3, 1];
        let mut plain = a.clone();
        let mut mont: Vec<u64> = a.iter().map(|&v| m.to_mont(v)).collect();
        assert_eq!(m.from_mont(det_mont(&mut mont, 4, &m)), det_mod(&mut plain, 4, &f));
    }
}
