use super::modp::{mul_mod, reduce_i64, sub_mod};
use super::{BigIntMatrix, IntPolynomial};
use crate::matgen::IntSymMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Characteristic polynomial det(xI − A) by the division-free Berkowitz
/// recurrence. Monic of degree n.
pub fn charpoly_int(a: &IntSymMatrix) -> IntPolynomial {
    let n = a.n();
    // coefficients in decreasing degree order while building
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // leading (r+1)×(r+1) block: scalar a_rr, row R = a[r][..r], column S = a[..r][r]
        let mut toeplitz: Vec<BigInt> = Vec::with_capacity(r + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-BigInt::from(a.get(r, r)));
        let mut v: Vec<BigInt> = (0..r).map(|i| BigInt::from(a.get(i, r))).collect();
        for _ in 0..r {
            let rs: BigInt = (0..r).map(|j| &v[j] * a.get(r, j)).sum();
            toeplitz.push(-rs);
            v = (0..r)
                .map(|i| (0..r).map(|j| &v[j] * a.get(i, j)).sum())
                .collect();
        }
        let next: Vec<BigInt> = (0..=r + 1)
            .map(|i| {
                (0..=i.min(r))
                    .map(|j| &toeplitz[i - j] * &c[j])
                    .sum()
            })
            .collect();
        c = next;
    }
    c.reverse();
    IntPolynomial::new(c)
}

/// Characteristic polynomial reduced modulo `p`, coefficients ascending.
pub fn charpoly_mod_p(a: &IntSymMatrix, p: u64) -> Vec<u64> {
    let n = a.n();
    let am: Vec<u64> = a.entries().iter().map(|&x| reduce_i64(x, p)).collect();
    let at = |i: usize, j: usize| am[i * n + j];
    let neg = |x: u64| sub_mod(0, x, p);
    let mut c: Vec<u64> = vec![1];
    for r in 0..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(1u64);
        toeplitz.push(neg(at(r, r)));
        let mut v: Vec<u64> = (0..r).map(|i| at(i, r)).collect();
        for _ in 0..r {
            let rs = (0..r).fold(0u64, |acc, j| (acc + mul_mod(v[j], at(r, j), p)) % p);
            toeplitz.push(neg(rs));
            v = (0..r)
                .map(|i| (0..r).fold(0u64, |acc, j| (acc + mul_mod(v[j], at(i, j), p)) % p))
                .collect();
        }
        c = (0..=r + 1)
            .map(|i| {
                (0..=i.min(r)).fold(0u64, |acc, j| (acc + mul_mod(toeplitz[i - j], c[j], p)) % p)
            })
            .collect();
    }
    c.reverse();
    c
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn det_bareiss(m: &BigIntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone().into_rows();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pr = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                row[j] = (&pr[k] * &row[j] - &row[k] * &pr[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
