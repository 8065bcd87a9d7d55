use crate::error::{Error, Result};
use crate::matgen::IntSymMatrix;
use crate::vectors::RationalVector;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigIntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        BigIntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<BigInt>> {
        let c = self.cols;
        let mut it = self.data.into_iter();
        (0..self.rows)
            .map(|_| it.by_ref().take(c).collect())
            .collect()
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, &p) in perm.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(p, j).clone());
            }
        }
        m
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &p) in perm.iter().enumerate() {
                m.set(i, j, self.get(i, p).clone());
            }
        }
        m
    }

    pub fn scale_col(&mut self, j: usize, by: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) * by;
            self.set(i, j, v);
        }
    }

    /// Largest entry bit length.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    /// Square of the Hadamard bound ∏ⱼ‖colⱼ‖₂², exact.
    pub fn hadamard_bound_sq(&self) -> BigInt {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| {
                        let x = self.get(i, j);
                        x * x
                    })
                    .sum::<BigInt>()
            })
            .product()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

/// Kalman matrix `[b, Ab, …, A^{n−1}b]` with `b` scaled to an integer vector
/// by the LCM of its denominators (column scaling preserves rank).
pub fn build_krylov(a: &IntSymMatrix, b: &RationalVector) -> Result<BigIntMatrix> {
    let n = a.n();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let (mut v, _) = b.clear_denominators();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            v = a.mul_vec_big(&v);
        }
        cols.push(v.clone());
    }
    Ok(BigIntMatrix::from_columns(n, &cols))
}
