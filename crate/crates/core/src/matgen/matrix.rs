use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt::Write as _;

/// Exact symmetric integer matrix, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSymMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntSymMatrix {
    pub fn zeros(n: usize) -> Self {
        IntSymMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    /// Build from the upper triangle (including the diagonal); `f(i, j)` is
    /// only called with `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        let m = IntSymMatrix { n, data };
        for i in 0..n {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidInput(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_upper(n, |i, j| (i == j) as i64)
    }

    pub fn all_ones(n: usize) -> Self {
        Self::from_upper(n, |_, _| 1)
    }

    pub fn diagonal(d: &[i64]) -> Self {
        Self::from_upper(d.len(), |i, j| if i == j { d[i] } else { 0 })
    }

    /// Adjacency matrix of the complete graph K_n.
    pub fn complete(n: usize) -> Self {
        Self::from_upper(n, |i, j| (i != j) as i64)
    }

    /// Adjacency matrix of the path on n vertices.
    pub fn path(n: usize) -> Self {
        Self::from_upper(n, |i, j| (j == i + 1) as i64)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// 0/1 entries, with a zero diagonal unless `loops` is set.
    pub fn is_adjacency(&self, loops: bool) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                (v == 0 || v == 1) && (loops || i != j || v == 0)
            })
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&x| x as f64).collect()
    }

    pub fn mul_vec_big(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| {
                let mut acc = BigInt::from(0);
                for (j, x) in v.iter().enumerate() {
                    match self.get(i, j) {
                        0 => {}
                        1 => acc += x,
                        -1 => acc -= x,
                        a => acc += x * a,
                    }
                }
                acc
            })
            .collect()
    }

    /// `P A Pᵀ` for the relabeling `perm` (new index i ↦ old index perm[i]).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_upper(self.n, |i, j| self.get(perm[i], perm[j]))
    }

    /// Plain-text form: `n` on the first line, then `n` rows of integers.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the dimension".into()))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {n} rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after matrix rows".into()));
        }
        Self::from_rows(&rows)
    }

    /// Compact graph form `n:bits`, the strict upper triangle row by row.
    /// With loops, the diagonal bits are appended after `;`.
    pub fn to_bitstring(&self) -> Result<String> {
        if !self.is_adjacency(true) {
            return Err(Error::InvalidInput("not a 0/1 adjacency matrix".into()));
        }
        let mut s = format!("{}:", self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                s.push(if self.get(i, j) == 1 { '1' } else { '0' });
            }
        }
        if (0..self.n).any(|i| self.get(i, i) != 0) {
            s.push(';');
            for i in 0..self.n {
                s.push(if self.get(i, i) == 1 { '1' } else { '0' });
            }
        }
        Ok(s)
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("bitstring: {m}"));
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = n.parse().map_err(|_| bad("bad dimension"))?;
        let (off, diag) = match rest.split_once(';') {
            Some((o, d)) => (o, Some(d)),
            None => (rest, None),
        };
        let bits = |t: &str| -> Result<Vec<i64>> {
            t.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(bad("non-binary character")),
                })
                .collect()
        };
        let off = bits(off)?;
        if off.len() != n * n.saturating_sub(1) / 2 {
            return Err(bad("wrong number of edge bits"));
        }
        let diag = match diag {
            Some(d) => {
                let d = bits(d)?;
                if d.len() != n {
                    return Err(bad("wrong number of loop bits"));
                }
                d
            }
            None => vec![0; n],
        };
        let mut k = 0;
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = diag[i];
            for j in i + 1..n {
                m.data[i * n + j] = off[k];
                m.data[j * n + i] = off[k];
                k += 1;
            }
        }
        Ok(m)
    }

    /// Largest absolute row sum (a Gershgorin bound on the spectral norm).
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.unsigned_abs() as f64).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_asymmetric() {
        assert!(IntSymMatrix::from_rows(&[vec![0, 1], vec![0, 0]]).is_err());
        assert!(IntSymMatrix::from_rows(&[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn text_format() {
        let k3 = IntSymMatrix::complete(3);
        let t = k3.to_text();
        assert_eq!(t, "3\n0 1 1\n1 0 1\n1 1 0\n");
        assert_eq!(IntSymMatrix::from_text(&t).unwrap(), k3);
        assert!(IntSymMatrix::from_text("2\n0 1\n").is_err());
    }

    #[test]
    fn bitstring_examples() {
        assert_eq!(IntSymMatrix::path(3).to_bitstring().unwrap(), "3:101");
        let ones = IntSymMatrix::all_ones(2);
        assert_eq!(ones.to_bitstring().unwrap(), "2:1;11");
        assert!(IntSymMatrix::from_rows(&[vec![2]]).unwrap().to_bitstring().is_err());
        assert!(IntSymMatrix::from_bitstring("3:10").is_err());
    }

    proptest! {
        #[test]
        fn bitstring_round_trip(n in 1usize..8, bits in proptest::collection::vec(0i64..2, 64)) {
            let mut k = 0;
            let m = IntSymMatrix::from_upper(n, |i, j| { k += 1; bits[k % 64] * (i != j || bits[(k * 7) % 64] == 1) as i64 });
            let s = m.to_bitstring().unwrap();
            prop_assert_eq!(IntSymMatrix::from_bitstring(&s).unwrap(), m.clone());
            prop_assert_eq!(IntSymMatrix::from_text(&m.to_text()).unwrap(), m);
        }
    }
}
