//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by implicit QL iteration with Wilkinson-type shifts.

use crate::error::{Error, Result};
use crate::matgen::IntSymMatrix;

/// Largest dimension the solver accepts.
pub const MAX_DIM: usize = 512;

const MAX_SWEEPS: usize = 60;

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`, with
    /// its largest-magnitude coordinate (lowest index on ties) positive.
    pub eigenvectors: Vec<Vec<f64>>,
    /// ‖Av − λv‖₂ against the input matrix.
    pub residuals: Vec<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest |⟨vᵢ, vⱼ⟩ − δᵢⱼ|.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = dot(&self.eigenvectors[i], &self.eigenvectors[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }

    /// Smallest gap between consecutive eigenvalues (∞ when n < 2).
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Eigen-decomposition of an integer symmetric matrix.
pub fn eigh(a: &IntSymMatrix) -> Result<EigenDecomposition> {
    symmetric_eigen(&a.to_f64(), a.n())
}

/// Eigen-decomposition of a dense symmetric matrix in row-major order.
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<EigenDecomposition> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            got: a.len(),
        });
    }
    if n > MAX_DIM {
        return Err(Error::InvalidInput(format!(
            "dimension {n} exceeds the eigensolver limit {MAX_DIM}"
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    let mut z = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n > 0 {
        tred2(&mut z, n, &mut d, &mut e);
        tqli(&mut d, &mut e, &mut z, n)?;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for &k in &order {
        let mut v: Vec<f64> = (0..n).map(|i| z[i * n + k]).collect();
        let nrm = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= nrm);
        let lead = (0..n).fold(0, |best, i| if v[i].abs() > v[best].abs() { i } else { best });
        if v[lead] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let lambda = d[k];
        let r = (0..n)
            .map(|i| (dot(&a[i * n..(i + 1) * n], &v) - lambda * v[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        eigenvalues.push(lambda);
        eigenvectors.push(v);
        residuals.push(r);
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        residuals,
    })
}

/// Householder tridiagonalization. On exit `z` holds the accumulated
/// orthogonal transform, `d` the diagonal and `e[1..]` the subdiagonal.
fn tred2(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| z[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = z[at(i, l)];
            } else {
                for k in 0..=l {
                    z[at(i, k)] /= scale;
                    h += z[at(i, k)] * z[at(i, k)];
                }
                let mut f = z[at(i, l)];
                let mut g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[at(i, l)] = f - g;
                f = 0.0;
                for j in 0..=l {
                    z[at(j, i)] = z[at(i, j)] / h;
                    g = 0.0;
                    for k in 0..=j {
                        g += z[at(j, k)] * z[at(i, k)];
                    }
                    for k in j + 1..=l {
                        g += z[at(k, j)] * z[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * z[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = z[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        z[at(j, k)] -= f * e[k] + g * z[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = z[at(i, l)];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let g: f64 = (0..i).map(|k| z[at(i, k)] * z[at(k, j)]).sum();
                for k in 0..i {
                    z[at(k, j)] -= g * z[at(k, i)];
                }
            }
        }
        d[i] = z[at(i, i)];
        z[at(i, i)] = 1.0;
        for j in 0..i {
            z[at(j, i)] = 0.0;
            z[at(i, j)] = 0.0;
        }
    }
}

/// Implicit QL on the tridiagonal (d, e), rotating the columns of `z`.
fn tqli(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::Unresolved("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
