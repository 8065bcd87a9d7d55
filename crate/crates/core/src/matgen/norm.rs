use super::IntSymMatrix;
use crate::rng::SeedSpec;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub const NORM_TOL: f64 = 1e-8;
pub const NORM_MAX_ITER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormStatus {
    Converged,
    /// The iteration cap was hit; `norm_estimate` is the last iterate and
    /// `holds` must not be trusted.
    Unresolved,
}

/// The event ‖W‖ ≤ M√n.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralNormEvent {
    pub m: f64,
    pub holds: bool,
    pub norm_estimate: f64,
    pub status: NormStatus,
}

impl SpectralNormEvent {
    /// `Some(holds)` when the estimate converged.
    pub fn resolved(&self) -> Option<bool> {
        (self.status == NormStatus::Converged).then_some(self.holds)
    }
}

/// Largest eigenvalue of `sign·W`, by power iteration on `sign·W + shift·I`
/// (positive semidefinite for `shift` ≥ the Gershgorin radius). Returns the
/// Rayleigh quotient of `sign·W` at the final iterate, which never exceeds
/// the true eigenvalue in exact arithmetic.
fn shifted_top(w: &[f64], n: usize, sign: f64, shift: f64) -> (f64, bool) {
    let mut rng = SeedSpec::with_stream(0x6e6f726d, 1).rng();
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut v);
    let mut y = vec![0.0; n];
    let mut rho = 0.0;
    for _ in 0..NORM_MAX_ITER {
        for i in 0..n {
            let row = &w[i * n..(i + 1) * n];
            y[i] = sign * row.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() + shift * v[i];
        }
        rho = y.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
        // residual ‖Bv − ρv‖ bounds the distance from ρ to the spectrum of B
        let resid = y
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rho * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if resid <= NORM_TOL * rho.abs().max(f64::MIN_POSITIVE) {
            return (rayleigh(w, n, sign, &v), true);
        }
        std::mem::swap(&mut v, &mut y);
        normalize(&mut v);
    }
    (rho - shift, false)
}

fn rayleigh(w: &[f64], n: usize, sign: f64, v: &[f64]) -> f64 {
    let quad: f64 = (0..n)
        .map(|i| v[i] * w[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
        .sum();
    sign * quad / v.iter().map(|x| x * x).sum::<f64>()
}

fn normalize(v: &mut [f64]) {
    let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
}

/// Spectral norm of a symmetric integer matrix, as max(λ_max, −λ_min), and
/// the event ‖W‖ ≤ M√n.
pub fn spectral_norm_event(w: &IntSymMatrix, m: f64) -> SpectralNormEvent {
    let n = w.n();
    let shift = w.max_abs_row_sum();
    let bound = m * (n as f64).sqrt();
    if shift == 0.0 {
        return SpectralNormEvent {
            m,
            holds: 0.0 <= bound,
            norm_estimate: 0.0,
            status: NormStatus::Converged,
        };
    }
    let a = w.to_f64();
    let (top, ok_top) = shifted_top(&a, n, 1.0, shift);
    let (bot, ok_bot) = shifted_top(&a, n, -1.0, shift);
    let lambda_max = top;
    let lambda_min = -bot;
    let norm = lambda_max.abs().max(lambda_min.abs());
    SpectralNormEvent {
        m,
        holds: norm <= bound,
        norm_estimate: norm,
        status: if ok_top && ok_bot {
            NormStatus::Converged
        } else {
            NormStatus::Unresolved
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix() {
        let e = spectral_norm_event(&IntSymMatrix::zeros(5), 1.0);
        assert_eq!(e.norm_estimate, 0.0);
        assert_eq!(e.resolved(), Some(true));
    }

    #[test]
    fn all_ones_rank_one() {
        let j = IntSymMatrix::all_ones(4);
        let e = spectral_norm_event(&j, 2.0);
        assert!((e.norm_estimate - 4.0).abs() < 1e-7);
        assert_eq!(e.resolved(), Some(true));
        assert_eq!(spectral_norm_event(&j, 1.99).resolved(), Some(false));
    }

    #[test]
    fn negative_dominant_eigenvalue() {
        // eigenvalues 1 and -3
        let m = IntSymMatrix::from_rows(&[vec![-1, 2], vec![2, -1]]).unwrap();
        let e = spectral_norm_event(&m, 10.0);
        assert!((e.norm_estimate - 3.0).abs() < 1e-7, "{}", e.norm_estimate);
    }
}
