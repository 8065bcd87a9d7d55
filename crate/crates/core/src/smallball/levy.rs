use crate::error::{Error, Result};
use crate::matgen::{certify_nondegeneracy, AtomDistribution};
use crate::rng::SeedSpec;
use crate::stats::{binomial_halfwidth, Z95};
use crate::vectors::UnitFloatVector;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const MIN_SAMPLES: usize = 100;
pub const DEFAULT_SAMPLES: usize = 100_000;
/// Samples drawn per substream; fixes the work split independently of the
/// thread count.
const CHUNK: usize = 4096;

/// Empirical Lévy concentration sup_u P(‖Z − u‖ ≤ t).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationEstimate {
    pub t: f64,
    pub value: f64,
    /// 95% normal-approximation half-width at the maximizing center.
    pub ci_halfwidth: f64,
    pub n_samples: usize,
    pub sup_location: Vec<f64>,
}

fn check(n: usize, t: f64) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidInput(format!("radius must be nonnegative, got {t}")));
    }
    Ok(())
}

fn estimate(t: f64, count: usize, n: usize, center: Vec<f64>) -> ConcentrationEstimate {
    let value = count as f64 / n as f64;
    ConcentrationEstimate {
        t,
        value,
        ci_halfwidth: binomial_halfwidth(value, n, Z95),
        n_samples: n,
        sup_location: center,
    }
}

/// Largest number of sorted samples inside a window of width 2t, and the
/// window's left end.
fn max_window(sorted: &[f64], t: f64) -> (usize, f64) {
    let mut best = (0, sorted[0]);
    let mut j = 0;
    for i in 0..sorted.len() {
        if j < i {
            j = i;
        }
        while j + 1 < sorted.len() && sorted[j + 1] - sorted[i] <= 2.0 * t {
            j += 1;
        }
        if j + 1 - i > best.0 {
            best = (j + 1 - i, sorted[i]);
        }
    }
    best
}

/// Exact supremum over u ∈ ℝ for the empirical measure of scalar samples.
pub fn levy_scalar(samples: &[f64], t: f64) -> Result<ConcentrationEstimate> {
    Ok(levy_scalar_multi(samples, &[t])?.remove(0))
}

/// [`levy_scalar`] at several radii on one sample set.
pub fn levy_scalar_multi(samples: &[f64], ts: &[f64]) -> Result<Vec<ConcentrationEstimate>> {
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        check(samples.len(), t)?;
        let (count, left) = max_window(&sorted, t);
        out.push(estimate(t, count, samples.len(), vec![left + t]));
    }
    let mut by_t: Vec<&ConcentrationEstimate> = out.iter().collect();
    by_t.sort_by(|a, b| a.t.total_cmp(&b.t));
    assert!(by_t.windows(2).all(|w| w[0].value <= w[1].value));
    Ok(out)
}

/// Vector samples: the supremum is approximated by balls centred at the
/// sample points, which can undercount by at most the mass of one ball's
/// boundary shell relative to the optimal center.
pub fn levy_vector(samples: &[Vec<f64>], t: f64) -> Result<ConcentrationEstimate> {
    check(samples.len(), t)?;
    let t2 = t * t;
    let counts: Vec<usize> = samples
        .par_iter()
        .map(|c| {
            samples
                .iter()
                .filter(|s| s.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum::<f64>() <= t2)
                .count()
        })
        .collect();
    let (best, &count) = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty");
    Ok(estimate(t, count, samples.len(), samples[best].clone()))
}

fn draw<T: Send>(
    n: usize,
    seed: &SeedSpec,
    sampler: &(impl Fn(&mut ChaCha8Rng) -> T + Sync),
) -> Vec<T> {
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = seed.child(&[c as u64]).rng();
            let len = CHUNK.min(n - c * CHUNK);
            (0..len).map(|_| sampler(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Draw `n_samples` scalar samples from `sampler` on fixed substreams and
/// estimate 𝓛(Z, t).
pub fn levy_estimate(
    sampler: impl Fn(&mut ChaCha8Rng) -> f64 + Sync,
    t: f64,
    n_samples: usize,
    seed: &SeedSpec,
) -> Result<ConcentrationEstimate> {
    check(n_samples, t)?;
    levy_scalar(&draw(n_samples, seed, &sampler), t)
}

pub fn levy_estimate_vector(
    sampler: impl Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
    t: f64,
    n_samples: usize,
    seed: &SeedSpec,
) -> Result<ConcentrationEstimate> {
    check(n_samples, t)?;
    levy_vector(&draw(n_samples, seed, &sampler), t)
}

/// Samples of Σ xₖξₖ with iid ξₖ from `atom`.
pub fn sample_weighted_sum(
    x: &[f64],
    atom: &AtomDistribution,
    n_samples: usize,
    seed: &SeedSpec,
) -> Vec<f64> {
    draw(n_samples, seed, &|rng: &mut ChaCha8Rng| {
        x.iter().map(|xk| xk * atom.sample_f64(rng)).sum()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleBoundReport {
    pub eps0: f64,
    pub p0: f64,
    /// 𝓛(ξ, ε₀/2).
    pub atom_levy: ConcentrationEstimate,
    /// √(1 − p₀/2).
    pub atom_bound: f64,
    pub atom_bound_holds: bool,
    /// Radius c at which the weighted sum is measured, ε₀/2·‖x‖∞.
    pub radius: f64,
    /// 𝓛(Σ xₖξₖ, c).
    pub sum_levy: ConcentrationEstimate,
}

/// Empirical counterpart of the atom bound 𝓛(ξ, ε₀/2) ≤ √(1 − p₀/2), and
/// the concentration of Σ xₖξₖ at radius ε₀/2·‖x‖∞.
pub fn simple_bound_check(
    x: &UnitFloatVector,
    atom: &AtomDistribution,
    n_samples: usize,
    seed: &SeedSpec,
) -> Result<SimpleBoundReport> {
    let cert = certify_nondegeneracy(atom)?;
    let atom_levy = levy_estimate(
        |rng| atom.sample_f64(rng),
        cert.eps0 / 2.0,
        n_samples,
        &seed.tagged("atom", &[]),
    )?;
    let atom_bound = (1.0 - cert.p0 / 2.0).sqrt();
    let radius = cert.eps0 / 2.0 * x.sup_norm();
    let sums = sample_weighted_sum(x.as_slice(), atom, n_samples, &seed.tagged("sum", &[]));
    let sum_levy = levy_scalar(&sums, radius)?;
    Ok(SimpleBoundReport {
        eps0: cert.eps0,
        p0: cert.p0,
        atom_bound_holds: atom_levy.value <= atom_bound + atom_levy.ci_halfwidth,
        atom_levy,
        atom_bound,
        radius,
        sum_levy,
    })
}
