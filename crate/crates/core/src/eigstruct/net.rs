//! Greedy ε-nets of the unit sphere S^{d−1} for d ≤ 4.
//!
//! Candidates from a seeded stream are accepted when farther than ε from
//! every accepted point, so the result is ε-separated and its size obeys
//! the volume bound (1 + 2/ε)^d. Coverage is checked against random probes;
//! uncovered probes are added to the net (keeping it separated) and the
//! check is repeated.

use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

pub const NET_PROBES: usize = 1_000_000;
const MAX_DIM: usize = 4;
const DENSIFY_ROUNDS: usize = 3;
const CANDIDATES_PER_BOUND: f64 = 8.0;
const MAX_CANDIDATES: usize = 200_000;

fn random_unit(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-12 {
            return v.into_iter().map(|x| x / nrm).collect();
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

fn covered(net: &[Vec<f64>], p: &[f64], eps2: f64) -> bool {
    net.iter().any(|q| dist2(p, q) <= eps2)
}

/// ε-net of S^{d−1} verified against [`NET_PROBES`] probes.
pub fn sphere_net(d: usize, eps: f64) -> Result<Vec<Vec<f64>>> {
    sphere_net_with(d, eps, NET_PROBES, &SeedSpec::with_stream(0x6e65_7473, d as u64))
}

pub fn sphere_net_with(d: usize, eps: f64, probes: usize, seed: &SeedSpec) -> Result<Vec<Vec<f64>>> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::InvalidInput(format!("dimension must be 1..={MAX_DIM}, got {d}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidInput(format!("eps must lie in (0,1), got {eps}")));
    }
    let bound = (1.0 + 2.0 / eps).powi(d as i32);
    let eps2 = eps * eps;
    if d == 1 {
        return Ok(vec![vec![1.0], vec![-1.0]]);
    }
    let mut rng = seed.tagged("candidates", &[]).rng();
    let n_cand = ((bound * CANDIDATES_PER_BOUND) as usize).clamp(1000, MAX_CANDIDATES);
    let mut net: Vec<Vec<f64>> = Vec::new();
    for _ in 0..n_cand {
        let p = random_unit(&mut rng, d);
        if !net.iter().any(|q| dist2(&p, q) <= eps2) {
            net.push(p);
        }
    }
    for round in 0..=DENSIFY_ROUNDS {
        let probe_seed = seed.tagged("probes", &[round as u64]);
        let chunk = 4096;
        let misses: Vec<Vec<f64>> = (0..probes.div_ceil(chunk))
            .into_par_iter()
            .flat_map_iter(|c| {
                let mut rng = probe_seed.child(&[c as u64]).rng();
                let len = chunk.min(probes - c * chunk);
                (0..len)
                    .map(move |_| random_unit(&mut rng, d))
                    .filter(|p| !covered(&net, p, eps2))
                    .collect::<Vec<_>>()
            })
            .collect();
        if misses.is_empty() {
            debug_assert!(net.len() as f64 <= bound);
            return Ok(net);
        }
        if round == DENSIFY_ROUNDS {
            break;
        }
        for p in misses {
            if !covered(&net, &p, eps2) {
                net.push(p);
            }
        }
    }
    Err(Error::Unresolved(format!(
        "net for d={d}, eps={eps} still misses probes after {DENSIFY_ROUNDS} densification rounds"
    )))
}
