use super::compress::{classify, Class};
use super::constants::StructureConstants;
use super::lcd::{default_theta_max, lcd};
use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use crate::vectors::UnitFloatVector;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact mode refuses more subsets than this.
pub const EXACT_SUBSET_LIMIT: u128 = 100_000;
/// Random subsets tried by the heuristic before greedy swaps.
pub const HEURISTIC_SUBSETS: usize = 200;
const GREEDY_PASSES: usize = 32;
const HEURISTIC_STREAM: u64 = 0x726c_6364;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RlcdMode {
    Exact,
    Heuristic,
}

/// Lower bound on the regularized LCD, max over I of D_L(x_I/‖x_I‖), with
/// the subset that attains it (lexicographically first among ties).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizedLcdResult {
    pub value_lower: f64,
    pub maximizing_subset: Vec<usize>,
    /// True when every subset of the spread set was evaluated.
    pub exact: bool,
}

impl RegularizedLcdResult {
    /// value_lower ≥ c·√(γn).
    pub fn satisfies_lower_bound(&self, c: f64, gamma: f64, n: usize) -> bool {
        self.value_lower >= c * (gamma * n as f64).sqrt()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Regularized LCD over the spread set chosen by [`classify`].
pub fn regularized_lcd(
    x: &UnitFloatVector,
    consts: &StructureConstants,
    mode: RlcdMode,
) -> Result<RegularizedLcdResult> {
    let report = classify(x, consts)?;
    if report.class != Class::Incompressible {
        return Err(Error::Precondition("vector is compressible".into()));
    }
    regularized_lcd_on(x, consts, &report.spread_set, mode)
}

/// Regularized LCD over subsets of a given spread set.
pub fn regularized_lcd_on(
    x: &UnitFloatVector,
    consts: &StructureConstants,
    spread: &[usize],
    mode: RlcdMode,
) -> Result<RegularizedLcdResult> {
    let n = x.len();
    let k = consts.subset_size(n);
    if k == 0 || k > spread.len() {
        return Err(Error::Precondition(format!(
            "subset size {k} incompatible with a spread set of {}",
            spread.len()
        )));
    }
    let mut spread = spread.to_vec();
    spread.sort_unstable();
    spread.dedup();
    let theta_max = default_theta_max(n);
    let eval = |subset: &[usize]| -> Result<f64> {
        Ok(lcd(&x.restrict(subset)?, consts.l, theta_max)?.lower)
    };
    let total = binomial(spread.len(), k);
    match mode {
        RlcdMode::Exact => {
            if total > EXACT_SUBSET_LIMIT {
                return Err(Error::Precondition(format!(
                    "{total} subsets exceed the exact limit {EXACT_SUBSET_LIMIT}"
                )));
            }
            let subsets = combinations(&spread, k);
            let values: Vec<f64> = subsets
                .par_iter()
                .map(|s| eval(s))
                .collect::<Result<_>>()?;
            let (best, value) = first_max(&values);
            Ok(RegularizedLcdResult {
                value_lower: value,
                maximizing_subset: subsets[best].clone(),
                exact: true,
            })
        }
        RlcdMode::Heuristic => heuristic(&spread, k, total, eval),
    }
}

fn first_max(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        })
}

/// All k-subsets in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn better(value: f64, subset: &[usize], best_value: f64, best: &[usize]) -> bool {
    value > best_value || (value == best_value && subset < best)
}

fn heuristic(
    spread: &[usize],
    k: usize,
    total: u128,
    eval: impl Fn(&[usize]) -> Result<f64> + Sync,
) -> Result<RegularizedLcdResult> {
    let mut rng = SeedSpec::with_stream(HEURISTIC_STREAM, spread.len() as u64).rng();
    let mut starts: Vec<Vec<usize>> = vec![spread[..k].to_vec()];
    for _ in 0..HEURISTIC_SUBSETS {
        let mut s: Vec<usize> = sample(&mut rng, spread.len(), k)
            .into_iter()
            .map(|i| spread[i])
            .collect();
        s.sort_unstable();
        starts.push(s);
    }
    let values: Vec<f64> = starts
        .par_iter()
        .map(|s| eval(s))
        .collect::<Result<_>>()?;
    let mut best = starts[0].clone();
    let mut best_value = values[0];
    for (s, &v) in starts.iter().zip(&values).skip(1) {
        if better(v, s, best_value, &best) {
            best = s.clone();
            best_value = v;
        }
    }
    for _ in 0..GREEDY_PASSES {
        let mut swaps = Vec::new();
        for pos in 0..k {
            for &cand in spread.iter().filter(|c| !best.contains(c)) {
                let mut s = best.clone();
                s[pos] = cand;
                s.sort_unstable();
                swaps.push(s);
            }
        }
        let values: Vec<f64> = swaps
            .par_iter()
            .map(|s| eval(s))
            .collect::<Result<_>>()?;
        let mut improved = false;
        for (s, &v) in swaps.iter().zip(&values) {
            if v > best_value {
                best = s.clone();
                best_value = v;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(RegularizedLcdResult {
        value_lower: best_value,
        maximizing_subset: best,
        exact: total == 1,
    })
}

/// Smallest c with value ≥ c·√(γn) over the given (value, γn) pairs.
pub fn calibrate_rlcd_constant(samples: &[(f64, f64)]) -> Option<f64> {
    samples
        .iter()
        .filter(|(_, gn)| *gn > 0.0)
        .map(|(v, gn)| v / gn.sqrt())
        .min_by(f64::total_cmp)
}
