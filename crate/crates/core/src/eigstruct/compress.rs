use super::constants::{floor_count, StructureConstants};
use crate::error::{Error, Result};
use crate::vectors::{RationalVector, UnitFloatVector};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Compressible,
    Incompressible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressibilityReport {
    pub class: Class,
    /// Distance to the set of ⌊c₀n⌋-sparse vectors.
    pub sparse_distance: f64,
    /// Empty for compressible vectors.
    pub spread_set: Vec<usize>,
    pub spread_size: usize,
}

/// Distance from x to the ⌊k⌋-sparse vectors: the norm of all but the k
/// largest-magnitude coordinates.
fn sparse_distance(x: &[f64], k: usize) -> f64 {
    let mut sq: Vec<f64> = x.iter().map(|v| v * v).collect();
    sq.sort_by(|a, b| b.total_cmp(a));
    sq.iter().skip(k).rev().sum::<f64>().sqrt()
}

/// The magnitude window [c₁/√(2n), 1/√(c₀n)].
pub fn spread_window(consts: &StructureConstants, n: usize) -> (f64, f64) {
    let nf = n as f64;
    (consts.c1 / (2.0 * nf).sqrt(), 1.0 / (consts.c0 * nf).sqrt())
}

pub fn classify(x: &UnitFloatVector, consts: &StructureConstants) -> Result<CompressibilityReport> {
    classify_excluding(x, consts, &[])
}

/// Classification with the spread set drawn from coordinates outside
/// `exclude`.
pub fn classify_excluding(
    x: &UnitFloatVector,
    consts: &StructureConstants,
    exclude: &[usize],
) -> Result<CompressibilityReport> {
    let n = x.len();
    consts.check_dimension(n)?;
    let dist = sparse_distance(x.as_slice(), consts.sparse_size(n));
    if dist <= consts.c1 {
        return Ok(CompressibilityReport {
            class: Class::Compressible,
            sparse_distance: dist,
            spread_set: Vec::new(),
            spread_size: 0,
        });
    }
    let spread = select_spread(x, consts, exclude)?;
    Ok(CompressibilityReport {
        class: Class::Incompressible,
        sparse_distance: dist,
        spread_size: spread.len(),
        spread_set: spread,
    })
}

fn select_spread(
    x: &UnitFloatVector,
    consts: &StructureConstants,
    exclude: &[usize],
) -> Result<Vec<usize>> {
    let n = x.len();
    let budget = consts.exclusion_budget(n);
    if exclude.len() > budget {
        return Err(Error::Precondition(format!(
            "{} excluded coordinates exceed the budget ⌈δn⌉ = {budget}",
            exclude.len()
        )));
    }
    if let Some(&bad) = exclude.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidInput(format!("excluded index {bad} out of range")));
    }
    let want = consts.spread_size(n);
    let (lo, hi) = spread_window(consts, n);
    let chosen: Vec<usize> = (0..n)
        .filter(|i| !exclude.contains(i))
        .filter(|&i| (lo..=hi).contains(&x[i].abs()))
        .take(want)
        .collect();
    if chosen.len() < want {
        return Err(Error::Precondition(format!(
            "only {} window coordinates available, need {want}; vector is not incompressible",
            chosen.len()
        )));
    }
    Ok(chosen)
}

/// ⌈c₂n⌉ coordinates outside `exclude` whose magnitudes lie in the spread
/// window, taken in index order.
pub fn spread_policy(
    x: &UnitFloatVector,
    consts: &StructureConstants,
    exclude: &[usize],
) -> Result<Vec<usize>> {
    let report = classify_excluding(x, consts, exclude)?;
    if report.class != Class::Incompressible {
        return Err(Error::Precondition("vector is compressible".into()));
    }
    Ok(report.spread_set)
}

/// (K, δ)-delocalization: Q_b holds the coordinates that are zero or whose
/// reduced numerator or denominator exceeds K in magnitude; b is
/// delocalized when |Q_b| ≤ ⌊δn⌋.
pub fn is_delocalized(b: &RationalVector, k: u64, delta: f64) -> Result<(bool, Vec<usize>)> {
    if k < 1 {
        return Err(Error::Precondition("K must be at least 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!("delta must lie in (0,1), got {delta}")));
    }
    let kb = BigInt::from(k);
    let q: Vec<usize> = b
        .0
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_zero() || r.numer().abs() > kb || r.denom().abs() > kb)
        .map(|(i, _)| i)
        .collect();
    let ok = q.len() <= floor_count(delta * b.len() as f64);
    Ok((ok, q))
}
