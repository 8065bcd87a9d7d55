//! A fixed family of unit vectors in ℝ¹⁶ ranging from highly structured
//! (few equal coordinates) to unstructured, used to compare measured LCDs
//! with measured concentration of Σ xₖξₖ.

use super::levy::{levy_scalar, sample_weighted_sum};
use crate::eigstruct::{default_theta_max, lcd};
use crate::error::Result;
use crate::matgen::AtomDistribution;
use crate::rng::SeedSpec;
use crate::stats::spearman;
use crate::vectors::UnitFloatVector;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub const FAMILY_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub label: String,
    pub x: UnitFloatVector,
}

/// Flat vectors 𝟏_k/√k for k = 1..16, plus an arithmetic progression, a
/// two-level vector and two Gaussian draws.
pub fn designed_family() -> Vec<FamilyMember> {
    let n = FAMILY_DIM;
    let mut out = Vec::with_capacity(20);
    let member = |label: String, v: Vec<f64>| FamilyMember {
        label,
        x: UnitFloatVector::normalized(v).expect("nonzero"),
    };
    for k in 1..=n {
        let v = (0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
        out.push(member(format!("flat-{k}"), v));
    }
    out.push(member("progression".into(), (1..=n).map(|i| i as f64).collect()));
    out.push(member(
        "two-level".into(),
        (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 2.0 }).collect(),
    ));
    let mut rng = SeedSpec::with_stream(0xfa41, 0).rng();
    for g in 0..2 {
        let v = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        out.push(member(format!("gaussian-{g}"), v));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub label: String,
    /// Lower end of the LCD bracket.
    pub lcd: f64,
    pub levy: f64,
    pub ci_halfwidth: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub l: f64,
    pub t: f64,
    pub n_samples: usize,
    pub rows: Vec<FamilyRow>,
    /// Spearman correlation between 1/D_L(x) and 𝓛(Σ xₖξₖ, t).
    pub spearman: f64,
}

pub fn family_report(
    members: &[FamilyMember],
    atom: &AtomDistribution,
    l: f64,
    t: f64,
    n_samples: usize,
    seed: &SeedSpec,
) -> Result<FamilyReport> {
    let mut rows = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        let d = lcd(&m.x, l, default_theta_max(m.x.len()))?;
        let sums = sample_weighted_sum(m.x.as_slice(), atom, n_samples, &seed.child(&[i as u64]));
        let e = levy_scalar(&sums, t)?;
        rows.push(FamilyRow {
            label: m.label.clone(),
            lcd: d.lower,
            levy: e.value,
            ci_halfwidth: e.ci_halfwidth,
        });
    }
    let inv: Vec<f64> = rows.iter().map(|r| 1.0 / r.lcd).collect();
    let levy: Vec<f64> = rows.iter().map(|r| r.levy).collect();
    Ok(FamilyReport {
        l,
        t,
        n_samples,
        spearman: spearman(&inv, &levy),
        rows,
    })
}
