use super::config::Experiment;
use crate::control::Certificate;
use crate::rng::SeedSpec;
use crate::smallball::FamilyReport;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

pub const SWEEP_HEADER: &str = "n,trials,controllable,fraction,ci_lo,ci_hi";
pub const DOT_PROFILE_HEADER: &str = "n,trial,min_dot,skipped";
pub const EIG_STRUCTURE_HEADER: &str = "n,trial,eig_index,incompressible,sparse_dist,rlcd_lower";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TrialValues {
    Controllability {
        controllable: bool,
        rank: usize,
        certificate: Certificate,
    },
    SimpleSpectrum {
        simple: bool,
    },
    DotProfile {
        /// `None` when the spectrum is not simple.
        min_dot: Option<f64>,
        /// ‖W‖ ≤ M√n, when the norm estimate converged.
        norm_event: Option<bool>,
    },
    EigStructure {
        eigvecs: Vec<EigRow>,
    },
    Symmetrization {
        min_dot_w: Option<f64>,
        min_dot_w2: Option<f64>,
        max_eig_diff: f64,
    },
}

/// One trial: where its randomness came from and what it produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub experiment: Experiment,
    pub n: usize,
    pub trial: usize,
    pub seed: SeedSpec,
    pub values: TrialValues,
    /// The only field that differs between reruns.
    pub wall_time_s: f64,
}

/// Renders floats in shortest round-trip form; `None` and NaN as empty.
fn num(x: Option<f64>) -> String {
    match x {
        Some(v) if !v.is_nan() => format!("{v}"),
        _ => String::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub trials: usize,
    /// Successes: controllable pairs, or simple spectra.
    pub controllable: usize,
    pub fraction: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Fit of 1 − fraction ≈ ĉ·n^(−α̂).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub alpha_hat: f64,
    pub c_hat: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub experiment: Experiment,
    pub rows: Vec<SweepRow>,
    /// `None` with fewer than two dimensions below fraction 1.
    pub fit: Option<PowerFit>,
    pub records: Vec<TrialRecord>,
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{SWEEP_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.n, r.trials, r.controllable, r.fraction, r.ci_lo, r.ci_hi
            );
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotProfileRow {
    pub n: usize,
    pub trial: usize,
    pub min_dot: Option<f64>,
    pub skipped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotProfileSummary {
    pub n: usize,
    pub trials: usize,
    pub skipped: usize,
    /// Fractions of non-skipped trials with min |vᵀ𝟏| below 10⁻⁶√n and 10⁻⁹√n.
    pub below_1e6: f64,
    pub below_1e9: f64,
    /// Trials where ‖W‖ ≤ M√n was confirmed.
    pub norm_event: usize,
    /// The 10⁻⁶√n fraction among those trials.
    pub below_1e6_given_norm: f64,
    pub median_min_dot: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DotProfileTable {
    pub rows: Vec<DotProfileRow>,
    pub summary: Vec<DotProfileSummary>,
    pub records: Vec<TrialRecord>,
}

impl DotProfileTable {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{DOT_PROFILE_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.n, r.trial, num(r.min_dot), r.skipped as u8);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigRow {
    pub n: usize,
    pub trial: usize,
    pub eig_index: usize,
    pub incompressible: bool,
    pub sparse_dist: f64,
    /// Only for incompressible eigenvectors.
    pub rlcd_lower: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigStructureSummary {
    pub n: usize,
    pub eigenvectors: usize,
    pub incompressible_fraction: f64,
    pub median_rlcd: Option<f64>,
    /// Fraction of incompressible eigenvectors with D̂ ≥ n^α.
    pub above_power: f64,
    /// ⌈γn⌉: the subset size the regularized LCD works with.
    pub subset_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigStructureTable {
    pub alpha: f64,
    pub rows: Vec<EigRow>,
    pub summary: Vec<EigStructureSummary>,
    pub records: Vec<TrialRecord>,
}

impl EigStructureTable {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{EIG_STRUCTURE_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.n,
                r.trial,
                r.eig_index,
                r.incompressible as u8,
                r.sparse_dist,
                num(r.rlcd_lower)
            );
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationRow {
    pub n: usize,
    pub pair: usize,
    pub min_dot_w: Option<f64>,
    pub min_dot_w2: Option<f64>,
    pub max_eig_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationSummary {
    pub n: usize,
    pub pairs: usize,
    /// Pairs where both spectra were simple and entered the KS test.
    pub compared: usize,
    pub ks_statistic: f64,
    pub ks_critical: f64,
    /// KS does not reject at 1%.
    pub ks_passes: bool,
    pub max_eig_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrizationTable {
    pub rows: Vec<SymmetrizationRow>,
    pub summary: Vec<SymmetrizationSummary>,
    pub records: Vec<TrialRecord>,
}

impl SymmetrizationTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,pair,min_dot_w,min_dot_w2,max_eig_diff\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.n,
                r.pair,
                num(r.min_dot_w),
                num(r.min_dot_w2),
                r.max_eig_diff
            );
        }
        s
    }
}

/// Empirical concentration against the calibrated LCD bound, per family
/// member and radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub reports: Vec<FamilyReport>,
    /// Smallest C with C·L·(t + 1/D) above every estimate.
    pub c: f64,
}

impl FamilyTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,t,empirical,bound\n");
        for rep in &self.reports {
            for row in &rep.rows {
                let bound = self.c * rep.l * (rep.t + 1.0 / row.lcd);
                let _ = writeln!(s, "{},{},{},{}", row.label, rep.t, row.levy, bound);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "output", rename_all = "kebab-case")]
pub enum ExperimentOutput {
    Sweep(SweepTable),
    DotProfile(DotProfileTable),
    EigStructure(EigStructureTable),
    Symmetrization(SymmetrizationTable),
    Family(FamilyTable),
}

impl ExperimentOutput {
    pub fn to_csv(&self) -> String {
        match self {
            ExperimentOutput::Sweep(t) => t.to_csv(),
            ExperimentOutput::DotProfile(t) => t.to_csv(),
            ExperimentOutput::EigStructure(t) => t.to_csv(),
            ExperimentOutput::Symmetrization(t) => t.to_csv(),
            ExperimentOutput::Family(t) => t.to_csv(),
        }
    }

    /// Everything but the per-trial records, for a human-readable summary.
    pub fn summary_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("output serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("records");
            obj.remove("rows");
            if let ExperimentOutput::Sweep(t) = self {
                obj.insert("rows".into(), serde_json::to_value(&t.rows).expect("rows serialize"));
            }
        }
        v
    }
}
