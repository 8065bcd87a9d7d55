use crate::eigstruct::{RlcdMode, StructureConstants};
use crate::error::{Error, Result};
use crate::exactlin::RankPolicy;
use crate::matgen::AtomDistribution;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    GodsilSweep,
    LoopsSweep,
    SimpleSpectrum,
    EigStructure,
    DotProfile,
    SmallballFamily,
    Symmetrization,
}

impl Experiment {
    pub fn id(self) -> &'static str {
        match self {
            Experiment::GodsilSweep => "godsil-sweep",
            Experiment::LoopsSweep => "loops-sweep",
            Experiment::SimpleSpectrum => "simple-spectrum",
            Experiment::EigStructure => "eig-structure",
            Experiment::DotProfile => "dot-profile",
            Experiment::SmallballFamily => "smallball-family",
            Experiment::Symmetrization => "symmetrization",
        }
    }

    fn uses_wigner(self) -> bool {
        matches!(
            self,
            Experiment::SimpleSpectrum
                | Experiment::EigStructure
                | Experiment::DotProfile
                | Experiment::Symmetrization
        )
    }
}

fn half() -> f64 {
    0.5
}

fn rademacher() -> AtomDistribution {
    AtomDistribution::Rademacher
}

fn default_alpha() -> f64 {
    0.1
}

fn default_m() -> f64 {
    3.0
}

fn default_mode() -> RlcdMode {
    RlcdMode::Heuristic
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n_list: Vec<usize>,
    pub trials: usize,
    #[serde(default = "half")]
    pub p: f64,
    #[serde(default)]
    pub q: f64,
    #[serde(default)]
    pub constants: StructureConstants,
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    /// Off-diagonal Wigner atom.
    #[serde(default = "rademacher")]
    pub xi: AtomDistribution,
    /// Diagonal Wigner atom.
    #[serde(default = "rademacher")]
    pub zeta: AtomDistribution,
    /// Sign atom for the symmetrization experiment; must be ±1-valued.
    #[serde(default = "rademacher")]
    pub psi: AtomDistribution,
    /// Exponent for the D̂ ≥ n^α tally.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Spectral-norm multiplier for the event ‖W‖ ≤ M√n.
    #[serde(default = "default_m", rename = "M", alias = "m")]
    pub m: f64,
    #[serde(default = "default_mode")]
    pub rlcd_mode: RlcdMode,
    #[serde(default)]
    pub rank_policy: RankPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    /// Defaults for an experiment; callers fill in n_list, trials and seed.
    pub fn new(experiment: Experiment, n_list: Vec<usize>, trials: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            experiment,
            n_list,
            trials,
            p: 0.5,
            q: 0.0,
            constants: StructureConstants::default(),
            master_seed,
            output_path: None,
            xi: AtomDistribution::Rademacher,
            zeta: AtomDistribution::Rademacher,
            psi: AtomDistribution::Rademacher,
            alpha: default_alpha(),
            m: default_m(),
            rlcd_mode: default_mode(),
            rank_policy: RankPolicy::default(),
            threads: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        if self.n_list.is_empty() {
            return bad("n_list must not be empty".into());
        }
        if self.n_list.contains(&0) {
            return bad("dimensions must be at least 1".into());
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return bad("n_list must be strictly ascending".into());
        }
        for (name, v) in [("p", self.p), ("q", self.q)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0,1], got {v}"));
            }
        }
        if matches!(self.experiment, Experiment::GodsilSweep | Experiment::LoopsSweep) && self.p != 0.5 {
            return bad(format!("{} runs at p = 1/2, got {}", self.experiment.id(), self.p));
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        if !(self.m >= 1.0) {
            return bad(format!("M must be at least 1, got {}", self.m));
        }
        if !(self.alpha > 0.0) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if self.experiment.uses_wigner() {
            for (name, atom) in [("xi", &self.xi), ("zeta", &self.zeta)] {
                atom.validate().map_err(|e| Error::Config(format!("{name}: {e}")))?;
                if !atom.is_integer_valued() {
                    return bad(format!("{name} must be integer-valued for exact tests"));
                }
            }
            // a diagonal-only Wigner matrix is a valid dot-profile probe
            if self.xi.is_degenerate() && self.experiment != Experiment::DotProfile {
                return bad("xi is degenerate".into());
            }
        }
        if self.experiment == Experiment::EigStructure {
            for &n in &self.n_list {
                self.constants
                    .check_dimension(n)
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        if self.experiment == Experiment::Symmetrization {
            if !self.xi.is_symmetric() {
                return bad("symmetrization needs a symmetric xi".into());
            }
            self.psi.validate().map_err(|e| Error::Config(format!("psi: {e}")))?;
            let signs = self
                .psi
                .support()
                .is_some_and(|s| s.iter().all(|(v, _)| v.is_integer() && v.to_integer().abs() == 1));
            if !signs {
                return bad("psi must take values in {-1, +1}".into());
            }
        }
        if self.experiment == Experiment::SmallballFamily {
            self.xi.validate().map_err(|e| Error::Config(format!("xi: {e}")))?;
            if self.xi.is_degenerate() {
                return bad("xi is degenerate".into());
            }
        }
        if self.experiment == Experiment::SmallballFamily && self.trials < crate::smallball::MIN_SAMPLES {
            return bad(format!(
                "smallball-family uses trials as the sample count; need at least {}",
                crate::smallball::MIN_SAMPLES
            ));
        }
        Ok(())
    }
}
