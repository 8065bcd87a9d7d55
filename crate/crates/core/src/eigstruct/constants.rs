use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Slack used when turning real products like c₀n into integer counts, so
/// that 0.1·30 counts as exactly 3.
const COUNT_SLACK: f64 = 1e-9;

pub fn floor_count(x: f64) -> usize {
    (x + COUNT_SLACK).floor().max(0.0) as usize
}

pub fn ceil_count(x: f64) -> usize {
    (x - COUNT_SLACK).ceil().max(0.0) as usize
}

/// Structure constants with c₂ = ¼c₀c₁² and δ = ⅛c₀c₁² derived from c₀, c₁.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConstantsSpec", into = "ConstantsSpec")]
pub struct StructureConstants {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub delta: f64,
    pub gamma: f64,
    pub l: f64,
}

/// Serialized form: only c₀, c₁ and optionally γ and L are free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSpec {
    #[serde(default = "default_c")]
    pub c0: f64,
    #[serde(default = "default_c")]
    pub c1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, rename = "L", alias = "l", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
}

fn default_c() -> f64 {
    0.1
}

impl Default for ConstantsSpec {
    fn default() -> Self {
        ConstantsSpec {
            c0: 0.1,
            c1: 0.1,
            gamma: None,
            l: None,
        }
    }
}

impl TryFrom<ConstantsSpec> for StructureConstants {
    type Error = Error;
    fn try_from(s: ConstantsSpec) -> Result<Self> {
        StructureConstants::new(s.c0, s.c1, s.gamma, s.l)
    }
}

impl From<StructureConstants> for ConstantsSpec {
    fn from(c: StructureConstants) -> Self {
        ConstantsSpec {
            c0: c.c0,
            c1: c.c1,
            gamma: Some(c.gamma),
            l: Some(c.l),
        }
    }
}

impl Default for StructureConstants {
    fn default() -> Self {
        StructureConstants::new(0.1, 0.1, None, None).expect("defaults are valid")
    }
}

impl StructureConstants {
    /// γ defaults to c₂/2 and L to 2 (that is, max(p₀^{-1/2}, 2) for
    /// p₀ = ½).
    pub fn new(c0: f64, c1: f64, gamma: Option<f64>, l: Option<f64>) -> Result<Self> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(c0) || !open_unit(c1) {
            return Err(Error::Config(format!("c0, c1 must lie in (0,1), got {c0}, {c1}")));
        }
        let c2 = 0.25 * c0 * c1 * c1;
        let delta = 0.125 * c0 * c1 * c1;
        let gamma = gamma.unwrap_or(c2 / 2.0);
        if !(gamma > 0.0 && gamma < c2) {
            return Err(Error::Config(format!("gamma must lie in (0, c2 = {c2}), got {gamma}")));
        }
        let l = l.unwrap_or(2.0);
        if !(l >= 1.0 && l.is_finite()) {
            return Err(Error::Config(format!("L must be at least 1, got {l}")));
        }
        Ok(StructureConstants {
            c0,
            c1,
            c2,
            delta,
            gamma,
            l,
        })
    }

    /// Defaults with L = max(p₀^{-1/2}, 2) for an atom certificate p₀.
    pub fn for_p0(p0: f64) -> Self {
        let l = p0.powf(-0.5).max(2.0);
        StructureConstants::new(0.1, 0.1, None, Some(l)).expect("defaults are valid")
    }

    /// Smallest n for which the constants are meaningful, ⌈2/c₀⌉.
    pub fn min_dimension(&self) -> usize {
        ceil_count(2.0 / self.c0)
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        if (n as f64) < 2.0 / self.c0 - COUNT_SLACK {
            return Err(Error::ConstantRegime(format!(
                "n = {n} is below 2/c0 = {}",
                2.0 / self.c0
            )));
        }
        Ok(())
    }

    /// ⌊c₀n⌋, the sparsity level.
    pub fn sparse_size(&self, n: usize) -> usize {
        floor_count(self.c0 * n as f64)
    }

    /// ⌈c₂n⌉, the spread-set size.
    pub fn spread_size(&self, n: usize) -> usize {
        ceil_count(self.c2 * n as f64)
    }

    /// ⌈γn⌉, the regularized-LCD subset size.
    pub fn subset_size(&self, n: usize) -> usize {
        ceil_count(self.gamma * n as f64)
    }

    /// ⌈δn⌉, the largest admissible set of excluded coordinates.
    pub fn exclusion_budget(&self, n: usize) -> usize {
        ceil_count(self.delta * n as f64)
    }
}
