use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Rational parameter that serializes as `"p/q"` and also accepts JSON
/// integers or finite decimals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Rational64);

impl Rat {
    pub fn new(p: i64, q: i64) -> Self {
        Rat(Rational64::new(p, q))
    }

    pub fn int(p: i64) -> Self {
        Rat(Rational64::from_integer(p))
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let r = crate::vectors::parse_rational(s)?;
        let p = r.numer().to_i64();
        let q = r.denom().to_i64();
        match (p, q) {
            (Some(p), Some(q)) => Ok(Rat::new(p, q)),
            _ => Err(Error::Parse(format!("rational out of 64-bit range: {s}"))),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            F(f64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(i) => Ok(Rat::int(i)),
            Raw::F(f) => Rat::from_str(&format!("{f}")).map_err(serde::de::Error::custom),
            Raw::S(s) => Rat::from_str(&s).map_err(serde::de::Error::custom),
        }
    }
}

/// Distribution of an atom variable (off-diagonal ξ, diagonal ζ, or the
/// random signs ψ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AtomDistribution {
    /// Point mass.
    Constant { value: Rat },
    /// ±1 with probability ½ each.
    Rademacher,
    /// 1 with probability `p`, else 0.
    Bernoulli01 { p: Rat },
    /// `a` with probability `p`, else `b`.
    TwoPoint { a: Rat, b: Rat, p: Rat },
    /// Uniform on the integers `lo..=hi`.
    UniformInt { lo: i64, hi: i64 },
    /// Standard normal, resampled outside `±truncate`, rounded to the grid
    /// `step·ℤ`.
    GaussianDiscretized {
        #[serde(default = "default_grid_step")]
        step: Rat,
        #[serde(default = "default_truncation")]
        truncate: f64,
    },
}

fn default_grid_step() -> Rat {
    Rat::new(1, 1024)
}

fn default_truncation() -> f64 {
    8f64.sqrt()
}

impl AtomDistribution {
    pub fn gaussian() -> Self {
        AtomDistribution::GaussianDiscretized {
            step: default_grid_step(),
            truncate: default_truncation(),
        }
    }

    /// ζ of the G(n,½,q) reduction: +1 with probability q, −1 otherwise.
    pub fn signed_loops(q: Rat) -> Self {
        AtomDistribution::TwoPoint {
            a: Rat::int(1),
            b: Rat::int(-1),
            p: q,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |p: &Rat| {
            if p.0 < Rational64::zero() || p.0 > Rational64::one() {
                Err(Error::Config(format!("probability {p} outside [0,1]")))
            } else {
                Ok(())
            }
        };
        match self {
            AtomDistribution::Constant { .. } | AtomDistribution::Rademacher => Ok(()),
            AtomDistribution::Bernoulli01 { p } => prob(p),
            AtomDistribution::TwoPoint { p, .. } => prob(p),
            AtomDistribution::UniformInt { lo, hi } => {
                if lo > hi {
                    Err(Error::Config(format!("uniform-int with lo {lo} > hi {hi}")))
                } else if hi.checked_sub(*lo).is_none_or(|w| w >= 1 << 20) {
                    Err(Error::Config("uniform-int range too wide to enumerate".into()))
                } else {
                    Ok(())
                }
            }
            AtomDistribution::GaussianDiscretized { step, truncate } => {
                if step.0 <= Rational64::zero() {
                    Err(Error::Config("grid step must be positive".into()))
                } else if !(*truncate > 0.0) || !truncate.is_finite() {
                    Err(Error::Config("truncation must be positive".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Finite support as `(value, probability)` pairs with positive mass,
    /// sorted by value. `None` for the discretized Gaussian.
    pub fn support(&self) -> Option<Vec<(Rational64, Rational64)>> {
        let one = Rational64::one();
        let mut pts: Vec<(Rational64, Rational64)> = match self {
            AtomDistribution::Constant { value } => vec![(value.0, one)],
            AtomDistribution::Rademacher => {
                let h = Rational64::new(1, 2);
                vec![(-one, h), (one, h)]
            }
            AtomDistribution::Bernoulli01 { p } => {
                vec![(Rational64::zero(), one - p.0), (one, p.0)]
            }
            AtomDistribution::TwoPoint { a, b, p } => vec![(a.0, p.0), (b.0, one - p.0)],
            AtomDistribution::UniformInt { lo, hi } => {
                let w = Rational64::new(1, hi - lo + 1);
                (*lo..=*hi).map(|v| (Rational64::from_integer(v), w)).collect()
            }
            AtomDistribution::GaussianDiscretized { .. } => return None,
        };
        pts.retain(|(_, p)| !p.is_zero());
        pts.sort();
        let mut merged: Vec<(Rational64, Rational64)> = Vec::with_capacity(pts.len());
        for (v, p) in pts {
            match merged.last_mut() {
                Some((lv, lp)) if *lv == v => *lp += p,
                _ => merged.push((v, p)),
            }
        }
        Some(merged)
    }

    /// Smallest positive integer `s` such that `s·ξ` is integer-valued.
    pub fn integer_scale(&self) -> i64 {
        match self {
            AtomDistribution::GaussianDiscretized { step, .. } => *step.0.denom(),
            _ => self
                .support()
                .unwrap_or_default()
                .iter()
                .fold(1i64, |acc, (v, _)| acc.lcm(v.denom())),
        }
    }

    pub fn is_integer_valued(&self) -> bool {
        self.integer_scale() == 1
            && !matches!(self, AtomDistribution::GaussianDiscretized { step, .. } if !step.0.is_integer())
    }

    /// True when ξ and −ξ have the same law.
    pub fn is_symmetric(&self) -> bool {
        match self.support() {
            None => true,
            Some(s) => {
                let mirrored: Vec<(Rational64, Rational64)> =
                    s.iter().rev().map(|(v, p)| (-*v, *p)).collect();
                mirrored == s
            }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.support().is_some_and(|s| s.len() <= 1)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational64 {
        match self {
            AtomDistribution::Constant { value } => value.0,
            AtomDistribution::Rademacher => {
                if rng.next_u32() & 1 == 1 {
                    Rational64::one()
                } else {
                    -Rational64::one()
                }
            }
            AtomDistribution::Bernoulli01 { p } => {
                if bernoulli(rng, p.0) {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }
            AtomDistribution::TwoPoint { a, b, p } => {
                if bernoulli(rng, p.0) {
                    a.0
                } else {
                    b.0
                }
            }
            AtomDistribution::UniformInt { lo, hi } => {
                Rational64::from_integer(rng.random_range(*lo..=*hi))
            }
            AtomDistribution::GaussianDiscretized { step, truncate } => loop {
                let g: f64 = rng.sample(StandardNormal);
                if g.abs() <= *truncate {
                    let k = (g / step.to_f64()).round() as i64;
                    break step.0 * k;
                }
            },
        }
    }

    pub fn sample_f64<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.sample(rng).to_f64().unwrap_or(f64::NAN)
    }

    /// Draw `scale·ξ` as an integer. `scale` must be a multiple of
    /// [`integer_scale`](Self::integer_scale).
    pub fn sample_scaled<R: Rng + ?Sized>(&self, rng: &mut R, scale: i64) -> i64 {
        let v = self.sample(rng) * scale;
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// Total-variation distance between the truncated Gaussian and the
    /// untruncated one, `P(|g| > truncate)`. Zero for finite-support atoms.
    pub fn truncation_tv_gap(&self) -> f64 {
        match self {
            AtomDistribution::GaussianDiscretized { truncate, .. } => {
                statrs::function::erf::erfc(truncate / std::f64::consts::SQRT_2)
            }
            _ => 0.0,
        }
    }

    pub fn max_abs_support(&self) -> f64 {
        match self {
            AtomDistribution::GaussianDiscretized { truncate, .. } => *truncate,
            _ => self
                .support()
                .unwrap_or_default()
                .iter()
                .map(|(v, _)| v.abs().to_f64().unwrap_or(0.0))
                .fold(0.0, f64::max),
        }
    }
}

/// Exact Bernoulli(p) for rational p: uniform integer below the denominator.
fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: Rational64) -> bool {
    let (num, den) = (*p.numer(), *p.denom());
    if num <= 0 {
        return false;
    }
    if num >= den {
        return true;
    }
    rng.random_range(0..den) < num
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedSpec;

    #[test]
    fn json_forms() {
        let a: AtomDistribution = serde_json::from_str(r#"{"kind":"rademacher"}"#).unwrap();
        assert_eq!(a, AtomDistribution::Rademacher);
        let b: AtomDistribution =
            serde_json::from_str(r#"{"kind":"two-point","a":"1/2","b":-3,"p":0.25}"#).unwrap();
        assert_eq!(
            b,
            AtomDistribution::TwoPoint {
                a: Rat::new(1, 2),
                b: Rat::int(-3),
                p: Rat::new(1, 4)
            }
        );
        let g: AtomDistribution =
            serde_json::from_str(r#"{"kind":"gaussian-discretized"}"#).unwrap();
        assert_eq!(g, AtomDistribution::gaussian());
        let back: AtomDistribution = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn support_merges_and_drops_null_mass() {
        let t = AtomDistribution::TwoPoint {
            a: Rat::int(1),
            b: Rat::int(1),
            p: Rat::new(1, 3),
        };
        assert_eq!(t.support().unwrap(), vec![(Rational64::one(), Rational64::one())]);
        assert!(t.is_degenerate());
        let b = AtomDistribution::Bernoulli01 { p: Rat::int(1) };
        assert!(b.is_degenerate());
    }

    #[test]
    fn integer_scale_and_symmetry() {
        let t = AtomDistribution::TwoPoint {
            a: Rat::new(1, 2),
            b: Rat::new(-1, 3),
            p: Rat::new(1, 2),
        };
        assert_eq!(t.integer_scale(), 6);
        assert!(!t.is_integer_valued());
        assert!(!t.is_symmetric());
        assert!(AtomDistribution::Rademacher.is_symmetric());
        assert!(AtomDistribution::UniformInt { lo: -2, hi: 2 }.is_symmetric());
        assert!(!AtomDistribution::UniformInt { lo: -2, hi: 1 }.is_symmetric());
        assert!(!AtomDistribution::gaussian().is_integer_valued());
        assert_eq!(AtomDistribution::gaussian().integer_scale(), 1024);
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        assert!(AtomDistribution::Bernoulli01 { p: Rat::new(3, 2) }.validate().is_err());
        assert!(AtomDistribution::UniformInt { lo: 2, hi: 1 }.validate().is_err());
        assert!(AtomDistribution::GaussianDiscretized {
            step: Rat::int(0),
            truncate: 1.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn gaussian_samples_on_grid_and_truncated() {
        let g = AtomDistribution::gaussian();
        let mut rng = SeedSpec::new(3).rng();
        for _ in 0..10_000 {
            let v = g.sample(&mut rng);
            assert!((v * 1024).is_integer());
            assert!(v.to_f64().unwrap().abs() <= 8f64.sqrt() + 1.0 / 2048.0);
        }
        let gap = g.truncation_tv_gap();
        assert!((gap - 0.004677734981047).abs() < 1e-9, "{gap}");
    }

    #[test]
    fn bernoulli_frequency() {
        let a = AtomDistribution::Bernoulli01 { p: Rat::new(3, 10) };
        let mut rng = SeedSpec::new(11).rng();
        let n = 100_000;
        let ones = (0..n).filter(|_| a.sample(&mut rng).is_one()).count() as f64;
        let sigma = (0.3f64 * 0.7 / n as f64).sqrt();
        assert!((ones / n as f64 - 0.3).abs() < 4.0 * sigma);
    }
}
