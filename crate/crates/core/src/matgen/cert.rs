use super::AtomDistribution;
use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use crate::stats::wilson_interval;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CertMethod {
    Analytic,
    Empirical { n_samples: usize },
}

/// Constants (ε₀, p₀, K₀) with P(|ξ−ξ′| ≤ ε₀) ≤ 1−p₀ and P(|ξ| > K₀) ≤ p₀/4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyCert {
    pub eps0: f64,
    pub p0: f64,
    pub k0: f64,
    pub method: CertMethod,
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite {x}")))
}

/// P(|ξ−ξ′| ≤ ε) and P(|ξ| > K) over a finite support, exactly.
fn tail_probs(
    support: &[(Rational64, Rational64)],
    eps: &BigRational,
    k: &BigRational,
) -> (BigRational, BigRational) {
    let mut close = BigRational::zero();
    let mut tail = BigRational::zero();
    for (a, pa) in support {
        let (a, pa) = (big(*a), big(*pa));
        if a.abs() > *k {
            tail += &pa;
        }
        for (b, pb) in support {
            if (&a - big(*b)).abs() <= *eps {
                close += &pa * big(*pb);
            }
        }
    }
    (close, tail)
}

impl NondegeneracyCert {
    /// Exact check of both inequalities on a finite support. Returns
    /// `None` for atoms without finite support.
    pub fn verify_exact(atom: &AtomDistribution, eps0: f64, p0: f64, k0: f64) -> Option<bool> {
        let support = atom.support()?;
        if !(eps0 > 0.0 && p0 > 0.0 && p0 < 1.0 && k0 > 0.0) {
            return Some(false);
        }
        let (eps, p, k) = (exact(eps0).ok()?, exact(p0).ok()?, exact(k0).ok()?);
        let (close, tail) = tail_probs(&support, &eps, &k);
        let four = BigRational::from_integer(4.into());
        Some(close <= BigRational::one() - &p && tail <= p / four)
    }

    pub fn verify(&self, atom: &AtomDistribution) -> Option<bool> {
        Self::verify_exact(atom, self.eps0, self.p0, self.k0)
    }
}

/// Certificate for an atom distribution.
///
/// Finite supports are handled analytically: ε₀ is a quarter of the smallest
/// gap between support points (so |ξ−ξ′| ≤ ε₀ iff ξ = ξ′), p₀ = 1 − P(ξ = ξ′)
/// and K₀ = max |ξ|. The discretized Gaussian falls back to
/// [`certify_empirical`] with 10⁶ samples.
pub fn certify_nondegeneracy(atom: &AtomDistribution) -> Result<NondegeneracyCert> {
    atom.validate()?;
    let Some(support) = atom.support() else {
        return certify_empirical(atom, 1_000_000, &SeedSpec::with_stream(0xce27, 0));
    };
    if support.len() < 2 {
        return Err(Error::NoCertificate(
            "degenerate distribution (single-point support)".into(),
        ));
    }
    let min_gap = support
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .min()
        .expect("two support points");
    let eps0 = min_gap / 4;
    let coincide: Rational64 = support.iter().map(|(_, p)| p * p).sum();
    let p0 = Rational64::one() - coincide;
    let k0 = support
        .iter()
        .map(|(v, _)| v.abs())
        .max()
        .expect("nonempty support");
    let k0 = if k0.is_zero() { Rational64::one() } else { k0 };
    let cert = NondegeneracyCert {
        eps0: round_toward(&eps0, false),
        p0: round_toward(&p0, false),
        k0: round_toward(&k0, true),
        method: CertMethod::Analytic,
    };
    match cert.verify(atom) {
        Some(true) => Ok(cert),
        _ => Err(Error::NoCertificate("rounding broke the certificate".into())),
    }
}

/// Nearest f64 on the requested side of an exact rational.
fn round_toward(r: &Rational64, up: bool) -> f64 {
    let x = r.to_f64().unwrap_or(0.0);
    let exact_r = big(*r);
    let xr = exact(x).expect("finite");
    if up && xr < exact_r {
        x.next_up()
    } else if !up && xr > exact_r {
        x.next_down()
    } else {
        x
    }
}

const Z99: f64 = 2.5758293035489;

/// Monte Carlo certificate with 99% Wilson upper bounds.
///
/// Tries ε₀ ∈ {½, ¼, ⅛, …} and keeps the first value whose upper bound on
/// P(|ξ−ξ′| ≤ ε₀) is below 1; then takes the smallest empirical |ξ| order
/// statistic whose upper tail bound is at most p₀/4.
pub fn certify_empirical(
    atom: &AtomDistribution,
    n_samples: usize,
    seed: &SeedSpec,
) -> Result<NondegeneracyCert> {
    if n_samples < 1000 {
        return Err(Error::InvalidInput("need at least 1000 samples".into()));
    }
    let mut ra = seed.tagged("cert-a", &[]).rng();
    let mut rb = seed.tagged("cert-b", &[]).rng();
    let xs: Vec<f64> = (0..n_samples).map(|_| atom.sample_f64(&mut ra)).collect();
    let ys: Vec<f64> = (0..n_samples).map(|_| atom.sample_f64(&mut rb)).collect();
    let mut eps0 = 0.5;
    let mut p0 = None;
    for _ in 0..30 {
        let close = xs.iter().zip(&ys).filter(|(a, b)| (*a - *b).abs() <= eps0).count();
        let (_, hi) = wilson_interval(close, n_samples, Z99);
        if hi < 1.0 {
            p0 = Some(1.0 - hi);
            break;
        }
        eps0 /= 2.0;
    }
    let p0 = p0.ok_or_else(|| Error::NoCertificate("no ε₀ gives anti-concentration".into()))?;
    let mut abs: Vec<f64> = xs.iter().map(|x| x.abs()).collect();
    abs.sort_by(|a, b| a.total_cmp(b));
    // choose K₀ = abs[i]; the tail count is the number of strictly larger samples
    let mut k0 = None;
    for i in 0..n_samples {
        if i + 1 < n_samples && abs[i + 1] == abs[i] {
            continue;
        }
        let tail = n_samples - 1 - i;
        let (_, hi) = wilson_interval(tail, n_samples, Z99);
        if hi <= p0 / 4.0 {
            k0 = Some(abs[i].max(f64::MIN_POSITIVE));
            break;
        }
    }
    let k0 = k0.ok_or_else(|| Error::NoCertificate("no K₀ controls the tail".into()))?;
    Ok(NondegeneracyCert {
        eps0,
        p0,
        k0,
        method: CertMethod::Empirical { n_samples },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgen::Rat;

    #[test]
    fn rademacher_matches_textbook_constants() {
        let r = AtomDistribution::Rademacher;
        assert_eq!(NondegeneracyCert::verify_exact(&r, 0.5, 0.5, 1.0), Some(true));
        let c = certify_nondegeneracy(&r).unwrap();
        assert_eq!((c.eps0, c.p0, c.k0), (0.5, 0.5, 1.0));
        assert_eq!(c.method, CertMethod::Analytic);
        // p₀ slightly larger breaks the first inequality
        assert_eq!(NondegeneracyCert::verify_exact(&r, 0.5, 0.51, 1.0), Some(false));
        // K₀ below 1 puts all mass in the tail
        assert_eq!(NondegeneracyCert::verify_exact(&r, 0.5, 0.5, 0.9), Some(false));
    }

    #[test]
    fn constant_is_degenerate() {
        let c = AtomDistribution::Constant { value: Rat::int(5) };
        assert!(matches!(certify_nondegeneracy(&c), Err(Error::NoCertificate(_))));
    }

    #[test]
    fn uniform_three_points() {
        // oracle: P(ξ = ξ′) = 3·(1/3)² = 1/3, so p₀ = 2/3
        let u = AtomDistribution::UniformInt { lo: -1, hi: 1 };
        let c = certify_nondegeneracy(&u).unwrap();
        assert!((c.p0 - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(c.eps0, 0.25);
        assert_eq!(c.k0, 1.0);
        assert_eq!(c.verify(&u), Some(true));
    }

    #[test]
    fn bernoulli_and_two_point() {
        let b = AtomDistribution::Bernoulli01 { p: Rat::new(1, 4) };
        let c = certify_nondegeneracy(&b).unwrap();
        // P(ξ=ξ′) = 1/16 + 9/16
        assert!((c.p0 - 6.0 / 16.0).abs() < 1e-15);
        assert_eq!(c.verify(&b), Some(true));
        let t = AtomDistribution::TwoPoint { a: Rat::new(1, 3), b: Rat::new(-2, 3), p: Rat::new(1, 3) };
        assert_eq!(certify_nondegeneracy(&t).unwrap().verify(&t), Some(true));
    }

    #[test]
    fn gaussian_empirical() {
        let g = AtomDistribution::gaussian();
        let c = certify_empirical(&g, 200_000, &SeedSpec::new(5)).unwrap();
        assert_eq!(c.eps0, 0.5);
        // P(|g−g′| ≤ ½) = P(|N(0,2)| ≤ ½) ≈ 0.2763
        assert!((c.p0 - (1.0 - 0.2763)).abs() < 0.01, "{c:?}");
        // P(|g| > K₀) ≤ p₀/4 ≈ 0.18 needs K₀ ≈ 1.34
        assert!(c.k0 > 1.2 && c.k0 < 1.5, "{c:?}");
        assert!(c.verify(&g).is_none());
    }
}
