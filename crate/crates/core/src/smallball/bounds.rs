use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const ESSEEN_REL_TOL: f64 = 1e-6;
pub const ESSEEN_MAX_EVALS: usize = 1_000_000;
const ESSEEN_PANELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    LcdScalar,
    LcdCoeff,
    Regularized,
    MatrixRegularized,
    Simple,
    Esseen,
    LevyAtom,
    Tensorization,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEvaluation {
    pub kind: BoundKind,
    pub value: f64,
    pub constants_used: BTreeMap<String, f64>,
}

fn eval(kind: BoundKind, value: f64, constants: &[(&str, f64)]) -> BoundEvaluation {
    BoundEvaluation {
        kind,
        value,
        constants_used: constants.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn common(t: f64, l: f64, d: f64, c: f64) -> Result<()> {
    precondition(t >= 0.0, || format!("t must be nonnegative, got {t}"))?;
    precondition(l >= 1.0, || format!("L must be at least 1, got {l}"))?;
    precondition(d >= l, || format!("D = {d} must be at least L = {l}"))?;
    precondition(c >= 0.0 && c.is_finite(), || format!("C must be finite and nonnegative, got {c}"))
}

/// C·L·(t + 1/D) clamped to [0, 1]. `D` may be infinite.
pub fn lcd_bound(t: f64, l: f64, d: f64, c: f64) -> Result<BoundEvaluation> {
    common(t, l, d, c)?;
    let v = (c * l * (t + 1.0 / d)).min(1.0);
    Ok(eval(BoundKind::LcdScalar, v, &[("C", c), ("L", l), ("D", d), ("t", t)]))
}

/// The coefficient variant: same formula, with L ≥ p₀^{-1/2}·K enforced.
pub fn lcd_coeff_bound(t: f64, l: f64, d: f64, c: f64, p0: f64, k: f64) -> Result<BoundEvaluation> {
    precondition(p0 > 0.0 && p0 < 1.0, || format!("p0 must lie in (0,1), got {p0}"))?;
    precondition(l >= k / p0.sqrt(), || format!("L = {l} is below p0^(-1/2)·K"))?;
    let mut e = lcd_bound(t, l, d, c)?;
    e.kind = BoundKind::LcdCoeff;
    e.constants_used.insert("p0".into(), p0);
    e.constants_used.insert("K".into(), k);
    Ok(e)
}

fn regularized_base(t: f64, l: f64, gamma: f64, d_hat: f64, c: f64) -> Result<f64> {
    common(t, l, d_hat, c)?;
    // c₂ = ¼c₀c₁² < ¼ for c₀, c₁ ∈ (0,1)
    precondition(gamma > 0.0 && gamma < 0.25, || format!("gamma must lie in (0, 1/4), got {gamma}"))?;
    Ok(c * l * (t / gamma.sqrt() + 1.0 / d_hat))
}

/// C·L·(t/√γ + 1/D̂) clamped to [0, 1].
pub fn regularized_bound(t: f64, l: f64, gamma: f64, d_hat: f64, c: f64) -> Result<BoundEvaluation> {
    let base = regularized_base(t, l, gamma, d_hat, c)?;
    Ok(eval(
        BoundKind::Regularized,
        base.min(1.0),
        &[("C", c), ("L", l), ("gamma", gamma), ("D_hat", d_hat), ("t", t)],
    ))
}

/// [C·L·(t/√γ + 1/D̂)]^(n − ⌈γn⌉) clamped to [0, 1].
pub fn matrix_bound(t: f64, l: f64, gamma: f64, d_hat: f64, c: f64, n: usize) -> Result<BoundEvaluation> {
    let base = regularized_base(t, l, gamma, d_hat, c)?;
    let k = crate::eigstruct::ceil_count(gamma * n as f64);
    let exp = n.saturating_sub(k);
    let v = if base >= 1.0 { 1.0 } else { base.powi(exp as i32) };
    Ok(eval(
        BoundKind::MatrixRegularized,
        v,
        &[("C", c), ("L", l), ("gamma", gamma), ("D_hat", d_hat), ("t", t), ("n", n as f64)],
    ))
}

/// √(1 − p₀/2), the bound on 𝓛(ξ, ε₀/2).
pub fn levy_atom_bound(p0: f64) -> Result<BoundEvaluation> {
    precondition(p0 > 0.0 && p0 < 1.0, || format!("p0 must lie in (0,1), got {p0}"))?;
    Ok(eval(BoundKind::LevyAtom, (1.0 - p0 / 2.0).sqrt(), &[("p0", p0)]))
}

/// [C·M·(t + t₀)]ⁿ clamped to [0, 1].
pub fn tensorization_check(m: f64, t0: f64, n: usize, t: f64, c: f64) -> Result<BoundEvaluation> {
    precondition(m >= 0.0 && t0 >= 0.0 && t >= 0.0 && c >= 0.0, || {
        "M, t0, t and C must be nonnegative".to_string()
    })?;
    let base = c * m * (t + t0);
    let v = if base >= 1.0 { 1.0 } else { base.powi(n as i32) };
    Ok(eval(
        BoundKind::Tensorization,
        v,
        &[("C", c), ("M", m), ("t0", t0), ("t", t), ("n", n as f64)],
    ))
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

struct Quad<'a, F> {
    f: &'a F,
    evals: usize,
    max_evals: usize,
}

impl<F: Fn(f64) -> f64> Quad<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn adapt(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = ((self.f)(lm).abs(), (self.f)(rm).abs());
        self.evals += 2;
        if self.evals > self.max_evals || depth > 60 {
            return Err(Error::Unresolved("Esseen quadrature did not converge".into()));
        }
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(self.adapt(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)?
            + self.adapt(m, b, fm, frm, fb, right, tol / 2.0, depth + 1)?)
    }
}

/// ∫₋₁¹ |φ(θ)| dθ by adaptive Simpson to relative tolerance 10⁻⁶, starting
/// from 16 panels so that periodic integrands are not undersampled.
pub fn esseen_integral(phi: impl Fn(f64) -> f64, max_evals: usize) -> Result<f64> {
    let mut q = Quad {
        f: &phi,
        evals: 0,
        max_evals,
    };
    let h = 2.0 / ESSEEN_PANELS as f64;
    let panels: Vec<(f64, f64, f64, f64, f64)> = (0..ESSEEN_PANELS)
        .map(|i| {
            let a = -1.0 + h * i as f64;
            let b = a + h;
            (a, b, phi(a).abs(), phi(0.5 * (a + b)).abs(), phi(b).abs())
        })
        .collect();
    q.evals += 3 * ESSEEN_PANELS;
    let rough: f64 = panels.iter().map(|&(a, b, fa, fm, fb)| simpson(fa, fm, fb, a, b)).sum();
    let tol = ESSEEN_REL_TOL * rough.abs().max(1e-12) / ESSEEN_PANELS as f64;
    let mut total = 0.0;
    for (a, b, fa, fm, fb) in panels {
        total += q.adapt(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 0)?;
    }
    if !total.is_finite() {
        return Err(Error::Unresolved("Esseen integrand is not finite".into()));
    }
    Ok(total)
}

/// C·∫₋₁¹|φ|, a bound on 𝓛(Y, 1).
pub fn esseen_bound(phi: impl Fn(f64) -> f64, c: f64, max_evals: usize) -> Result<BoundEvaluation> {
    precondition(c >= 0.0, || format!("C must be nonnegative, got {c}"))?;
    let integral = esseen_integral(phi, max_evals)?;
    Ok(eval(BoundKind::Esseen, c * integral, &[("C", c), ("integral", integral)]))
}

/// Smallest C with C·base ≥ empirical over (empirical, base) pairs, for
/// bounds linear in C.
pub fn calibrate_linear_c(pairs: &[(f64, f64)]) -> Option<f64> {
    pairs
        .iter()
        .filter(|(_, base)| *base > 0.0)
        .map(|(emp, base)| emp / base)
        .max_by(f64::total_cmp)
}

/// Smallest C with (C·base)ⁿ ≥ empirical over (empirical, base, n) triples.
pub fn calibrate_power_c(triples: &[(f64, f64, usize)]) -> Option<f64> {
    triples
        .iter()
        .filter(|(_, base, n)| *base > 0.0 && *n > 0)
        .map(|(emp, base, n)| emp.powf(1.0 / *n as f64) / base)
        .max_by(f64::total_cmp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn lcd_bound_examples() {
        assert_eq!(lcd_bound(0.0, 2.0, f64::INFINITY, 1.0).unwrap().value, 0.0);
        assert_eq!(lcd_bound(0.0, 2.0, 2.0, 1.0).unwrap().value, 1.0);
        assert!(lcd_bound(0.0, 2.0, 1.5, 1.0).is_err());
        assert!(lcd_coeff_bound(0.0, 2.0, 4.0, 1.0, 0.5, 2.0).is_err());
        assert!(lcd_coeff_bound(0.0, 3.0, 4.0, 1.0, 0.5, 2.0).is_ok());
    }

    #[test]
    fn regularized_forms() {
        let r = regularized_bound(0.0, 2.0, 0.1, f64::INFINITY, 1.0).unwrap();
        let m = matrix_bound(0.0, 2.0, 0.1, f64::INFINITY, 1.0, 30).unwrap();
        assert_eq!((r.value, m.value), (0.0, 0.0));
        assert_eq!(matrix_bound(1.0, 2.0, 0.1, 2.0, 1.0, 30).unwrap().value, 1.0);
        let r = regularized_bound(0.001, 2.0, 0.1, 50.0, 1.0).unwrap();
        let m = matrix_bound(0.001, 2.0, 0.1, 50.0, 1.0, 30).unwrap();
        assert!(r.value < 1.0 && m.value < r.value);
        assert!(regularized_bound(0.0, 2.0, 0.3, 5.0, 1.0).is_err());
    }

    #[test]
    fn tensorization_examples() {
        assert_eq!(tensorization_check(3.0, 0.0, 5, 0.0, 1.0).unwrap().value, 0.0);
        let one = tensorization_check(2.0, 0.1, 1, 0.1, 1.5).unwrap().value;
        assert!((one - 1.5 * 2.0 * 0.2).abs() < 1e-15);
    }

    #[test]
    fn esseen_integrals() {
        assert!((esseen_integral(|_| 1.0, ESSEEN_MAX_EVALS).unwrap() - 2.0).abs() < 1e-12);
        let rad = esseen_integral(|t| (2.0 * PI * t).cos(), ESSEEN_MAX_EVALS).unwrap();
        assert!((rad - 4.0 / PI).abs() < 1e-6, "{rad}");
        // Gaussian with variance 1: φ(θ) = exp(−2π²θ²)
        let g = esseen_integral(|t| (-2.0 * PI * PI * t * t).exp(), ESSEEN_MAX_EVALS).unwrap();
        let exact = statrs::function::erf::erf(2f64.sqrt() * PI) / (2.0 * PI).sqrt();
        assert!((g - exact).abs() < 1e-7, "{g} vs {exact}");
        assert!(esseen_integral(|t| (1e6 * t).sin() / t.abs().max(1e-300), 200).is_err());
    }

    #[test]
    fn calibration() {
        assert_eq!(calibrate_linear_c(&[(0.5, 0.25), (0.2, 0.4), (0.1, 0.0)]), Some(2.0));
        let c = calibrate_power_c(&[(1.0 / 64.0, 0.5, 6)]).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn bounds_are_monotone(t1 in 0.0f64..1.0, dt in 0.0f64..1.0, d1 in 2.0f64..1e4, dd in 0.0f64..1e4, c in 0.0f64..5.0, n in 2usize..80) {
            let (t2, d2) = (t1 + dt, d1 + dd);
            prop_assert!(lcd_bound(t1, 2.0, d1, c).unwrap().value <= lcd_bound(t2, 2.0, d1, c).unwrap().value);
            prop_assert!(lcd_bound(t1, 2.0, d2, c).unwrap().value <= lcd_bound(t1, 2.0, d1, c).unwrap().value);
            prop_assert!(regularized_bound(t1, 2.0, 0.05, d1, c).unwrap().value <= regularized_bound(t2, 2.0, 0.05, d1, c).unwrap().value);
            prop_assert!(regularized_bound(t1, 2.0, 0.05, d2, c).unwrap().value <= regularized_bound(t1, 2.0, 0.05, d1, c).unwrap().value);
            prop_assert!(matrix_bound(t1, 2.0, 0.05, d1, c, n).unwrap().value <= matrix_bound(t2, 2.0, 0.05, d1, c, n).unwrap().value);
            prop_assert!(matrix_bound(t1, 2.0, 0.05, d2, c, n).unwrap().value <= matrix_bound(t1, 2.0, 0.05, d1, c, n).unwrap().value);
            prop_assert!(tensorization_check(1.0, 0.0, n, t1, c).unwrap().value <= tensorization_check(1.0, 0.0, n, t2, c).unwrap().value);
        }

        #[test]
        fn esseen_integral_at_most_two(a in 0.1f64..20.0) {
            let v = esseen_integral(|t| (a * t).cos(), ESSEEN_MAX_EVALS).unwrap();
            prop_assert!(v <= 2.0 + 1e-9);
        }
    }
}
