//! Exact input vectors and floating unit vectors.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact input vector `b` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn ones(n: usize) -> Self {
        RationalVector(vec![BigRational::one(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_pairs(v: &[(i64, i64)]) -> Result<Self> {
        v.iter()
            .map(|&(p, q)| {
                if q == 0 {
                    Err(Error::InvalidInput("zero denominator".into()))
                } else {
                    Ok(BigRational::new(p.into(), q.into()))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Integer vector `c·b` where `c` is the LCM of the denominators.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self
            .0
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        (ints, lcm)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn norm_f64(&self) -> f64 {
        self.to_f64().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Parse one rational per line (`p`, `p/q`, or a finite decimal).
    pub fn parse_lines(text: &str) -> Result<Self> {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            writeln!(f, "{x}")?;
        }
        Ok(())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Floating vector with unit Euclidean norm (within `1e-10`).
#[derive(Clone, Debug, PartialEq)]
pub struct UnitFloatVector(Vec<f64>);

pub const UNIT_TOL: f64 = 1e-10;

impl UnitFloatVector {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v.is_empty() || !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(norm));
        }
        Ok(UnitFloatVector(v))
    }

    /// Scale a nonzero vector to unit length.
    pub fn normalized(v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotUnit(norm));
        }
        Ok(UnitFloatVector(v.into_iter().map(|x| x / norm).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Normalised restriction `x_I / ‖x_I‖`.
    pub fn restrict(&self, idx: &[usize]) -> Result<Self> {
        Self::normalized(idx.iter().map(|&i| self.0[i]).collect())
    }

    pub fn parse_lines(text: &str) -> Result<Self> {
        let v = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not a float: {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }
}

impl std::ops::Index<usize> for UnitFloatVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Absolute value of a rational as a float, for reporting.
pub fn rational_abs_f64(x: &BigRational) -> f64 {
    x.abs().to_f64().unwrap_or(f64::INFINITY)
}
