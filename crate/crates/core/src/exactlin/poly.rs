use super::modp::{inv_mod, mul_mod, sub_mod};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree order with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by a nonzero `d`.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().expect("nonzero divisor").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let lead = r.last().expect("nonempty").clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &lead * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPolynomial::new(r)
    }

    /// Primitive gcd by the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// True iff gcd(f, f′) is a constant. For the characteristic polynomial of
/// a real symmetric matrix this is equivalent to a simple spectrum.
pub fn is_squarefree(f: &IntPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    Ok(f.gcd(&f.derivative()).degree() == Some(0))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let f = mul_mod(*r.last().expect("nonempty"), inv, p);
        for (k, &bc) in b.iter().enumerate() {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(f, bc, p), p);
        }
        trim(&mut r);
    }
    r
}

/// Square-free screen over 𝔽_p. `Some(true)` proves `f` square-free over ℚ
/// (the discriminant is nonzero mod p); `Some(false)` is inconclusive over
/// ℚ. `None` when p divides the leading coefficient.
pub fn is_squarefree_mod_p(f: &[u64], p: u64) -> Option<bool> {
    let mut a = f.to_vec();
    trim(&mut a);
    if a.len() != f.len() || a.is_empty() {
        return None;
    }
    let mut b: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
        .collect();
    trim(&mut b);
    if b.is_empty() {
        return Some(a.len() == 1);
    }
    while !b.is_empty() {
        let r = rem_mod_p(&a, &b, p);
        a = b;
        b = r;
    }
    Some(a.len() == 1)
}
