//! Controllability of (A, b) for symmetric integer A.
//!
//! [`is_controllable`] is the authoritative exact Kalman test. [`pbh_screen`]
//! is a floating-point diagnostic based on eigenvector dot products and is
//! never reported as exact.

use crate::eigen::{dot, eigh};
use crate::error::{Error, Result};
use crate::exactlin::{
    build_krylov, charpoly_int, charpoly_mod_p, is_squarefree, is_squarefree_mod_p,
    rank_certified, RankCertificate, RankPolicy, PRIMES_31,
};
use crate::matgen::IntSymMatrix;
use crate::vectors::RationalVector;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Default PBH tolerance, relative to ‖b‖.
pub const PBH_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    KalmanModular,
    KalmanRational,
    PbhFloatScreen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    FullRankProved,
    DeficiencyProvedModular,
    DeficiencyProvedRational,
    ExactRational,
    /// Floating-point screen result.
    Advisory,
    /// The eigensolver failed.
    Unresolved,
}

impl From<RankCertificate> for Certificate {
    fn from(c: RankCertificate) -> Self {
        match c {
            RankCertificate::FullRankProved => Certificate::FullRankProved,
            RankCertificate::DeficiencyProvedModular => Certificate::DeficiencyProvedModular,
            RankCertificate::DeficiencyProvedRational => Certificate::DeficiencyProvedRational,
            RankCertificate::ExactRational => Certificate::ExactRational,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControllabilityVerdict {
    pub controllable: bool,
    pub method: Method,
    /// Kalman rank for exact methods; the estimated rank for the screen.
    pub rank: usize,
    pub certificate: Certificate,
    /// Index (in ascending eigenvalue order) of the eigenvector closest to
    /// orthogonal to b, for uncontrollable screen verdicts.
    pub witness: Option<usize>,
}

impl ControllabilityVerdict {
    pub fn is_exact(&self) -> bool {
        self.method != Method::PbhFloatScreen
    }
}

fn check_dims(a: &IntSymMatrix, b: &RationalVector) -> Result<()> {
    if a.n() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: b.len(),
        });
    }
    Ok(())
}

/// Exact Kalman test: rank [b, Ab, …, Aⁿ⁻¹b] = n.
pub fn is_controllable(
    a: &IntSymMatrix,
    b: &RationalVector,
    policy: RankPolicy,
) -> Result<ControllabilityVerdict> {
    check_dims(a, b)?;
    let k = build_krylov(a, b)?;
    let (rank, cert) = rank_certified(&k, policy);
    let method = match cert {
        RankCertificate::FullRankProved | RankCertificate::DeficiencyProvedModular => {
            Method::KalmanModular
        }
        _ => Method::KalmanRational,
    };
    Ok(ControllabilityVerdict {
        controllable: rank == a.n(),
        method,
        rank,
        certificate: cert.into(),
        witness: None,
    })
}

/// Floating PBH screen. Eigenvalues closer than `tol` are grouped, and the
/// estimated Kalman rank is the number of groups on which b has a
/// projection of norm at least `tol·‖b‖`.
pub fn pbh_screen(a: &IntSymMatrix, b: &RationalVector, tol: f64) -> Result<ControllabilityVerdict> {
    check_dims(a, b)?;
    let n = a.n();
    let bf = b.to_f64();
    let bnorm = dot(&bf, &bf).sqrt();
    let eig = match eigh(a) {
        Ok(e) => e,
        Err(_) => {
            return Ok(ControllabilityVerdict {
                controllable: false,
                method: Method::PbhFloatScreen,
                rank: 0,
                certificate: Certificate::Unresolved,
                witness: None,
            })
        }
    };
    let dots: Vec<f64> = eig.eigenvectors.iter().map(|v| dot(v, &bf)).collect();
    let witness = (0..n).min_by(|&i, &j| dots[i].abs().total_cmp(&dots[j].abs()));
    let mut rank = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[end] - eig.eigenvalues[end - 1] < tol {
            end += 1;
        }
        let proj = dots[start..end].iter().map(|d| d * d).sum::<f64>().sqrt();
        if proj >= tol * bnorm {
            rank += 1;
        }
        start = end;
    }
    let controllable = rank == n && (n == 0 || bnorm > 0.0);
    Ok(ControllabilityVerdict {
        controllable,
        method: Method::PbhFloatScreen,
        rank,
        certificate: Certificate::Advisory,
        witness: if controllable { None } else { witness },
    })
}

/// Primes tried by the modular square-free screen before falling back to
/// exact integer arithmetic.
const SQUAREFREE_SCREEN_PRIMES: usize = 2;

/// Exact simple-spectrum test: the characteristic polynomial is square-free.
/// A square-free reduction modulo a prime proves the claim; otherwise the
/// integer gcd(χ, χ′) decides.
pub fn simple_spectrum(a: &IntSymMatrix) -> bool {
    if a.n() <= 1 {
        return true;
    }
    for &p in PRIMES_31.iter().take(SQUAREFREE_SCREEN_PRIMES) {
        if is_squarefree_mod_p(&charpoly_mod_p(a, p), p) == Some(true) {
            return true;
        }
    }
    is_squarefree(&charpoly_int(a)).expect("characteristic polynomial is monic")
}

/// A + γbbᵀ scaled by the least common denominator, as an integer matrix.
/// Scaling A by a nonzero constant preserves the Kalman rank.
pub fn rank_one_shift(a: &IntSymMatrix, b: &RationalVector, gamma: &BigRational) -> Result<IntSymMatrix> {
    check_dims(a, b)?;
    let n = a.n();
    let shifted: Vec<BigRational> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            BigRational::from_integer(a.get(i, j).into()) + gamma * &b.0[i] * &b.0[j]
        })
        .collect();
    let lcm = shifted
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut entries = Vec::with_capacity(n * n);
    for x in &shifted {
        let v = (x * BigRational::from_integer(lcm.clone())).to_integer();
        entries.push(v.to_i64().ok_or_else(|| {
            Error::InvalidInput("shifted matrix does not fit in 64-bit entries".into())
        })?);
    }
    Ok(IntSymMatrix::from_upper(n, |i, j| entries[i * n + j]))
}

/// (A, b) and (A + γbbᵀ, b) receive the same exact verdict.
pub fn shift_equivalence_check(
    a: &IntSymMatrix,
    b: &RationalVector,
    gamma: &BigRational,
    policy: RankPolicy,
) -> Result<bool> {
    let shifted = if gamma.is_zero() {
        a.clone()
    } else {
        rank_one_shift(a, b, gamma)?
    };
    let before = is_controllable(a, b, policy)?;
    let after = is_controllable(&shifted, b, policy)?;
    Ok(before.controllable == after.controllable)
}

/// Ascending |vᵢᵀb| over the unit eigenvectors of W. Requires a simple
/// spectrum, so that each vᵢ is determined up to sign.
pub fn eigvec_dot_profile(w: &IntSymMatrix, b: &RationalVector) -> Result<Vec<f64>> {
    check_dims(w, b)?;
    if !simple_spectrum(w) {
        return Err(Error::Precondition(
            "spectrum is not simple; eigenvectors are not unique".into(),
        ));
    }
    let bf = b.to_f64();
    let eig = eigh(w)?;
    let mut dots: Vec<f64> = eig.eigenvectors.iter().map(|v| dot(v, &bf).abs()).collect();
    dots.sort_by(f64::total_cmp);
    Ok(dots)
}
