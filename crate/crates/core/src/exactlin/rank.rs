use super::modp::PRIMES_31;
use super::{BigIntMatrix, PrimeFieldMatrix};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Exact rank over ℚ by fraction-free (Bareiss) elimination with full
/// pivoting on the largest absolute value.
pub fn rank_rational(m: &BigIntMatrix) -> usize {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone().into_rows();
    let mut prev = BigInt::one();
    for k in 0..r.min(c) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[bi][bj].magnitude() >= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else {
            return k;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..c {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
    }
    r.min(c)
}

/// Rank of `m` reduced modulo `prime`; never exceeds [`rank_rational`].
pub fn rank_mod_p(m: &BigIntMatrix, prime: u64) -> usize {
    PrimeFieldMatrix::from_bigint(m, prime).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankCertificate {
    /// Full rank modulo a prime, hence over ℤ.
    FullRankProved,
    /// Determinant vanishes modulo primes whose product exceeds the
    /// Hadamard bound, and some prime attains rank n−1.
    DeficiencyProvedModular,
    /// Rank deficiency settled by Bareiss elimination.
    DeficiencyProvedRational,
    /// Exact policy: Bareiss elimination, full rank or not.
    ExactRational,
}

/// How a rank deficiency seen modulo the screening prime is settled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deficiency {
    #[default]
    Rational,
    /// Multi-prime Hadamard certificate, falling back to Bareiss when it
    /// cannot pin the rank.
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "policy")]
pub enum RankPolicy {
    Fast { prime_seed: u64, deficiency: Deficiency },
    Exact,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy::Fast {
            prime_seed: 0,
            deficiency: Deficiency::Rational,
        }
    }
}

fn prime_index(seed: u64) -> usize {
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    ((z ^ (z >> 31)) % PRIMES_31.len() as u64) as usize
}

/// Rank with a certificate of how it was established.
pub fn rank_certified(m: &BigIntMatrix, policy: RankPolicy) -> (usize, RankCertificate) {
    let (prime_seed, deficiency) = match policy {
        RankPolicy::Exact => return (rank_rational(m), RankCertificate::ExactRational),
        RankPolicy::Fast {
            prime_seed,
            deficiency,
        } => (prime_seed, deficiency),
    };
    let full = m.rows().min(m.cols());
    let start = prime_index(prime_seed);
    let r0 = rank_mod_p(m, PRIMES_31[start]);
    if r0 == full {
        return (full, RankCertificate::FullRankProved);
    }
    if deficiency == Deficiency::Modular && m.rows() == m.cols() && full > 0 {
        if let Some(out) = modular_deficiency(m, start, r0) {
            return out;
        }
    }
    (rank_rational(m), RankCertificate::DeficiencyProvedRational)
}

/// det ≡ 0 modulo primes with product P, P² > H², gives det = 0. The
/// rank is then pinned when some prime reaches n−1.
fn modular_deficiency(
    m: &BigIntMatrix,
    start: usize,
    r0: usize,
) -> Option<(usize, RankCertificate)> {
    let n = m.rows();
    let h_sq = m.hadamard_bound_sq();
    let mut product = BigInt::from(PRIMES_31[start]);
    let mut best = r0;
    for step in 1..PRIMES_31.len() {
        if &product * &product > h_sq {
            break;
        }
        let p = PRIMES_31[(start + step) % PRIMES_31.len()];
        let r = rank_mod_p(m, p);
        if r == n {
            return Some((n, RankCertificate::FullRankProved));
        }
        best = best.max(r);
        product *= p;
    }
    if &product * &product <= h_sq {
        return None;
    }
    (best == n - 1).then_some((n - 1, RankCertificate::DeficiencyProvedModular))
}
