use super::{AtomDistribution, IntSymMatrix};
use crate::error::{Error, Result};
use crate::rng::SeedSpec;
use rand::Rng;

fn check_prob(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} = {p} is not a probability")))
    }
}

/// Off-diagonal bits come from the `edges` substream and loop bits from the
/// `loops` substream, so G(n,p,0) and G(n,p) share edges for equal seeds.
fn edge_bits(n: usize, p: f64, seed: &SeedSpec) -> Vec<bool> {
    let mut rng = seed.tagged("edges", &[]).rng();
    (0..n * n.saturating_sub(1) / 2)
        .map(|_| rng.random_bool(p))
        .collect()
}

/// Adjacency matrix of G(n,p).
pub fn sample_gnp(n: usize, p: f64, seed: &SeedSpec) -> Result<IntSymMatrix> {
    sample_gnpq(n, p, 0.0, seed)
}

/// Adjacency matrix of G(n,p,q): G(n,p) plus an independent loop at each
/// vertex with probability q.
pub fn sample_gnpq(n: usize, p: f64, q: f64, seed: &SeedSpec) -> Result<IntSymMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    check_prob("p", p)?;
    check_prob("q", q)?;
    let bits = edge_bits(n, p, seed);
    let loops: Vec<bool> = if q > 0.0 {
        let mut rng = seed.tagged("loops", &[]).rng();
        (0..n).map(|_| rng.random_bool(q)).collect()
    } else {
        vec![false; n]
    };
    // index of (i,j), i<j, in row-major strict upper triangle order
    let offset = |i: usize| i * (2 * n - i - 1) / 2;
    Ok(IntSymMatrix::from_upper(n, |i, j| {
        if i == j {
            loops[i] as i64
        } else {
            bits[offset(i) + (j - i - 1)] as i64
        }
    }))
}

/// Wigner matrix with off-diagonal atom ξ and diagonal atom ζ.
///
/// Both atoms must be integer-valued; rational atoms should be rescaled by
/// [`AtomDistribution::integer_scale`] and sampled with
/// [`sample_wigner_scaled`].
pub fn sample_wigner(
    n: usize,
    xi: &AtomDistribution,
    zeta: &AtomDistribution,
    seed: &SeedSpec,
) -> Result<IntSymMatrix> {
    for (name, a) in [("xi", xi), ("zeta", zeta)] {
        if !a.is_integer_valued() {
            return Err(Error::InvalidInput(format!(
                "{name} has non-integer support; scale by {} first",
                a.integer_scale()
            )));
        }
    }
    sample_wigner_scaled(n, xi, zeta, seed, 1)
}

/// Wigner matrix `scale·W`, exact when `scale` clears every denominator of
/// both atoms.
pub fn sample_wigner_scaled(
    n: usize,
    xi: &AtomDistribution,
    zeta: &AtomDistribution,
    seed: &SeedSpec,
    scale: i64,
) -> Result<IntSymMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    xi.validate()?;
    zeta.validate()?;
    for a in [xi, zeta] {
        if scale % a.integer_scale() != 0 {
            return Err(Error::InvalidInput(format!(
                "scale {scale} does not clear denominators ({})",
                a.integer_scale()
            )));
        }
    }
    let mut off = seed.tagged("xi", &[]).rng();
    let mut diag = seed.tagged("zeta", &[]).rng();
    Ok(IntSymMatrix::from_upper(n, |i, j| {
        if i == j {
            zeta.sample_scaled(&mut diag, scale)
        } else {
            xi.sample_scaled(&mut off, scale)
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `A ↦ 2A − 𝟏𝟏ᵀ`, 0/1 entries to ±1.
    Forward,
    /// `W ↦ (W + 𝟏𝟏ᵀ)/2`, ±1 entries to 0/1.
    Backward,
}

pub fn adjacency_wigner_shift(a: &IntSymMatrix, direction: ShiftDirection) -> Result<IntSymMatrix> {
    let n = a.n();
    let ok = |v: i64| match direction {
        ShiftDirection::Forward => v == 0 || v == 1,
        ShiftDirection::Backward => v == 1 || v == -1,
    };
    if let Some(v) = a.entries().iter().find(|&&v| !ok(v)) {
        return Err(Error::InvalidInput(format!(
            "entry {v} outside the domain of the {direction:?} shift"
        )));
    }
    Ok(IntSymMatrix::from_upper(n, |i, j| match direction {
        ShiftDirection::Forward => 2 * a.get(i, j) - 1,
        ShiftDirection::Backward => (a.get(i, j) + 1) / 2,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgen::Rat;

    #[test]
    fn gnp_extremes() {
        let s = SeedSpec::new(1);
        assert_eq!(sample_gnp(3, 0.0, &s).unwrap(), IntSymMatrix::zeros(3));
        assert_eq!(sample_gnp(3, 1.0, &s).unwrap(), IntSymMatrix::complete(3));
        assert_eq!(sample_gnpq(3, 1.0, 1.0, &s).unwrap(), IntSymMatrix::all_ones(3));
        assert!(sample_gnp(3, 1.5, &s).is_err());
        assert!(sample_gnp(0, 0.5, &s).is_err());
    }

    #[test]
    fn gnpq_with_q_zero_matches_gnp() {
        for m in 0..20 {
            let s = SeedSpec::with_stream(m, 3);
            let a = sample_gnp(15, 0.5, &s).unwrap();
            let b = sample_gnpq(15, 0.5, 0.0, &s).unwrap();
            let c = sample_gnpq(15, 0.5, 0.7, &s).unwrap();
            assert_eq!(a, b);
            for i in 0..15 {
                for j in 0..15 {
                    if i != j {
                        assert_eq!(a.get(i, j), c.get(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn wigner_small_example() {
        let zero = AtomDistribution::Constant { value: Rat::int(0) };
        for m in 0..10 {
            let w = sample_wigner(2, &AtomDistribution::Rademacher, &zero, &SeedSpec::new(m)).unwrap();
            assert_eq!(w.get(0, 0), 0);
            assert_eq!(w.get(1, 1), 0);
            assert!(w.get(0, 1).abs() == 1);
            assert!(w.is_symmetric());
        }
    }

    #[test]
    fn wigner_rejects_fractional_atoms() {
        let half = AtomDistribution::TwoPoint {
            a: Rat::new(1, 2),
            b: Rat::new(-1, 2),
            p: Rat::new(1, 2),
        };
        let s = SeedSpec::new(0);
        assert!(sample_wigner(3, &half, &AtomDistribution::Rademacher, &s).is_err());
        let w = sample_wigner_scaled(3, &half, &AtomDistribution::Rademacher, &s, 2).unwrap();
        assert!(w.entries().iter().all(|&v| v == 1 || v == -1 || v == 2 || v == -2));
        assert!(sample_wigner_scaled(3, &half, &AtomDistribution::Rademacher, &s, 3).is_err());
    }

    #[test]
    fn shift_examples() {
        let k2 = IntSymMatrix::complete(2);
        let w = adjacency_wigner_shift(&k2, ShiftDirection::Forward).unwrap();
        assert_eq!(w, IntSymMatrix::from_rows(&[vec![-1, 1], vec![1, -1]]).unwrap());
        assert_eq!(adjacency_wigner_shift(&w, ShiftDirection::Backward).unwrap(), k2);
        assert!(adjacency_wigner_shift(&w, ShiftDirection::Forward).is_err());
        assert!(adjacency_wigner_shift(&k2, ShiftDirection::Backward).is_err());
    }

    #[test]
    fn shift_round_trip_random() {
        for m in 0..100 {
            let s = SeedSpec::new(m);
            let a = sample_gnpq(9, 0.5, 0.5, &s).unwrap();
            let w = adjacency_wigner_shift(&a, ShiftDirection::Forward).unwrap();
            assert_eq!(adjacency_wigner_shift(&w, ShiftDirection::Backward).unwrap(), a);
        }
    }
}
