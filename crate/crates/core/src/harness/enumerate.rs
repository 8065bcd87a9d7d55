use crate::control::is_controllable;
use crate::error::{Error, Result};
use crate::exactlin::{build_krylov, rank_rational, RankPolicy};
use crate::matgen::IntSymMatrix;
use crate::vectors::RationalVector;
use serde::{Deserialize, Serialize};

pub const MAX_ENUMERATION_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCount {
    pub n: usize,
    pub graphs: u64,
    /// Controllable (A, 𝟏) by exact rational rank.
    pub controllable: u64,
    /// Graphs where the modular fast path disagreed.
    pub fast_path_mismatches: u64,
}

impl EnumerationCount {
    pub fn to_csv(&self) -> String {
        format!("n,graphs,controllable\n{},{},{}\n", self.n, self.graphs, self.controllable)
    }
}

/// Every labeled simple graph on `n` ≤ 5 vertices.
pub fn enumerate_small(n: usize) -> Result<EnumerationCount> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "enumeration supports 1 ≤ n ≤ {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let ones = RationalVector::ones(n);
    let mut out = EnumerationCount {
        n,
        graphs: 0,
        controllable: 0,
        fast_path_mismatches: 0,
    };
    for mask in 0u64..1 << pairs.len() {
        let a = IntSymMatrix::from_upper(n, |i, j| {
            pairs
                .iter()
                .position(|&p| p == (i, j))
                .map_or(0, |k| ((mask >> k) & 1) as i64)
        });
        let exact = rank_rational(&build_krylov(&a, &ones)?) == n;
        let fast = is_controllable(&a, &ones, RankPolicy::default())?.controllable;
        out.graphs += 1;
        out.controllable += exact as u64;
        out.fast_path_mismatches += (exact != fast) as u64;
    }
    Ok(out)
}
