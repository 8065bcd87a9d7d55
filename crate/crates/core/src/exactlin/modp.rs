use super::BigIntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// The 32 largest primes below 2³¹, descending.
pub const PRIMES_31: [u64; 32] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
    2147483497, 2147483489, 2147483477, 2147483423, 2147483399, 2147483353, 2147483323,
    2147483269, 2147483249, 2147483237, 2147483179, 2147483171, 2147483137, 2147483123,
    2147483077, 2147483069, 2147483059, 2147483053, 2147483033, 2147483029, 2147482951,
    2147482949, 2147482943, 2147482937, 2147482921,
];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

pub(crate) fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Matrix over 𝔽_p for a prime p < 2³¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn from_bigint(m: &BigIntMatrix, modulus: u64) -> Self {
        assert!(modulus < (1 << 31), "modulus must fit in 31 bits");
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                data.push(reduce(m.get(i, j), modulus));
            }
        }
        PrimeFieldMatrix {
            modulus,
            rows: m.rows(),
            cols: m.cols(),
            data,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    /// Rank by Gaussian elimination, first nonzero pivot in each column.
    pub fn rank(&self) -> usize {
        let p = self.modulus;
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(piv) = (rank..r).find(|&i| a[i * c + col] != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..c {
                    a.swap(piv * c + j, rank * c + j);
                }
            }
            let inv = inv_mod(a[rank * c + col], p);
            for j in col..c {
                a[rank * c + j] = mul_mod(a[rank * c + j], inv, p);
            }
            for i in rank + 1..r {
                let f = a[i * c + col];
                if f == 0 {
                    continue;
                }
                for j in col..c {
                    let t = mul_mod(f, a[rank * c + j], p);
                    a[i * c + j] = sub_mod(a[i * c + j], t, p);
                }
            }
            rank += 1;
        }
        rank
    }
}
