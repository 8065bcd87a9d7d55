//! Exact linear algebra over ℤ, ℚ and 31-bit prime fields.

mod bigmat;
mod charpoly;
mod modp;
mod poly;
mod rank;

pub use bigmat::{build_krylov, BigIntMatrix};
pub use charpoly::{charpoly_int, charpoly_mod_p, det_bareiss};
pub use modp::{PrimeFieldMatrix, PRIMES_31};
pub use poly::{is_squarefree, is_squarefree_mod_p, IntPolynomial};
pub use rank::{rank_certified, rank_mod_p, rank_rational, Deficiency, RankCertificate, RankPolicy};
