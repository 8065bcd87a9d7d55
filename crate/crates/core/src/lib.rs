//! Exact controllability of random graphs and Wigner matrices.
//!
//! The crate is organised around six layers:
//!
//! - [`matgen`]: atom distributions, G(n,p), G(n,p,q) and Wigner sampling,
//!   the adjacency/±1 rank-one shift and the spectral-norm event.
//! - [`exactlin`]: big-integer and prime-field linear algebra (Krylov
//!   matrices, Bareiss rank, modular rank, characteristic polynomials,
//!   square-free tests).
//! - [`control`]: the Kalman rank verdict, the floating PBH screen, simple
//!   spectrum and the rank-one-shift equivalence.
//! - [`eigstruct`]: LCD, regularized LCD, compressibility, spread sets,
//!   delocalization and sphere nets.
//! - [`smallball`]: Lévy concentration estimates and small-ball bound
//!   evaluators.
//! - [`harness`]: seeded Monte Carlo campaigns and CSV output.
//!
//! Every random draw goes through [`rng::SeedSpec`], a counter-based stream
//! keyed by a master seed and a stream id, so any trial can be replayed in
//! isolation and results do not depend on the thread count.

pub mod control;
pub mod eigen;
pub mod eigstruct;
pub mod error;
pub mod exactlin;
pub mod harness;
pub mod matgen;
pub mod rng;
pub mod smallball;
pub mod stats;
pub mod vectors;

pub use error::{Error, Result};
pub use matgen::IntSymMatrix;
pub use rng::SeedSpec;
pub use vectors::{RationalVector, UnitFloatVector};
