//! Random models: atom distributions, Erdős–Rényi graphs with and without
//! loops, Wigner matrices, and the adjacency ↔ ±1 rank-one shift.

mod atom;
mod cert;
mod matrix;
mod norm;
mod sample;

pub use atom::{AtomDistribution, Rat};
pub use cert::{certify_empirical, certify_nondegeneracy, CertMethod, NondegeneracyCert};
pub use matrix::IntSymMatrix;
pub use norm::{spectral_norm_event, NormStatus, SpectralNormEvent};
pub use sample::{
    adjacency_wigner_shift, sample_gnp, sample_gnpq, sample_wigner, ShiftDirection,
};
