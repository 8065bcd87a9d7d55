//! Lévy concentration estimates and the LCD-driven small-ball bounds.
//!
//! The constants C in the bounds are not known explicitly, so every
//! evaluator takes C as an argument; [`calibrate_linear_c`] and
//! [`calibrate_power_c`] fit the smallest C that makes a bound valid on a
//! given corpus.

mod bounds;
mod family;
mod levy;

pub use bounds::{
    calibrate_linear_c, calibrate_power_c, esseen_bound, esseen_integral, lcd_bound,
    lcd_coeff_bound, levy_atom_bound, matrix_bound, regularized_bound, tensorization_check,
    BoundEvaluation, BoundKind, ESSEEN_MAX_EVALS, ESSEEN_REL_TOL,
};
pub use family::{designed_family, family_report, FamilyMember, FamilyReport, FamilyRow, FAMILY_DIM};
pub use levy::{
    levy_estimate, levy_estimate_vector, levy_scalar, levy_scalar_multi, levy_vector,
    sample_weighted_sum, simple_bound_check, ConcentrationEstimate, SimpleBoundReport,
    DEFAULT_SAMPLES, MIN_SAMPLES,
};
