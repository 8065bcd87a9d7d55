//! Seeded Monte Carlo campaigns and their CSV output.
//!
//! Trials are the unit of parallelism. Trial `t` at dimension `n` draws from
//! a stream derived from (master seed, model family, n, t) and results are
//! collected in (n, t) order, so output does not depend on the thread count.
//! Sweeps over graphs share the `graph` family, so a loops sweep with q = 0
//! reproduces the plain sweep exactly; Wigner experiments share the
//! `wigner` family.

mod config;
mod enumerate;
mod output;
mod runners;

pub use config::{Experiment, ExperimentConfig};
pub use enumerate::{enumerate_small, EnumerationCount, MAX_ENUMERATION_N};
pub use output::{
    DotProfileRow, DotProfileSummary, DotProfileTable, EigRow, EigStructureSummary,
    EigStructureTable, ExperimentOutput, FamilyTable, PowerFit, SweepRow, SweepTable,
    SymmetrizationRow, SymmetrizationSummary, SymmetrizationTable, TrialRecord, TrialValues, DOT_PROFILE_HEADER,
    EIG_STRUCTURE_HEADER, SWEEP_HEADER,
};
pub use runners::{
    graph_seed, run_dot_profile, run_eig_structure, run_experiment, run_godsil_sweep,
    run_loops_sweep, run_simple_spectrum, run_smallball_family, run_symmetrization, sign_symmetrize,
    wigner_seed, write_output, FAMILY_RADII,
};
