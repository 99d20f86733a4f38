//! Raise and Peel model on a periodic segment.
//!
//! Configurations are periodic Dyck paths ([`HeightProfile`]). The crate
//! provides the move rules, a continuous-time simulator, the exact rational
//! stationary state and the tilted generator whose Perron root is the scaled
//! cumulant generating function of the avalanche currents.

pub mod error;
pub mod formulas;
pub mod moves;
pub mod profile;
pub mod scgf;
pub mod sim;
pub mod stationary;
pub mod structure;

pub use error::{CoreError, Result};
pub use moves::{apply_move, classify_move, EventCounters, MoveClass, MoveDeltas, TransitionRecord};
pub use profile::{
    count_peaks, count_valleys, enumerate_states, enumerate_states_capped, in_omega_global,
    substrate, tile_count, HeightProfile, DEFAULT_ENUMERATION_CAP,
};
pub use scgf::{
    build_deformed, largest_eigenvalue, scgf, scgf_derivatives, DeformedMatrix, DeformedParams,
    SCGFResult, SolverOptions,
};
pub use sim::{
    mean_peaks_time_average, run_ensemble, simulate, simulate_logged, Estimate, LogRecord,
    SimConfig, TrajectorySummary,
};
pub use structure::{check_structure, StructureReport};
pub use stationary::{
    build_generator, exact_drifts, expected_peaks, observables, prob_omega_global,
    stationary_distribution, stationary_with, KernelMethod, SparseRationalMatrix, StateSpace,
    StationaryObservables, StationaryVector,
};

/// Formats a rational as `"num/den"`, including integers (`"3/1"`).
pub fn fraction_string(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
