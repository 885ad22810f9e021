//! Generating-function analysis of games on Galton-Watson trees.

mod critical;
mod curve;
mod fixed;
mod pgf;
mod profile;

pub use critical::{critical_parameter, draws_within, CriticalReport, SCAN_POINTS};
pub use curve::{crossings, curve_data};
pub use fixed::{
    fixed_points, h_derivative, h_map, iterate_h, pn_sequence, sstar, FixedPointReport, GAP_TOLERANCE,
    GRID_POINTS, MARGINAL_GAP, MAX_ITERATIONS,
};
pub use pgf::{Family, FamilyKind, Pgf};
pub use profile::{reduce_chain, reduced_pgf, stability_profile, FiniteReason, LevelReport, StabilityProfile, Verdict};
