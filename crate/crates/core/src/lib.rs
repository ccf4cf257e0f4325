//! Dam-break flow over a bed step for the shallow-water equations.
//!
//! The upstream reservoir drains through a backward shock into a state that
//! sits against the step; a shadow-wave connection carries it over the step
//! and a forward rarefaction empties into the dry bed downstream. Among the
//! admissible connections the one dissipating the most energy is selected.

// `!(x > 0.0)` is used on purpose so NaN is rejected along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod connection;
pub mod cubic;
pub mod damsolver;
pub mod error;
pub mod leftwaves;
pub mod sampler;
pub mod search;
pub mod state;
pub mod verify;
pub mod wavecurves;

pub use connection::{optimal_connection, Connection, ConnectionBranch};
pub use damsolver::{solve_dam, Branch, DamOutcome, DamProblem, DamSolution, NoFlow, NoFlowReason};
pub use error::{Error, Result};
pub use leftwaves::{classify_left, LeftWavePattern, PatternKind};
pub use sampler::{Sample, SolutionField};
pub use state::{eta, flux_q, froude, BedStep, Gravity, State};
pub use verify::{check_connection, check_solution, grid_min_e, mass_balance, ResidualReport};
pub use wavecurves::{char_speeds, fan_state, FanParams, WaveFamily};
