//! Optimal improper Gaussian signaling for an underlay secondary multiple-access
//! channel with zero-forcing SIC at the base station.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod boundary;
pub mod canonicalize;
pub mod error;
pub mod hull;
pub mod model;
pub mod oracle;
pub mod presets;
pub mod single_user;

pub use boundary::{
    BoundaryPoint, Feasibility, RateProfile, Signaling, SolverOptions, solve_boundary_point, sweep_region,
};
pub use canonicalize::{CanonicalizationResult, ComplexMatrix, DecodeOrder, PhysicalScenario, to_canonical};
pub use error::{Error, Result};
pub use model::{CanonicalScenario, NoiseState, SignalParams};
pub use single_user::{SingleUserProblem, SingleUserSolution};
