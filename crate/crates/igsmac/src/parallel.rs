//! Rayon-backed sweeps and oracle searches. Results match the sequential
//! versions bit for bit.

use igsmac_core::boundary::{solve_boundary_point, sort_by_first_rate, sweep_profiles, BoundaryPoint, RateProfile};
use igsmac_core::oracle::{brute_boundary_slice, check_oracle_size, OracleBoundary};
use igsmac_core::{CanonicalScenario, Error, Result, Signaling, SolverOptions};
use rayon::prelude::*;

/// Boundary points for many profiles, in input order.
pub fn solve_profiles(profiles: &[RateProfile], scenario: &CanonicalScenario, opts: &SolverOptions) -> Result<Vec<BoundaryPoint>> {
    profiles.par_iter().map(|p| solve_boundary_point(p, scenario, opts)).collect()
}

/// Parallel counterpart of `igsmac_core::sweep_region`.
pub fn sweep_region(scenario: &CanonicalScenario, n: usize, signaling: Signaling) -> Result<Vec<BoundaryPoint>> {
    if scenario.users() != 2 {
        return Err(Error::Invalid("region sweeps need exactly two users".into()));
    }
    let opts = SolverOptions { signaling, ..SolverOptions::default() };
    let mut pts = solve_profiles(&sweep_profiles(n), scenario, &opts)?;
    sort_by_first_rate(&mut pts);
    Ok(pts)
}

/// Grid search split on the first user's power index, merged in index order.
pub fn brute_boundary(profile: &RateProfile, scenario: &CanonicalScenario, n: usize) -> Result<Option<OracleBoundary>> {
    check_oracle_size(scenario.users(), n)?;
    if profile.as_slice().first() == Some(&0.0) {
        return brute_boundary_slice(profile, scenario, n, 0..n);
    }
    let slices = (0..n)
        .into_par_iter()
        .map(|i| brute_boundary_slice(profile, scenario, n, i..i + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(slices.into_iter().flatten().reduce(OracleBoundary::merge))
}
