//! The closed-form solvers must never be beaten by a feasible grid point.

use igsmac_core::boundary::{solve_boundary_point, RateProfile, SolverOptions};
use igsmac_core::model::{pu_rate, su_rate_raw};
use igsmac_core::oracle::brute_boundary;
use igsmac_core::CanonicalScenario;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_scenario(rng: &mut ChaCha8Rng, k: usize) -> CanonicalScenario {
    let p = rng.gen_range(1.0..300.0);
    let frac = rng.gen_range(0.3..0.9);
    let gains = (0..k).map(|_| rng.gen_range(0.01..3.0)).collect();
    let budgets = (0..k).map(|_| 10f64.powf(rng.gen_range(-1.0..2.0))).collect();
    CanonicalScenario::new(p, gains, budgets, frac * (1.0f64 + p).log2()).unwrap()
}

#[test]
fn two_users_never_below_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..25 {
        let s = random_scenario(&mut rng, 2);
        let w: f64 = rng.gen_range(0.0..1.0);
        let prof = RateProfile::pair(w).unwrap();
        let solved = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let grid = brute_boundary(&prof, &s, 41).unwrap().unwrap();
        // Grid points are feasible, so their value is a lower bound on the optimum.
        assert!(pu_rate(&s, &grid.params).unwrap() >= s.pu_rate_target);
        assert!(solved.r >= grid.value - 1e-7, "case {case}: solver {} grid {} ({s:?}, w = {w})", solved.r, grid.value);
    }
}

#[test]
fn three_users_never_below_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..8 {
        let s = random_scenario(&mut rng, 3);
        let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(0.05..1.0)).collect();
        let sum: f64 = raw.iter().sum();
        let mut alpha: Vec<f64> = raw.iter().map(|x| x / sum).collect();
        alpha[0] = 1.0 - alpha[1] - alpha[2];
        let prof = RateProfile::new(alpha).unwrap();
        let solved = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let grid = brute_boundary(&prof, &s, 11).unwrap().unwrap();
        assert!(solved.r >= grid.value - 1e-7, "case {case}: solver {} grid {}", solved.r, grid.value);
        let min_ratio = grid
            .params
            .iter()
            .zip(prof.as_slice())
            .map(|(x, a)| su_rate_raw(x.power, x.circularity) / a)
            .fold(f64::INFINITY, f64::min);
        assert!((min_ratio - grid.value).abs() < 1e-12);
    }
}
