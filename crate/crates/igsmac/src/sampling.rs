//! Seeded random problem instances for verification runs.

use igsmac_core::{CanonicalScenario, NoiseState, SingleUserProblem};
use rand::Rng;

/// Single-user problem with primary-side improper noise; the target is a fraction of
/// the idle primary rate so the instance is always feasible.
pub fn random_single_user<R: Rng>(rng: &mut R) -> SingleUserProblem {
    loop {
        let p = 10f64.powf(rng.gen_range(0.0..2.7));
        let gain = if rng.gen_bool(0.05) { 0.0 } else { rng.gen_range(0.01..4.0) };
        let budget = 10f64.powf(rng.gen_range(-2.0..2.0));
        let (p_i, c_i) = if rng.gen_bool(0.25) { (0.0, 0.0) } else { (rng.gen_range(0.0..20.0), rng.gen_range(0.0..=1.0)) };
        let noise = NoiseState::from_improper(p_i, c_i).expect("sampled noise is valid");
        let mut prob = SingleUserProblem { pu_snr: p, gain, budget, pu_rate_target: 0.0, noise };
        prob.pu_rate_target = rng.gen_range(0.2..0.95) * prob.idle_pu_rate();
        if prob.is_feasible() {
            return prob;
        }
    }
}

/// Canonical scenario with `k` users and a target between 30% and 90% of capacity.
pub fn random_canonical<R: Rng>(rng: &mut R, k: usize) -> CanonicalScenario {
    let p = rng.gen_range(1.0..300.0);
    let frac = rng.gen_range(0.3..0.9);
    let gains = (0..k).map(|_| rng.gen_range(0.01..3.0)).collect();
    let budgets = (0..k).map(|_| 10f64.powf(rng.gen_range(-1.0..2.0))).collect();
    CanonicalScenario::new(p, gains, budgets, frac * (1.0f64 + p).log2()).expect("sampled scenario is valid")
}
