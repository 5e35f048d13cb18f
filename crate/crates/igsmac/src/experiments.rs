//! Monte Carlo studies over Rayleigh-fading channels.
//!
//! Every trial owns a ChaCha20 substream: the generator is seeded with the run
//! seed and the stream id is the trial index (with the user count in the upper
//! 32 bits for user sweeps). Channel entries are drawn in the order `h`,
//! `g_1..g_K`, `H` row by row, then the base-station vector, each as a standard
//! proper complex Gaussian with independent `N(0, 1/2)` real and imaginary parts.

use igsmac_core::boundary::{solve_boundary_point, RateProfile};
use igsmac_core::{to_canonical, ComplexMatrix, DecodeOrder, Error as CoreError, PhysicalScenario, SolverOptions};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::stats::{spearman, MeanSe, Spearman};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Sweep {
    /// Common secondary budget `P'_k`, one level per entry.
    Budget(Vec<f64>),
    /// User counts with `N = K`, fairness profile and zero primary-to-base-station channel.
    Users { counts: Vec<usize>, su_budget: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub users: usize,
    pub antennas: usize,
    pub trials: usize,
    pub seed: u64,
    pub pu_rate_fraction: f64,
    /// Primary transmit power `p'`.
    pub pu_power: f64,
    pub noise_var: f64,
    pub bs_noise_var: f64,
    /// Rate profile for budget sweeps; user sweeps use `1/K`.
    pub profile: Vec<f64>,
    pub sweep: Sweep,
}

/// `n` log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)).collect()
}

impl ExperimentConfig {
    /// Four users and antennas, skewed profile, target at 60% of capacity.
    pub fn sum_rate_vs_budget() -> Self {
        ExperimentConfig {
            users: 4,
            antennas: 4,
            trials: 200,
            seed: 7,
            pu_rate_fraction: 0.6,
            pu_power: 30.0,
            noise_var: 1.0,
            bs_noise_var: 1.0,
            profile: vec![0.27, 0.13, 0.09, 0.51],
            sweep: Sweep::Budget(log_grid(1.0, 1e4, 9)),
        }
    }

    /// Fairness point for one to five users.
    pub fn sum_rate_vs_users() -> Self {
        ExperimentConfig {
            users: 5,
            antennas: 5,
            trials: 200,
            seed: 7,
            pu_rate_fraction: 0.6,
            pu_power: 30.0,
            noise_var: 1.0,
            bs_noise_var: 1.0,
            profile: Vec::new(),
            sweep: Sweep::Users { counts: (1..=5).collect(), su_budget: 100.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CliError::Input(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.pu_rate_fraction > 0.0 && self.pu_rate_fraction <= 1.0) {
            return bad(format!("pu_rate_fraction {} is outside (0, 1]", self.pu_rate_fraction));
        }
        for (name, v) in [("pu_power", self.pu_power), ("noise_var", self.noise_var), ("bs_noise_var", self.bs_noise_var)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        match &self.sweep {
            Sweep::Budget(levels) => {
                if self.users == 0 || self.antennas < self.users {
                    return bad(format!("need 1 <= K <= N, got K = {}, N = {}", self.users, self.antennas));
                }
                if levels.is_empty() || levels.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
                    return bad("budget levels must be positive".into());
                }
                if self.profile.len() != self.users {
                    return bad(format!("profile has {} weights for {} users", self.profile.len(), self.users));
                }
                RateProfile::new(self.profile.clone()).map_err(|e| CliError::Input(e.to_string()))?;
            }
            Sweep::Users { counts, su_budget } => {
                if counts.is_empty() || counts.contains(&0) {
                    return bad("user counts must be positive".into());
                }
                if !(*su_budget > 0.0 && su_budget.is_finite()) {
                    return bad("su_budget must be positive".into());
                }
            }
        }
        Ok(())
    }
}

fn cn(rng: &mut ChaCha20Rng) -> Complex64 {
    let n = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("fixed standard deviation");
    Complex64::new(n.sample(rng), n.sample(rng))
}

fn substream(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Rayleigh channels for `k` users and `n` antennas from substream `stream` of `seed`.
///
/// Powers, noise variances and the primary target are placeholders (unit powers,
/// target 0); see [`with_link`].
pub fn gen_rayleigh(k: usize, n: usize, seed: u64, stream: u64, zero_pu_cross: bool) -> PhysicalScenario {
    let mut rng = substream(seed, stream);
    let pu_direct = cn(&mut rng);
    let su_cross: Vec<Complex64> = (0..k).map(|_| cn(&mut rng)).collect();
    let mut su_direct = ComplexMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            su_direct[(i, j)] = cn(&mut rng);
        }
    }
    let mut pu_to_bs: Vec<Complex64> = (0..n).map(|_| cn(&mut rng)).collect();
    if zero_pu_cross {
        pu_to_bs.iter_mut().for_each(|g| *g = Complex64::new(0.0, 0.0));
    }
    PhysicalScenario {
        pu_direct,
        pu_power: 1.0,
        su_cross,
        su_direct,
        pu_to_bs,
        su_budgets: vec![1.0; k],
        pu_noise_var: 1.0,
        bs_noise_var: 1.0,
        pu_rate_target: 0.0,
        decode_order: DecodeOrder::reversed(k),
    }
}

/// Applies the powers, noise levels and capacity-fraction target of `cfg`.
pub fn with_link(mut phys: PhysicalScenario, cfg: &ExperimentConfig, su_budget: f64) -> PhysicalScenario {
    phys.pu_power = cfg.pu_power;
    phys.pu_noise_var = cfg.noise_var;
    phys.bs_noise_var = cfg.bs_noise_var;
    phys.su_budgets = vec![su_budget; phys.users()];
    phys.pu_rate_target = phys.capacity_fraction_target(cfg.pu_rate_fraction);
    phys
}

/// IGS and PGS `r*` for one trial, or `None` when the draw is unusable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialResult {
    pub igs: f64,
    pub pgs: f64,
}

fn solve_trial(phys: &PhysicalScenario, profile: &RateProfile) -> Result<Option<TrialResult>> {
    let canon = match to_canonical(phys) {
        Ok(c) => c,
        Err(CoreError::Infeasible { .. } | CoreError::DegenerateChannel { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let igs = solve_boundary_point(profile, &canon.scenario, &SolverOptions::default())?;
    let pgs = solve_boundary_point(profile, &canon.scenario, &SolverOptions::proper())?;
    Ok(Some(TrialResult { igs: igs.r, pgs: pgs.r }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetRow {
    pub budget: f64,
    pub igs: MeanSe,
    pub pgs: MeanSe,
    pub infeasible: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetCurve {
    pub rows: Vec<BudgetRow>,
}

impl BudgetCurve {
    pub fn columns() -> [&'static str; 8] {
        ["budget", "igs_mean", "igs_se", "pgs_mean", "pgs_se", "ratio", "trials", "infeasible"]
    }

    pub fn table(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.budget.to_string(),
                    r.igs.mean.to_string(),
                    r.igs.se.to_string(),
                    r.pgs.mean.to_string(),
                    r.pgs.se.to_string(),
                    (r.igs.mean / r.pgs.mean).to_string(),
                    r.igs.n.to_string(),
                    r.infeasible.to_string(),
                ]
            })
            .collect()
    }
}

/// Mean IGS and PGS sum rate per budget level; every level reuses the same channel draws.
pub fn sumrate_vs_budget(cfg: &ExperimentConfig) -> Result<BudgetCurve> {
    cfg.validate()?;
    let Sweep::Budget(levels) = &cfg.sweep else {
        return Err(CliError::Input("expected a budget sweep".into()));
    };
    let profile = RateProfile::new(cfg.profile.clone())?;
    let per_trial: Vec<Vec<Option<TrialResult>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let chan = gen_rayleigh(cfg.users, cfg.antennas, cfg.seed, t as u64, false);
            levels.iter().map(|&b| solve_trial(&with_link(chan.clone(), cfg, b), &profile)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows = levels
        .iter()
        .enumerate()
        .map(|(i, &budget)| {
            let ok: Vec<TrialResult> = per_trial.iter().filter_map(|t| t[i]).collect();
            BudgetRow {
                budget,
                igs: MeanSe::of(&ok.iter().map(|t| t.igs).collect::<Vec<_>>()),
                pgs: MeanSe::of(&ok.iter().map(|t| t.pgs).collect::<Vec<_>>()),
                infeasible: cfg.trials - ok.len(),
            }
        })
        .collect();
    Ok(BudgetCurve { rows })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UsersRow {
    pub users: usize,
    pub igs_sum: MeanSe,
    pub pgs_sum: MeanSe,
    /// Per-user IGS minus PGS rate.
    pub gap_per_user: MeanSe,
    pub infeasible: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UsersCurve {
    pub rows: Vec<UsersRow>,
    /// Trend of the per-user gap over all `(K, gap)` trial pairs.
    pub trend: Spearman,
    /// Trend over the per-`K` means only.
    pub trend_of_means: Spearman,
    #[serde(skip)]
    pub trials: Vec<Vec<TrialResult>>,
}

impl UsersCurve {
    pub fn columns() -> [&'static str; 11] {
        [
            "users",
            "igs_sum_mean",
            "igs_sum_se",
            "pgs_sum_mean",
            "pgs_sum_se",
            "igs_per_user",
            "pgs_per_user",
            "gap_per_user_mean",
            "gap_per_user_se",
            "trials",
            "infeasible",
        ]
    }

    pub fn table(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let k = r.users as f64;
                vec![
                    r.users.to_string(),
                    r.igs_sum.mean.to_string(),
                    r.igs_sum.se.to_string(),
                    r.pgs_sum.mean.to_string(),
                    r.pgs_sum.se.to_string(),
                    (r.igs_sum.mean / k).to_string(),
                    (r.pgs_sum.mean / k).to_string(),
                    r.gap_per_user.mean.to_string(),
                    r.gap_per_user.se.to_string(),
                    r.igs_sum.n.to_string(),
                    r.infeasible.to_string(),
                ]
            })
            .collect()
    }
}

/// Fairness-point sum rate as the number of users grows, with `N = K` and no
/// primary signal at the base station.
pub fn sumrate_vs_users(cfg: &ExperimentConfig) -> Result<UsersCurve> {
    cfg.validate()?;
    let Sweep::Users { counts, su_budget } = &cfg.sweep else {
        return Err(CliError::Input("expected a user-count sweep".into()));
    };
    let mut rows = Vec::with_capacity(counts.len());
    let mut all = Vec::with_capacity(counts.len());
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for &k in counts {
        let profile = RateProfile::uniform(k);
        let res: Vec<Option<TrialResult>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let chan = gen_rayleigh(k, k, cfg.seed, ((k as u64) << 32) | t as u64, true);
                solve_trial(&with_link(chan, cfg, *su_budget), &profile)
            })
            .collect::<Result<_>>()?;
        let ok: Vec<TrialResult> = res.into_iter().flatten().collect();
        let gaps: Vec<f64> = ok.iter().map(|t| (t.igs - t.pgs) / k as f64).collect();
        xs.extend(std::iter::repeat_n(k as f64, gaps.len()));
        ys.extend_from_slice(&gaps);
        rows.push(UsersRow {
            users: k,
            igs_sum: MeanSe::of(&ok.iter().map(|t| t.igs).collect::<Vec<_>>()),
            pgs_sum: MeanSe::of(&ok.iter().map(|t| t.pgs).collect::<Vec<_>>()),
            gap_per_user: MeanSe::of(&gaps),
            infeasible: cfg.trials - ok.len(),
        });
        all.push(ok);
    }
    let trend = spearman(&xs, &ys);
    let ks: Vec<f64> = rows.iter().map(|r| r.users as f64).collect();
    let means: Vec<f64> = rows.iter().map(|r| r.gap_per_user.mean).collect();
    Ok(UsersCurve { rows, trend, trend_of_means: spearman(&ks, &means), trials: all })
}
