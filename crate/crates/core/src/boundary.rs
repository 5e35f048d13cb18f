//! Pareto boundary of the secondary MAC rate region under a primary rate target.
//!
//! A boundary point is found with the rate-profile method: for a profile `alpha`
//! the largest `r` with `R_k >= alpha_k r` for all users is located by bisection,
//! and each feasibility check reduces the K users to an equivalent single user
//! whose optimal circularity follows from the single-user solver.
//!
//! For a fixed aggregate circularity `c` with tolerable interference `t`, the
//! active users split the interference as
//!
//! ```text
//! tau = t / sum_k a_k,   L = sqrt((1 + tau)^2 - tau^2 c^2),
//! p_k = 2^{alpha_k r} (1 + tau) / L - 1,   p_k c_k = 2^{alpha_k r} tau c / L,
//! ```
//!
//! which meets every rate exactly; the profile is feasible at `c` iff
//! `sum_k a_k 2^{alpha_k r} <= L sum_k a_k`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_range, Error, Result};
use crate::model::{self, log2_guarded, su_rate_raw, CanonicalScenario, NoiseState, SignalParams};
use crate::single_user::{self, bisect, interference_tolerance, SingleUserProblem};

/// Nonnegative per-user weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct RateProfile(Vec<f64>);

impl RateProfile {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::Invalid("empty rate profile".into()));
        }
        for &a in &alpha {
            check_range("profile weight", a, 0.0, 1.0)?;
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Domain { what: "profile sum", value: sum });
        }
        Ok(RateProfile(alpha))
    }

    /// Equal weights `1/K` (the fairness point).
    pub fn uniform(k: usize) -> Self {
        RateProfile(vec![1.0 / k as f64; k])
    }

    /// All weight on `user`.
    pub fn extreme(k: usize, user: usize) -> Self {
        let mut a = vec![0.0; k];
        a[user] = 1.0;
        RateProfile(a)
    }

    /// Two-user profile `(w, 1 - w)`.
    pub fn pair(w: f64) -> Result<Self> {
        Self::new(vec![w, 1.0 - w])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn users(&self) -> usize {
        self.0.len()
    }
}

/// Profiles `(i/(n-1), 1 - i/(n-1))` for `i = 0..n`.
pub fn sweep_profiles(n: usize) -> Vec<RateProfile> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let w = i as f64 / (n - 1) as f64;
            RateProfile(vec![w, 1.0 - w])
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signaling {
    Improper,
    /// Circularity pinned to zero for every user.
    Proper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActivationKind {
    /// The user's power reaches its budget.
    Power,
    /// The user's circularity reaches one.
    Circularity,
}

/// First user whose budget or circularity constraint becomes active as the
/// aggregate circularity grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Activation {
    pub user: usize,
    /// Aggregate circularity at which the constraint activates.
    pub c: f64,
    pub kind: ActivationKind,
    /// Whether `user` is `argmin (P_k - 1) / 2^{alpha_k r}` (power) or `argmin alpha_k` (circularity).
    pub matches_minus_one_rule: bool,
    /// Whether `user` is `argmin (P_k + 1) / 2^{alpha_k r}` (power) or `argmin alpha_k` (circularity).
    pub matches_plus_one_rule: bool,
}

/// User removed from the active set with its parameters frozen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedUser {
    pub user: usize,
    pub params: SignalParams,
    pub kind: ActivationKind,
    /// Aggregate circularity at which the user was frozen.
    pub at_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub profile: RateProfile,
    pub r: f64,
    pub signaling: Signaling,
    pub params: Vec<SignalParams>,
    /// Achieved secondary rates.
    pub rates: Vec<f64>,
    pub pu_rate: f64,
    /// Circularity of the aggregate interference at the primary receiver.
    pub aggregate_c: f64,
    /// Users with positive weight.
    pub users: Vec<usize>,
    /// Users at full power with proper signals because their budget caps the rate.
    pub saturated: Vec<usize>,
    /// Users still active when the feasibility check concluded.
    pub active: Vec<usize>,
    pub fixed: Vec<FixedUser>,
    /// Equivalent primary-side noise after folding saturated and fixed users.
    pub noise: NoiseState,
    pub iterations: usize,
    pub igs_required: bool,
}

impl BoundaryPoint {
    fn zero(scenario: &CanonicalScenario, profile: &RateProfile, signaling: Signaling) -> Self {
        let k = scenario.users();
        let users = (0..k).filter(|&u| profile.as_slice()[u] > 0.0).collect::<Vec<_>>();
        BoundaryPoint {
            profile: profile.clone(),
            r: 0.0,
            signaling,
            params: vec![SignalParams::default(); k],
            rates: vec![0.0; k],
            pu_rate: libm::log2(1.0 + scenario.pu_snr),
            aggregate_c: 0.0,
            active: users.clone(),
            users,
            saturated: Vec::new(),
            fixed: Vec::new(),
            noise: NoiseState::PROPER,
            iterations: 0,
            igs_required: false,
        }
    }

    /// Per-user rates `alpha_k r`.
    pub fn rate_tuple(&self) -> Vec<f64> {
        self.profile.as_slice().iter().map(|a| a * self.r).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(BoundaryPoint),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Bisection tolerance on `r`, b/s/Hz.
    pub tol: f64,
    pub max_iter: usize,
    pub signaling: Signaling,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-8, max_iter: 60, signaling: Signaling::Improper }
    }
}

impl SolverOptions {
    pub fn proper() -> Self {
        SolverOptions { signaling: Signaling::Proper, ..Self::default() }
    }
}

const SATURATION_TOL: f64 = 1e-9;
const SCAN_SAMPLES: usize = 64;

/// Tolerable aggregate interference power `t(c; rho)` at circularity `c`.
pub fn tolerable_interference(c: f64, noise: NoiseState, pu_snr: f64, target: f64) -> Result<f64> {
    check_range("circularity", c, 0.0, 1.0)?;
    noise.validate()?;
    interference_tolerance(c, pu_snr, target, noise)
}

/// `sum_{K_a} a_k >= sum_{K \ K_a} a_k P_k + beta`.
pub fn igs_required(scenario: &CanonicalScenario, active: &[usize], users: &[usize]) -> bool {
    let lhs: f64 = active.iter().map(|&k| scenario.gains[k]).sum();
    let rhs: f64 = users
        .iter()
        .filter(|k| !active.contains(k))
        .map(|&k| scenario.gains[k] * scenario.budgets[k])
        .sum();
    lhs >= rhs + scenario.beta()
}

/// Raw `(p_k, p_k c_k)` of the interference split; `tau` may be infinite.
fn split(gamma: f64, tau: f64, c: f64) -> (f64, f64) {
    if tau.is_infinite() {
        if c >= 1.0 {
            return (f64::INFINITY, f64::INFINITY);
        }
        let den = libm::sqrt((1.0 - c) * (1.0 + c));
        return (gamma / den - 1.0, gamma * c / den);
    }
    let l = level(tau, c);
    (gamma * (1.0 + tau) / l - 1.0, gamma * tau * c / l)
}

fn level(tau: f64, c: f64) -> f64 {
    if tau.is_infinite() {
        return f64::INFINITY;
    }
    let tc = tau * c;
    libm::sqrt((1.0 + tau - tc) * (1.0 + tau + tc))
}

fn raw_circularity(p: f64, pt: f64) -> f64 {
    if p > 0.0 {
        pt / p
    } else {
        0.0
    }
}

fn to_params(p: f64, pt: f64) -> SignalParams {
    SignalParams::new(p.max(0.0), raw_circularity(p, pt).clamp(0.0, 1.0))
}

/// Shared state of one feasibility check.
struct Stage<'a> {
    scenario: &'a CanonicalScenario,
    alpha: &'a [f64],
    r: f64,
    noise: NoiseState,
    active: Vec<usize>,
}

impl Stage<'_> {
    fn gamma(&self, k: usize) -> f64 {
        libm::exp2(self.alpha[k] * self.r)
    }

    fn gain_sum(&self) -> f64 {
        self.active.iter().map(|&k| self.scenario.gains[k]).sum()
    }

    fn tolerance(&self, c: f64) -> Result<f64> {
        interference_tolerance(c, self.scenario.pu_snr, self.scenario.pu_rate_target, self.noise)
    }

    fn tau(&self, c: f64) -> Result<f64> {
        Ok(self.tolerance(c)? / self.gain_sum())
    }

    /// Raw splits of the active users at circularity `c`, in `active` order.
    fn splits(&self, c: f64, scale: f64) -> Result<Vec<(f64, f64)>> {
        let tau = self.tau(c)?;
        Ok(self.active.iter().map(|&k| split(scale * self.gamma(k), tau, c)).collect())
    }

    fn violations(&self, c: f64) -> Result<Vec<[f64; 2]>> {
        Ok(self
            .splits(c, 1.0)?
            .into_iter()
            .zip(&self.active)
            .map(|((p, pt), &k)| [p - self.scenario.budgets[k], if p > 0.0 { pt / p - 1.0 } else { -1.0 }])
            .collect())
    }

    fn next_activation(&self, lo: f64, hi: f64) -> Result<Option<Activation>> {
        if self.active.is_empty() || self.gain_sum() <= 0.0 {
            return Ok(None);
        }
        let samples = if hi > lo { SCAN_SAMPLES } else { 0 };
        let at = |s: usize| if samples == 0 { lo } else { lo + (hi - lo) * s as f64 / samples as f64 };
        let mut prev_c = lo;
        for s in 0..=samples {
            let c = at(s);
            let v = self.violations(c)?;
            if !v.iter().any(|x| x[0] >= 0.0 || x[1] >= 0.0) {
                prev_c = c;
                continue;
            }
            let mut best: Option<(f64, usize, ActivationKind)> = None;
            for (idx, x) in v.iter().enumerate() {
                for (kind_idx, kind) in [ActivationKind::Power, ActivationKind::Circularity].into_iter().enumerate() {
                    if x[kind_idx] < 0.0 {
                        continue;
                    }
                    let root = if s == 0 {
                        c
                    } else {
                        let (_, r_hi) = bisect(prev_c, c, 1e-13, 60, |m| {
                            self.violations(m).is_ok_and(|w| w[idx][kind_idx] < 0.0)
                        });
                        r_hi
                    };
                    if best.is_none_or(|(b, _, _)| root < b) {
                        best = Some((root, self.active[idx], kind));
                    }
                }
            }
            let (c, user, kind) = best.expect("a violation was detected");
            return Ok(Some(self.activation(c, user, kind)));
        }
        Ok(None)
    }

    fn activation(&self, c: f64, user: usize, kind: ActivationKind) -> Activation {
        let argmin = |key: &dyn Fn(usize) -> f64| {
            self.active
                .iter()
                .copied()
                .min_by(|&i, &j| key(i).partial_cmp(&key(j)).unwrap_or(core::cmp::Ordering::Equal))
                .unwrap_or(user)
        };
        let (minus, plus) = match kind {
            ActivationKind::Power => (
                argmin(&|k| (self.scenario.budgets[k] - 1.0) / self.gamma(k)),
                argmin(&|k| (self.scenario.budgets[k] + 1.0) / self.gamma(k)),
            ),
            ActivationKind::Circularity => {
                let k = argmin(&|k| self.alpha[k]);
                (k, k)
            }
        };
        Activation { user, c, kind, matches_minus_one_rule: minus == user, matches_plus_one_rule: plus == user }
    }

    /// Parameters meeting `R = alpha r` exactly with the activated constraint tight.
    fn frozen_params(&self, user: usize, kind: ActivationKind) -> SignalParams {
        let g = self.gamma(user);
        match kind {
            ActivationKind::Power => {
                let budget = self.scenario.budgets[user];
                let rem = (budget + 1.0 - g) * (budget + 1.0 + g);
                SignalParams::new(budget, (libm::sqrt(rem.max(0.0)) / budget).clamp(0.0, 1.0))
            }
            ActivationKind::Circularity => SignalParams::new(0.5 * (g - 1.0) * (g + 1.0), 1.0),
        }
    }

    fn aggregate_test(&self, c: f64) -> Result<(bool, f64)> {
        let s = self.gain_sum();
        let w: f64 = self.active.iter().map(|&k| self.scenario.gains[k] * self.gamma(k)).sum();
        let l = level(self.tau(c)?, c);
        Ok((w <= s * l * (1.0 + 1e-12), if l.is_finite() { w / (s * l) } else { 0.0 }))
    }
}

/// Eqs. for the per-user powers and circularities that split the tolerable
/// interference at aggregate circularity `c` while meeting `R_k = alpha_k r`.
pub fn user_params_from_c(
    c: f64,
    r: f64,
    profile: &RateProfile,
    active: &[usize],
    noise: NoiseState,
    scenario: &CanonicalScenario,
) -> Result<Vec<SignalParams>> {
    check_range("circularity", c, 0.0, 1.0)?;
    check_active(active, scenario)?;
    let stage = Stage { scenario, alpha: profile.as_slice(), r, noise, active: active.to_vec() };
    Ok(stage.splits(c, 1.0)?.into_iter().map(|(p, pt)| to_params(p, pt)).collect())
}

/// Smallest aggregate circularity in `[lo, hi]` at which some active user hits
/// its budget or full circularity; `None` when neither happens on the interval.
pub fn next_activation(
    interval: (f64, f64),
    r: f64,
    profile: &RateProfile,
    active: &[usize],
    noise: NoiseState,
    scenario: &CanonicalScenario,
) -> Result<Option<Activation>> {
    check_range("interval start", interval.0, 0.0, 1.0)?;
    check_range("interval end", interval.1, interval.0, 1.0)?;
    check_active(active, scenario)?;
    let stage = Stage { scenario, alpha: profile.as_slice(), r, noise, active: active.to_vec() };
    stage.next_activation(interval.0, interval.1)
}

fn check_active(active: &[usize], scenario: &CanonicalScenario) -> Result<()> {
    if active.is_empty() || active.iter().any(|&k| k >= scenario.users()) {
        return Err(Error::Invalid(alloc::format!("bad active set {active:?}")));
    }
    Ok(())
}

fn check_inputs(profile: &RateProfile, scenario: &CanonicalScenario) -> Result<()> {
    scenario.validate()?;
    if profile.users() != scenario.users() {
        return Err(Error::Invalid(alloc::format!(
            "profile has {} weights for {} users",
            profile.users(),
            scenario.users()
        )));
    }
    Ok(())
}

/// Whether rates `alpha_k r` are jointly achievable, with the achieving parameters.
pub fn solve_feasibility(
    r: f64,
    profile: &RateProfile,
    scenario: &CanonicalScenario,
    signaling: Signaling,
) -> Result<Feasibility> {
    check_inputs(profile, scenario)?;
    check_range("r", r, 0.0, f64::MAX)?;
    Ok(match run(r, profile, scenario, signaling, true)? {
        Some(p) => Feasibility::Feasible(p.expect("built")),
        None => Feasibility::Infeasible,
    })
}

/// `Ok(None)` when infeasible; `Ok(Some(None))` when feasible and `build` is false.
fn run(
    r: f64,
    profile: &RateProfile,
    scenario: &CanonicalScenario,
    signaling: Signaling,
    build: bool,
) -> Result<Option<Option<BoundaryPoint>>> {
    let alpha = profile.as_slice();
    if r == 0.0 {
        return Ok(Some(build.then(|| BoundaryPoint::zero(scenario, profile, signaling))));
    }
    let users: Vec<usize> = (0..scenario.users()).filter(|&k| alpha[k] > 0.0).collect();
    let mut params = vec![SignalParams::default(); scenario.users()];
    let mut noise = NoiseState::PROPER;
    let mut saturated = Vec::new();
    let mut active = Vec::new();
    for &k in &users {
        let cap = libm::log2(1.0 + scenario.budgets[k]);
        let need = alpha[k] * r;
        if cap < need - 1e-12 {
            return Ok(None);
        }
        if (cap - need).abs() <= SATURATION_TOL {
            params[k] = SignalParams::proper(scenario.budgets[k]);
            noise.absorb(scenario.gains[k], params[k]);
            saturated.push(k);
        } else {
            active.push(k);
        }
    }
    let mut stage = Stage { scenario, alpha, r, noise, active };
    if stage.tolerance(0.0).is_err() {
        return Ok(None);
    }
    let mut fixed = Vec::new();
    let mut c_start: f64 = 0.0;
    let mut iterations = 0;
    let full_power: f64 = stage.active.iter().map(|&k| scenario.gains[k] * scenario.budgets[k]).sum();
    let slack_everywhere = full_power <= stage.tolerance(0.0)?;

    let (c, scale) = loop {
        if stage.active.is_empty() {
            break (0.0, 1.0);
        }
        iterations += 1;
        if slack_everywhere || stage.gain_sum() <= 0.0 {
            for &k in &stage.active {
                params[k] = SignalParams::proper((stage.gamma(k) - 1.0).min(scenario.budgets[k]));
            }
            stage.active.clear();
            break (0.0, 1.0);
        }
        if stage.tolerance(0.0).is_err() {
            return Ok(None);
        }
        let (c_star, activation) = match signaling {
            Signaling::Proper => (0.0, None),
            Signaling::Improper => {
                let budget: f64 = stage.active.iter().map(|&k| scenario.budgets[k]).sum();
                let prob = SingleUserProblem {
                    pu_snr: scenario.pu_snr,
                    gain: stage.gain_sum(),
                    budget,
                    pu_rate_target: scenario.pu_rate_target,
                    noise: stage.noise,
                };
                let c_star = single_user::solve(&prob)?.c_star;
                (c_star, stage.next_activation(c_start.min(1.0), 1.0)?)
            }
        };
        match activation {
            Some(act) if act.c < c_star => {
                let raw = stage.splits(act.c, 1.0)?;
                let frozen = stage.frozen_params(act.user, act.kind);
                params[act.user] = frozen;
                let (mut i_rest, mut j_rest) = (0.0, 0.0);
                for (&k, &(p, pt)) in stage.active.iter().zip(&raw) {
                    if k != act.user {
                        i_rest += scenario.gains[k] * p;
                        j_rest += scenario.gains[k] * pt;
                    }
                }
                c_start = if i_rest > 0.0 { (j_rest / i_rest).clamp(0.0, 1.0) } else { 0.0 };
                stage.noise.absorb(scenario.gains[act.user], frozen);
                stage.active.retain(|&k| k != act.user);
                fixed.push(FixedUser { user: act.user, params: frozen, kind: act.kind, at_c: act.c });
                if stage.tolerance(0.0).is_err() {
                    return Ok(None);
                }
            }
            other => {
                let c = match signaling {
                    Signaling::Proper => 0.0,
                    Signaling::Improper => c_star.min(other.map_or(1.0, |a| a.c)).max(c_start).min(1.0),
                };
                let (ok, sigma) = stage.aggregate_test(c)?;
                if !ok {
                    return Ok(None);
                }
                break (c, if sigma > 0.0 { 1.0 / sigma } else { f64::INFINITY });
            }
        }
    };
    if !build {
        return Ok(Some(None));
    }

    let assemble = |theta: f64, params: &mut Vec<SignalParams>| -> Result<f64> {
        if !stage.active.is_empty() {
            for (&k, (p, pt)) in stage.active.iter().zip(stage.splits(c, theta)?) {
                params[k] = to_params(p, pt);
            }
        }
        model::pu_rate(scenario, params)
    };
    let target = scenario.pu_rate_target;
    if assemble(1.0, &mut params)? < target {
        let hi = if scale.is_finite() { scale } else { 1e12 };
        let (_, theta) = bisect(1.0, hi, 0.0, 100, |th| {
            let mut trial = params.clone();
            assemble(th, &mut trial).is_ok_and(|rate| rate < target)
        });
        assemble(theta, &mut params)?;
    }
    for &k in &stage.active {
        params[k].power = params[k].power.min(scenario.budgets[k]);
    }
    let pu_rate = model::pu_rate(scenario, &params)?;
    let rates = params.iter().map(|p| su_rate_raw(p.power, p.circularity)).collect();
    let point = BoundaryPoint {
        profile: profile.clone(),
        r,
        signaling,
        aggregate_c: aggregate_circularity(scenario, &params),
        rates,
        pu_rate,
        users,
        saturated,
        active: stage.active.clone(),
        fixed,
        noise: stage.noise,
        iterations,
        igs_required: false,
        params,
    };
    Ok(Some(Some(point)))
}

/// `|sum a_k p_k c_k e^{j phi_k}| / sum a_k p_k`, zero without interference.
pub fn aggregate_circularity(scenario: &CanonicalScenario, params: &[SignalParams]) -> f64 {
    let total: f64 = scenario.gains.iter().zip(params).map(|(a, p)| a * p.power).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let comp: num_complex::Complex64 = scenario.gains.iter().zip(params).map(|(a, p)| p.complementary() * *a).sum();
    (comp.norm() / total).min(1.0)
}

/// Largest `r` with rates `alpha_k r` achievable, by bisection over `[0, min_k log2(1+P_k)/alpha_k]`.
pub fn solve_boundary_point(
    profile: &RateProfile,
    scenario: &CanonicalScenario,
    opts: &SolverOptions,
) -> Result<BoundaryPoint> {
    check_inputs(profile, scenario)?;
    let alpha = profile.as_slice();
    let r_cap = (0..scenario.users())
        .filter(|&k| alpha[k] > 0.0)
        .map(|k| log2_guarded(1.0 + scenario.budgets[k]) / alpha[k])
        .fold(f64::INFINITY, f64::min);
    let feasible = |r: f64, s: Signaling| run(r, profile, scenario, s, false).map(|o| o.is_some());
    let r_star = if feasible(r_cap, opts.signaling)? {
        r_cap
    } else {
        let (mut lo, mut hi) = (0.0, r_cap);
        for _ in 0..opts.max_iter {
            if hi - lo <= opts.tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if feasible(mid, opts.signaling)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let pgs_enough = opts.signaling == Signaling::Proper || feasible(r_star, Signaling::Proper)?;
    let signaling = if pgs_enough { Signaling::Proper } else { opts.signaling };
    let mut point = run(r_star, profile, scenario, signaling, true)?
        .flatten()
        .ok_or(Error::Degenerate("bisection lower end is not feasible"))?;
    point.signaling = opts.signaling;
    let users: Vec<usize> = point.users.clone();
    let k_a: Vec<usize> = users.iter().copied().filter(|k| !point.saturated.contains(k)).collect();
    point.igs_required = !pgs_enough && igs_required(scenario, &k_a, &users);
    Ok(point)
}

/// Two-user boundary sampled at `n` evenly spaced profiles, sorted by `R_1`.
pub fn sweep_region(scenario: &CanonicalScenario, n: usize, signaling: Signaling) -> Result<Vec<BoundaryPoint>> {
    if scenario.users() != 2 {
        return Err(Error::Invalid("region sweeps need exactly two users".into()));
    }
    let opts = SolverOptions { signaling, ..SolverOptions::default() };
    let mut pts = sweep_profiles(n)
        .iter()
        .map(|p| solve_boundary_point(p, scenario, &opts))
        .collect::<Result<Vec<_>>>()?;
    sort_by_first_rate(&mut pts);
    Ok(pts)
}

pub fn sort_by_first_rate(points: &mut [BoundaryPoint]) {
    points.sort_by(|a, b| {
        let (ra, rb) = (a.rate_tuple()[0], b.rate_tuple()[0]);
        ra.partial_cmp(&rb).unwrap_or(core::cmp::Ordering::Equal)
    });
}
