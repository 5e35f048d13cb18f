//! One secondary user against a primary receiver whose noise is improper.
//!
//! The primary rate constraint, written in the aggregate interference power
//! `t = a_S p_S`, is the quadratic
//!
//! ```text
//! (1 - c^2) t^2 + 2 [beta + p_I (1 - c c_I)] t + C = 0,
//! C = 1 + 2 p_I + p_I^2 (1 - c_I^2) - (1 - beta)(p + 2 + 2 p_I),
//! ```
//!
//! whose nonnegative root gives the largest admissible power `q(c) = t / a_S`.

use core::cmp::Ordering;

use crate::error::{check_range, Error, Result};
use crate::model::{self, pu_rate_aggregate, su_rate_raw, NoiseState, SignalParams};

/// Constant term `C` of the rate-constraint quadratic.
pub(crate) fn constant_term(pu_snr: f64, beta: f64, noise: NoiseState) -> f64 {
    let p_i = noise.improper_power();
    let c_i = noise.improper_circularity();
    1.0 + 2.0 * p_i + p_i * p_i * (1.0 - c_i * c_i) - (1.0 - beta) * (pu_snr + 2.0 + 2.0 * p_i)
}

fn feasibility_slack(pu_snr: f64, beta: f64, noise: NoiseState) -> f64 {
    let p_i = noise.improper_power();
    1e-12 * (1.0 + 2.0 * p_i + p_i * p_i + (1.0 - beta).abs() * (pu_snr + 2.0 + 2.0 * p_i))
}

/// Largest aggregate interference power keeping the primary at its target when
/// the interference has circularity `c`. Errors when even zero interference
/// violates the target.
pub(crate) fn interference_tolerance(c: f64, pu_snr: f64, target: f64, noise: NoiseState) -> Result<f64> {
    let beta = model::beta(pu_snr, target);
    if beta == f64::NEG_INFINITY {
        return Ok(f64::INFINITY);
    }
    let cc = constant_term(pu_snr, beta, noise);
    if cc > feasibility_slack(pu_snr, beta, noise) {
        let achievable = pu_rate_aggregate(pu_snr, noise.improper_power(), noise.complementary);
        return Err(Error::Infeasible { target, achievable });
    }
    let cc = cc.min(0.0);
    let p_i = noise.improper_power();
    let c_i = noise.improper_circularity();
    let quad = (1.0 - c) * (1.0 + c);
    let half = beta + p_i * (1.0 - c * c_i);
    if quad <= 0.0 {
        return Ok(if half > 0.0 { -cc / (2.0 * half) } else { f64::INFINITY });
    }
    let disc = libm::sqrt(half * half - quad * cc);
    Ok(if half > 0.0 { -cc / (half + disc) } else { (disc - half) / quad })
}

/// Problem `P_IN`: maximize the secondary rate subject to the power budget and
/// the primary rate target, with improper noise `noise` at the primary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleUserProblem {
    pub pu_snr: f64,
    /// Interference gain `a_S`.
    pub gain: f64,
    /// Power budget `P_S`.
    pub budget: f64,
    pub pu_rate_target: f64,
    pub noise: NoiseState,
}

impl SingleUserProblem {
    pub fn new(pu_snr: f64, gain: f64, budget: f64, pu_rate_target: f64, noise: NoiseState) -> Result<Self> {
        let p = SingleUserProblem { pu_snr, gain, budget, pu_rate_target, noise };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("pu_snr", self.pu_snr, 0.0, f64::MAX)?;
        check_range("gain", self.gain, 0.0, f64::MAX)?;
        check_range("budget", self.budget, f64::MIN_POSITIVE, f64::MAX)?;
        check_range("pu_rate_target", self.pu_rate_target, 0.0, f64::MAX)?;
        self.noise.validate()
    }

    pub fn beta(&self) -> f64 {
        model::beta(self.pu_snr, self.pu_rate_target)
    }

    /// `p 2^R / (2^{2R} - 1)`.
    pub fn pbar(&self) -> f64 {
        let g = libm::exp2(self.pu_rate_target);
        self.pu_snr * g / (g * g - 1.0)
    }

    /// Primary rate with the secondary user silent.
    pub fn idle_pu_rate(&self) -> f64 {
        pu_rate_aggregate(self.pu_snr, self.noise.improper_power(), self.noise.complementary)
    }

    pub fn is_feasible(&self) -> bool {
        interference_tolerance(0.0, self.pu_snr, self.pu_rate_target, self.noise).is_ok()
    }

    fn tolerance(&self, c: f64) -> Result<f64> {
        interference_tolerance(c, self.pu_snr, self.pu_rate_target, self.noise)
    }
}

/// Largest power `q(c)` meeting the primary target at circularity `c`;
/// `+inf` when the constraint cannot bind.
pub fn q_of_c(prob: &SingleUserProblem, c: f64) -> Result<f64> {
    check_range("circularity", c, 0.0, 1.0)?;
    let t = prob.tolerance(c)?;
    Ok(if prob.gain == 0.0 { f64::INFINITY } else { t / prob.gain })
}

/// Derivative `dq/dc`.
pub fn q_derivative(prob: &SingleUserProblem, c: f64) -> Result<f64> {
    let q = q_of_c(prob, c)?;
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let a = prob.gain;
    let num = q * (a * q * c + p_i * c_i);
    let den = a * q * (1.0 - c * c) + prob.beta() + p_i * (1.0 - c * c_i);
    Ok(num / den)
}

/// Expression whose sign is the sign of `d/dc R_S(q(c), c)`:
/// `q c (a_S - beta - p_I) + p_I c_I (1 + q)`.
pub fn rate_slope_indicator(prob: &SingleUserProblem, c: f64) -> Result<f64> {
    let q = q_of_c(prob, c)?;
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let lin = c * (prob.gain - prob.beta() - p_i);
    if q.is_infinite() {
        let s = lin + p_i * c_i;
        return Ok(if s == 0.0 { 0.0 } else { f64::INFINITY.copysign(s) });
    }
    Ok(q * lin + p_i * c_i * (1.0 + q))
}

/// Sign of the slope of the secondary rate along `p = q(c)`.
pub fn rate_derivative_sign(prob: &SingleUserProblem, c: f64) -> Result<Ordering> {
    let g = rate_slope_indicator(prob, c)?;
    Ok(g.partial_cmp(&0.0).unwrap_or(Ordering::Equal))
}

/// Gain threshold above which maximally improper signaling is optimal.
pub fn xi(prob: &SingleUserProblem) -> Result<f64> {
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let beta = prob.beta();
    let m1 = p_i * (1.0 - c_i) + beta;
    let m2 = p_i * (1.0 + c_i) + beta;
    let pbar2 = prob.pbar() * prob.pbar();
    let den = pbar2 - m1 * m1;
    if !(den > 0.0) || !den.is_finite() {
        return Err(Error::Degenerate("xi denominator is not positive"));
    }
    Ok(m1 * (pbar2 - m1 * m2) / den)
}

/// Bisection returning the boundary of a predicate that holds at `lo` and not at `hi`.
pub(crate) fn bisect(mut lo: f64, mut hi: f64, tol: f64, max_iter: usize, mut holds: impl FnMut(f64) -> bool) -> (f64, f64) {
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Largest circularity whose tolerable power does not exceed the budget.
pub fn c_b(prob: &SingleUserProblem) -> Result<f64> {
    prob.validate()?;
    let budget = prob.budget;
    if budget <= q_of_c(prob, 0.0)? {
        return Ok(0.0);
    }
    if q_of_c(prob, 1.0)? <= budget {
        return Ok(1.0);
    }
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let beta = prob.beta();
    let t = prob.gain * budget;
    let lin = t * p_i * c_i;
    let k0 = t * t + 2.0 * t * (beta + p_i) + constant_term(prob.pu_snr, beta, prob.noise);
    let disc = lin * lin + t * t * k0;
    if k0 >= 0.0 && disc >= 0.0 {
        let c = (k0 / (lin + libm::sqrt(disc))).clamp(0.0, 1.0);
        if (q_of_c(prob, c)? - budget).abs() <= 1e-10 * (1.0 + budget) {
            return Ok(c);
        }
    }
    let (lo, _) = bisect(0.0, 1.0, 0.0, 200, |c| q_of_c(prob, c).is_ok_and(|q| q < budget));
    Ok(lo)
}

/// Largest circularity at which the secondary rate along `p = q(c)` is still nondecreasing.
pub fn c_r(prob: &SingleUserProblem) -> Result<f64> {
    prob.validate()?;
    if prob.gain == 0.0 {
        return Ok(0.0);
    }
    if q_of_c(prob, 1.0)?.is_infinite() {
        return Ok(1.0);
    }
    let at_one = match xi(prob) {
        Ok(x) => prob.gain >= x,
        Err(_) => rate_slope_indicator(prob, 1.0)? >= 0.0,
    };
    if at_one {
        return Ok(1.0);
    }
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let n = p_i * c_i;
    if n <= 0.0 {
        return Ok(0.0);
    }
    if let Some(c) = c_r_closed_form(prob)? {
        return Ok(c);
    }
    let (lo, _) = bisect(0.0, 1.0, 1e-15, 200, |c| rate_slope_indicator(prob, c).is_ok_and(|g| g >= 0.0));
    Ok(lo)
}

fn c_r_closed_form(prob: &SingleUserProblem) -> Result<Option<f64>> {
    let (p_i, c_i) = (prob.noise.improper_power(), prob.noise.improper_circularity());
    let (a, beta) = (prob.gain, prob.beta());
    let n = p_i * c_i;
    let e = beta + p_i - a;
    let cc = constant_term(prob.pu_snr, beta, prob.noise);
    let k2 = -a * a * n * n - 2.0 * a * n * n * e + cc * e * e;
    let k1 = 2.0 * a * n * ((beta + p_i) * e + n * n) - 2.0 * cc * e * n;
    let k0 = a * a * n * n - 2.0 * a * n * n * (beta + p_i) + cc * n * n;
    let mut roots = [f64::NAN; 2];
    if k2.abs() <= 1e-14 * (k1.abs() + k0.abs()) {
        roots[0] = -k0 / k1;
    } else {
        let disc = k1 * k1 - 4.0 * k2 * k0;
        if disc < 0.0 {
            return Ok(None);
        }
        let s = -0.5 * (k1 + libm::sqrt(disc).copysign(k1));
        roots = [s / k2, k0 / s];
    }
    for c in roots {
        if !(c > 0.0 && c < 1.0) || e * c - n <= 0.0 {
            continue;
        }
        let q = q_of_c(prob, c)?;
        let g = rate_slope_indicator(prob, c)?;
        let scale = (q * c * (a - beta - p_i)).abs() + n * (1.0 + q);
        if g.abs() <= 1e-10 * scale {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Optimum of `P_IN` with its thresholds and achieved rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleUserSolution {
    pub c_star: f64,
    pub p_star: f64,
    pub c_b: f64,
    pub c_r: f64,
    /// `None` when the threshold's closed form is degenerate.
    pub xi: Option<f64>,
    pub su_rate: f64,
    pub pu_rate: f64,
    /// The primary constraint is slack at the optimum.
    pub pu_constraint_inactive: bool,
}

impl SingleUserSolution {
    pub fn params(&self) -> SignalParams {
        SignalParams::new(self.p_star, self.c_star)
    }
}

/// Optimal circularity `min(c_B, c_R)` and power `min(q(c*), P_S)`.
pub fn solve(prob: &SingleUserProblem) -> Result<SingleUserSolution> {
    prob.validate()?;
    let q0 = q_of_c(prob, 0.0)?;
    let xi = xi(prob).ok();
    let (c_b, c_r) = if prob.gain == 0.0 { (0.0, 0.0) } else { (c_b(prob)?, c_r(prob)?) };
    let c_star = c_b.min(c_r);
    let q = q_of_c(prob, c_star)?;
    let p_star = q.min(prob.budget);
    let params = SignalParams::new(p_star, c_star);
    Ok(SingleUserSolution {
        c_star,
        p_star,
        c_b,
        c_r,
        xi,
        su_rate: su_rate_raw(p_star, c_star),
        pu_rate: model::pu_rate_improper_noise(prob.pu_snr, prob.gain, params, prob.noise)?,
        pu_constraint_inactive: q0 >= prob.budget,
    })
}
