//! Canonical-domain types and the rate expressions shared by every solver.
//!
//! All rates are in bits per complex channel use. Complementary variances are
//! represented by their circularity `c` and phase `phi`; after [`align_phases`]
//! every phase is zero and complementary terms are nonnegative reals.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{check_range, Error, Result};

/// `log2` with the argument clamped at 1, absorbing rounding at equality points.
#[inline]
pub(crate) fn log2_guarded(x: f64) -> f64 {
    libm::log2(if x > 1.0 { x } else { 1.0 })
}

/// Transmit parameters of one secondary user.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SignalParams {
    /// Transmit power in canonical SNR units.
    pub power: f64,
    /// Circularity coefficient in `[0, 1]`.
    pub circularity: f64,
    /// Phase of the complementary variance, radians.
    pub phase: f64,
}

impl SignalParams {
    pub const fn new(power: f64, circularity: f64) -> Self {
        SignalParams { power, circularity, phase: 0.0 }
    }

    pub const fn proper(power: f64) -> Self {
        SignalParams::new(power, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("power", self.power, 0.0, f64::INFINITY)?;
        check_range("circularity", self.circularity, 0.0, 1.0)?;
        if !self.phase.is_finite() {
            return Err(Error::Domain { what: "phase", value: self.phase });
        }
        Ok(())
    }

    /// Complementary variance `p c e^{j phi}`.
    pub fn complementary(&self) -> Complex64 {
        Complex64::from_polar(self.power * self.circularity, self.phase)
    }
}

/// Equivalent noise at the primary receiver: unit proper noise plus an improper
/// part of power `total - 1` and complementary magnitude `complementary`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseState {
    pub total: f64,
    pub complementary: f64,
}

impl Default for NoiseState {
    fn default() -> Self {
        NoiseState::PROPER
    }
}

impl NoiseState {
    /// Unit-variance proper noise.
    pub const PROPER: NoiseState = NoiseState { total: 1.0, complementary: 0.0 };

    pub fn new(total: f64, complementary: f64) -> Result<Self> {
        let n = NoiseState { total, complementary };
        n.validate()?;
        Ok(n)
    }

    /// Builds the state from the improper part's power `p_i` and circularity `c_i`.
    pub fn from_improper(p_i: f64, c_i: f64) -> Result<Self> {
        check_range("improper noise power", p_i, 0.0, f64::INFINITY)?;
        check_range("improper noise circularity", c_i, 0.0, 1.0)?;
        Ok(NoiseState { total: 1.0 + p_i, complementary: p_i * c_i })
    }

    pub fn validate(&self) -> Result<()> {
        check_range("noise variance", self.total, 1.0, f64::INFINITY)?;
        let slack = 1e-12 * self.total;
        check_range("noise complementary variance", self.complementary, 0.0, self.total - 1.0 + slack)
    }

    /// Power of the improper part, `p_I`.
    pub fn improper_power(&self) -> f64 {
        (self.total - 1.0).max(0.0)
    }

    /// Circularity of the improper part, `c_I`; zero when there is no improper part.
    pub fn improper_circularity(&self) -> f64 {
        let p_i = self.improper_power();
        if p_i > 0.0 {
            (self.complementary / p_i).min(1.0)
        } else {
            0.0
        }
    }

    /// Adds an interference term of power `power` and complementary magnitude `power * c`.
    pub fn absorb(&mut self, gain: f64, params: SignalParams) {
        self.total += gain * params.power;
        self.complementary += gain * params.power * params.circularity;
    }
}

/// `beta = 1 - p / (2^{2 R} - 1)`; minus infinity for a zero target.
pub fn beta(pu_snr: f64, target: f64) -> f64 {
    let den = libm::exp2(2.0 * target) - 1.0;
    if den > 0.0 {
        1.0 - pu_snr / den
    } else {
        f64::NEG_INFINITY
    }
}

/// The canonical model: unit direct gains and unit noise everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalScenario {
    /// Primary SNR `p`.
    pub pu_snr: f64,
    /// Interference gains `a_k` from each secondary user to the primary receiver.
    pub gains: Vec<f64>,
    /// Secondary power budgets `P_k`.
    pub budgets: Vec<f64>,
    /// Primary rate target `R`.
    pub pu_rate_target: f64,
}

impl CanonicalScenario {
    pub fn new(pu_snr: f64, gains: Vec<f64>, budgets: Vec<f64>, pu_rate_target: f64) -> Result<Self> {
        let s = CanonicalScenario { pu_snr, gains, budgets, pu_rate_target };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        check_range("pu_snr", self.pu_snr, 0.0, f64::MAX)?;
        check_range("pu_rate_target", self.pu_rate_target, 0.0, f64::MAX)?;
        if self.gains.len() != self.budgets.len() {
            return Err(Error::Invalid(alloc::format!(
                "{} interference gains but {} budgets",
                self.gains.len(),
                self.budgets.len()
            )));
        }
        if self.gains.is_empty() {
            return Err(Error::Invalid("scenario has no secondary users".into()));
        }
        for &a in &self.gains {
            check_range("interference gain", a, 0.0, f64::MAX)?;
        }
        for &b in &self.budgets {
            check_range("power budget", b, f64::MIN_POSITIVE, f64::MAX)?;
        }
        let capacity = libm::log2(1.0 + self.pu_snr);
        if self.pu_rate_target > capacity * (1.0 + 1e-12) {
            return Err(Error::Infeasible { target: self.pu_rate_target, achievable: capacity });
        }
        Ok(())
    }

    pub fn users(&self) -> usize {
        self.gains.len()
    }

    pub fn beta(&self) -> f64 {
        beta(self.pu_snr, self.pu_rate_target)
    }
}

/// Secondary rate `0.5 log2(1 + p [p (1 - c^2) + 2])` without validation.
#[inline]
pub fn su_rate_raw(power: f64, circularity: f64) -> f64 {
    0.5 * log2_guarded(1.0 + power * (power * (1.0 - circularity * circularity) + 2.0))
}

/// Rate of a secondary user with unit channel and unit proper noise.
pub fn su_rate(params: SignalParams) -> Result<f64> {
    params.validate()?;
    Ok(su_rate_raw(params.power, params.circularity))
}

/// Primary rate with unit proper noise plus interference of total power
/// `interference` and complementary magnitude `complementary`.
#[inline]
pub fn pu_rate_aggregate(pu_snr: f64, interference: f64, complementary: f64) -> f64 {
    let j2 = complementary * complementary;
    let num = (1.0 + pu_snr + interference) * (1.0 + pu_snr + interference) - j2;
    let den = (1.0 + interference) * (1.0 + interference) - j2;
    0.5 * log2_guarded(num / den)
}

/// Primary rate under the interference of all secondary users.
pub fn pu_rate(scenario: &CanonicalScenario, params: &[SignalParams]) -> Result<f64> {
    if params.len() != scenario.users() {
        return Err(Error::Invalid(alloc::format!(
            "{} parameter sets for {} users",
            params.len(),
            scenario.users()
        )));
    }
    let mut interference = 0.0;
    let mut comp = Complex64::new(0.0, 0.0);
    for (a, sp) in scenario.gains.iter().zip(params) {
        sp.validate()?;
        interference += a * sp.power;
        comp += sp.complementary() * *a;
    }
    Ok(pu_rate_aggregate(scenario.pu_snr, interference, comp.norm()))
}

/// Primary rate for one equivalent secondary user with gain `gain` and an
/// improper primary-side noise `noise` whose complementary variance has phase 0.
pub fn pu_rate_improper_noise(
    pu_snr: f64,
    gain: f64,
    params: SignalParams,
    noise: NoiseState,
) -> Result<f64> {
    params.validate()?;
    noise.validate()?;
    check_range("gain", gain, 0.0, f64::MAX)?;
    let interference = gain * params.power + noise.improper_power();
    let comp = params.complementary() * gain + Complex64::new(noise.complementary, 0.0);
    Ok(pu_rate_aggregate(pu_snr, interference, comp.norm()))
}

/// Sets every complementary phase to the common value 0.
pub fn align_phases(params: &mut [SignalParams]) {
    for p in params {
        p.phase = 0.0;
    }
}
