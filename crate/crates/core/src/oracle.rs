//! Exhaustive grid searches used to cross-check the closed-form solvers.
//!
//! Only the rate expressions of [`crate::model`] are shared with the solvers.

use alloc::vec;
use alloc::vec::Vec;

use crate::boundary::RateProfile;
use crate::error::{Error, Result};
use crate::model::{pu_rate_aggregate, pu_rate_improper_noise, su_rate_raw, CanonicalScenario, SignalParams};
use crate::single_user::SingleUserProblem;

/// Largest supported user count for [`brute_boundary`].
pub const MAX_ORACLE_USERS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSingleUser {
    pub rate: f64,
    pub power: f64,
    pub circularity: f64,
}

fn grid(n: usize, hi: f64) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |i| if i + 1 == n { hi } else { hi * i as f64 / (n - 1) as f64 })
}

/// Best feasible point of an `n x n` grid over `[0, P_S] x [0, 1]`; `None` if no grid point is feasible.
pub fn brute_single_user(prob: &SingleUserProblem, n: usize) -> Result<Option<OracleSingleUser>> {
    prob.validate()?;
    if n < 2 {
        return Err(Error::Invalid("grid needs at least two points".into()));
    }
    let mut best: Option<OracleSingleUser> = None;
    for p in grid(n, prob.budget) {
        for c in grid(n, 1.0) {
            let params = SignalParams::new(p, c);
            if pu_rate_improper_noise(prob.pu_snr, prob.gain, params, prob.noise)? < prob.pu_rate_target {
                continue;
            }
            let rate = su_rate_raw(p, c);
            if best.is_none_or(|b| rate > b.rate) {
                best = Some(OracleSingleUser { rate, power: p, circularity: c });
            }
        }
    }
    Ok(best)
}

/// Best grid point of a boundary search: value `min_k R_k / alpha_k` and the
/// per-user `(power index, circularity index)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBoundary {
    pub value: f64,
    pub indices: Vec<(usize, usize)>,
    pub params: Vec<SignalParams>,
}

impl OracleBoundary {
    /// Larger value wins; ties go to the lexicographically smaller index tuple.
    pub fn merge(self, other: OracleBoundary) -> OracleBoundary {
        match self.value.partial_cmp(&other.value) {
            Some(core::cmp::Ordering::Greater) => self,
            Some(core::cmp::Ordering::Less) => other,
            _ => {
                if other.indices < self.indices {
                    other
                } else {
                    self
                }
            }
        }
    }
}

struct Candidate {
    value: f64,
    interference: f64,
    complementary: f64,
    idx: (usize, usize),
    params: SignalParams,
}

/// Cost guard shared by the sequential and sliced searches.
pub fn check_oracle_size(users: usize, n: usize) -> Result<()> {
    if users > MAX_ORACLE_USERS {
        return Err(Error::OracleTooLarge { users, evaluations: libm::pow(n as f64, 2.0 * users as f64) });
    }
    Ok(())
}

fn candidates(profile: &RateProfile, scenario: &CanonicalScenario, n: usize) -> Vec<Vec<Candidate>> {
    (0..scenario.users())
        .map(|k| {
            let alpha = profile.as_slice()[k];
            if alpha == 0.0 {
                return vec![Candidate {
                    value: f64::INFINITY,
                    interference: 0.0,
                    complementary: 0.0,
                    idx: (0, 0),
                    params: SignalParams::default(),
                }];
            }
            let a = scenario.gains[k];
            let mut out = Vec::with_capacity(n * n);
            for (i, p) in grid(n, scenario.budgets[k]).enumerate() {
                for (j, c) in grid(n, 1.0).enumerate() {
                    out.push(Candidate {
                        value: su_rate_raw(p, c) / alpha,
                        interference: a * p,
                        complementary: a * p * c,
                        idx: (i, j),
                        params: SignalParams::new(p, c),
                    });
                }
            }
            out
        })
        .collect()
}

/// Grid lower bound on the optimal `r` for `profile`, restricted to first-user
/// power indices in `slice` (use `0..n` for the full search).
pub fn brute_boundary_slice(
    profile: &RateProfile,
    scenario: &CanonicalScenario,
    n: usize,
    slice: core::ops::Range<usize>,
) -> Result<Option<OracleBoundary>> {
    scenario.validate()?;
    if profile.users() != scenario.users() {
        return Err(Error::Invalid("profile and scenario sizes differ".into()));
    }
    if n < 2 {
        return Err(Error::Invalid("grid needs at least two points".into()));
    }
    check_oracle_size(scenario.users(), n)?;
    let cands = candidates(profile, scenario, n);
    let mut chosen: Vec<usize> = vec![0; cands.len()];
    let mut best: Option<OracleBoundary> = None;
    let first: Vec<usize> = (0..cands[0].len()).filter(|&i| cands[0].len() == 1 || slice.contains(&cands[0][i].idx.0)).collect();
    for i in first {
        chosen[0] = i;
        let c = &cands[0][i];
        descend(1, c.value, c.interference, c.complementary, &cands, scenario, &mut chosen, &mut best);
    }
    Ok(best)
}

/// Grid lower bound on the optimal `r`; refuses more than three users.
pub fn brute_boundary(profile: &RateProfile, scenario: &CanonicalScenario, n: usize) -> Result<Option<OracleBoundary>> {
    brute_boundary_slice(profile, scenario, n, 0..n)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    depth: usize,
    value: f64,
    interference: f64,
    complementary: f64,
    cands: &[Vec<Candidate>],
    scenario: &CanonicalScenario,
    chosen: &mut Vec<usize>,
    best: &mut Option<OracleBoundary>,
) {
    if best.as_ref().is_some_and(|b| value < b.value) {
        return;
    }
    if depth == cands.len() {
        if pu_rate_aggregate(scenario.pu_snr, interference, complementary) < scenario.pu_rate_target {
            return;
        }
        let indices: Vec<(usize, usize)> = chosen.iter().zip(cands).map(|(&i, c)| c[i].idx).collect();
        let params = chosen.iter().zip(cands).map(|(&i, c)| c[i].params).collect();
        let value = if value.is_finite() { value } else { 0.0 };
        let cand = OracleBoundary { value, indices, params };
        *best = Some(match best.take() {
            Some(b) => b.merge(cand),
            None => cand,
        });
        return;
    }
    for i in 0..cands[depth].len() {
        chosen[depth] = i;
        let c = &cands[depth][i];
        descend(
            depth + 1,
            value.min(c.value),
            interference + c.interference,
            complementary + c.complementary,
            cands,
            scenario,
            chosen,
            best,
        );
    }
}
