//! JSON scenario files. Complex numbers are `[re, im]` pairs; `su_direct` is
//! given row by row (`N` rows of `K` entries). `decode_order` is 1-based and
//! defaults to `[K, ..., 1]`.

use std::path::Path;

use igsmac_core::{ComplexMatrix, DecodeOrder, PhysicalScenario};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub pu_direct: [f64; 2],
    pub pu_power: f64,
    pub su_cross: Vec<[f64; 2]>,
    pub su_direct: Vec<Vec<[f64; 2]>>,
    pub pu_to_bs: Vec<[f64; 2]>,
    pub su_budgets: Vec<f64>,
    pub pu_noise_var: f64,
    pub bs_noise_var: f64,
    /// Absolute primary target in b/s/Hz; exclusive with `pu_rate_fraction`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pu_rate_target: Option<f64>,
    /// Target as a fraction of the interference-free primary capacity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pu_rate_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode_order: Option<Vec<usize>>,
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl ScenarioFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, path)
    }

    pub fn to_physical(&self) -> Result<PhysicalScenario> {
        let rows: Vec<Vec<Complex64>> = self.su_direct.iter().map(|r| r.iter().copied().map(cx).collect()).collect();
        let su_direct = ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Input(e.to_string()))?;
        let k = su_direct.cols();
        let decode_order = match &self.decode_order {
            Some(o) => DecodeOrder::from_one_based(o).map_err(|e| CliError::Input(e.to_string()))?,
            None => DecodeOrder::reversed(k),
        };
        let mut phys = PhysicalScenario {
            pu_direct: cx(self.pu_direct),
            pu_power: self.pu_power,
            su_cross: self.su_cross.iter().copied().map(cx).collect(),
            su_direct,
            pu_to_bs: self.pu_to_bs.iter().copied().map(cx).collect(),
            su_budgets: self.su_budgets.clone(),
            pu_noise_var: self.pu_noise_var,
            bs_noise_var: self.bs_noise_var,
            pu_rate_target: 0.0,
            decode_order,
        };
        phys.pu_rate_target = match (self.pu_rate_target, self.pu_rate_fraction) {
            (Some(t), None) => t,
            (None, Some(f)) if f > 0.0 && f <= 1.0 => phys.capacity_fraction_target(f),
            (None, Some(f)) => return Err(CliError::Input(format!("pu_rate_fraction {f} is outside (0, 1]"))),
            (Some(_), Some(_)) => return Err(CliError::Input("give pu_rate_target or pu_rate_fraction, not both".into())),
            (None, None) => return Err(CliError::Input("missing pu_rate_target or pu_rate_fraction".into())),
        };
        phys.validate().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(phys)
    }

    pub fn from_physical(phys: &PhysicalScenario) -> Self {
        let h = &phys.su_direct;
        ScenarioFile {
            pu_direct: pair(phys.pu_direct),
            pu_power: phys.pu_power,
            su_cross: phys.su_cross.iter().copied().map(pair).collect(),
            su_direct: (0..h.rows()).map(|i| (0..h.cols()).map(|j| pair(h[(i, j)])).collect()).collect(),
            pu_to_bs: phys.pu_to_bs.iter().copied().map(pair).collect(),
            su_budgets: phys.su_budgets.clone(),
            pu_noise_var: phys.pu_noise_var,
            bs_noise_var: phys.bs_noise_var,
            pu_rate_target: Some(phys.pu_rate_target),
            pu_rate_fraction: None,
            decode_order: Some(phys.decode_order.as_slice().iter().map(|u| u + 1).collect()),
        }
    }
}
