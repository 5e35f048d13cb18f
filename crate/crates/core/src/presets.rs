//! The three two-user reference scenarios.
//!
//! The printed base-station vector `g` of scenarios 1 and 2 does not reproduce
//! the published canonical gains (scenario 1 repeats `[g_1, g_2]`). Those two
//! presets use a four-decimal `g` fitted to the published gains of both decoding
//! orders; [`printed_pu_to_bs`] keeps the printed values for reference.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::canonicalize::{ComplexMatrix, DecodeOrder, PhysicalScenario};
use crate::error::{Error, Result};

/// Which user the base station decodes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetOrder {
    /// User 2 first (reversed indices).
    Default,
    /// User 1 first.
    Swapped,
}

impl PresetOrder {
    pub fn decode_order(self) -> DecodeOrder {
        match self {
            PresetOrder::Default => DecodeOrder::reversed(2),
            PresetOrder::Swapped => DecodeOrder::natural(2),
        }
    }
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Channels {
    h_rows: [[Complex64; 2]; 2],
    h: Complex64,
    g_cross: [Complex64; 2],
    g_bs: [Complex64; 2],
    g_bs_printed: [Complex64; 2],
}

fn channels(id: u8) -> Result<Channels> {
    Ok(match id {
        1 => Channels {
            h_rows: [[c(2.6366, -0.3382), c(-2.8824, -0.1728)], [c(-1.4428, 1.0861), c(-1.7887, 2.0730)]],
            h: c(-0.8815, 0.4721),
            g_cross: [c(0.0533, 0.2217), c(0.2221, 0.1991)],
            g_bs: [c(-0.0697, 1.5705), c(0.2013, 0.0111)],
            g_bs_printed: [c(0.0533, 0.2217), c(0.2221, 0.1991)],
        },
        2 => Channels {
            h_rows: [[c(0.1599, -0.9812), c(1.0563, 0.8070)], [c(-0.5172, 0.4742), c(1.1759, 0.9756)]],
            h: c(0.9445, 0.3284),
            g_cross: [c(0.2908, 0.1358), c(0.3279, 0.1532)],
            g_bs: [c(0.1648, 0.3866), c(0.5796, 0.1054)],
            g_bs_printed: [c(-0.3209, -0.0052), c(-0.1427, -0.3326)],
        },
        3 => Channels {
            h_rows: [[c(2.1257, -3.0397), c(-0.4956, 0.9835)], [c(0.5401, -0.9356), c(2.1329, -0.6720)]],
            h: c(0.8292, 0.5589),
            g_cross: [c(-0.0869, 0.3653), c(0.0301, 0.0900)],
            g_bs: [c(1.1379, 0.7371), c(0.2219, -0.2120)],
            g_bs_printed: [c(1.1379, 0.7371), c(0.2219, -0.2120)],
        },
        _ => return Err(Error::Invalid(alloc::format!("unknown preset {id}; expected 1, 2 or 3"))),
    })
}

/// Reference scenario `id` with `p' = P'_1 = P'_2 = 100`, unit noise variances and
/// the primary target at 80% of its interference-free capacity.
pub fn paper_scenario(id: u8, order: PresetOrder) -> Result<PhysicalScenario> {
    let ch = channels(id)?;
    let rows: Vec<Vec<Complex64>> = ch.h_rows.iter().map(|r| r.to_vec()).collect();
    let mut s = PhysicalScenario {
        pu_direct: ch.h,
        pu_power: 100.0,
        su_cross: ch.g_cross.to_vec(),
        su_direct: ComplexMatrix::from_rows(&rows)?,
        pu_to_bs: ch.g_bs.to_vec(),
        su_budgets: vec![100.0, 100.0],
        pu_noise_var: 1.0,
        bs_noise_var: 1.0,
        pu_rate_target: 0.0,
        decode_order: order.decode_order(),
    };
    s.pu_rate_target = s.capacity_fraction_target(0.8);
    Ok(s)
}

/// The base-station vector `g` exactly as printed for scenario `id`.
pub fn printed_pu_to_bs(id: u8) -> Result<Vec<Complex64>> {
    Ok(channels(id)?.g_bs_printed.to_vec())
}
