//! Boundary tables as CSV and JSON.

use std::io::Write;

use igsmac_core::boundary::BoundaryPoint;
use igsmac_core::Signaling;
use serde::Serialize;

use crate::error::Result;

/// Column names `alpha_1..K, r, R_1..K, c, p_1..K, c_1..K, igs_required`.
pub fn boundary_columns(k: usize) -> Vec<String> {
    let mut cols = Vec::with_capacity(3 * k + 4);
    cols.extend((1..=k).map(|i| format!("alpha_{i}")));
    cols.push("r".into());
    cols.extend((1..=k).map(|i| format!("R_{i}")));
    cols.push("c".into());
    cols.extend((1..=k).map(|i| format!("p_{i}")));
    cols.extend((1..=k).map(|i| format!("c_{i}")));
    cols.push("igs_required".into());
    cols
}

pub fn boundary_row(pt: &BoundaryPoint) -> Vec<String> {
    let mut row: Vec<String> = pt.profile.as_slice().iter().map(f64::to_string).collect();
    row.push(pt.r.to_string());
    row.extend(pt.rate_tuple().iter().map(f64::to_string));
    row.push(pt.aggregate_c.to_string());
    row.extend(pt.params.iter().map(|s| s.power.to_string()));
    row.extend(pt.params.iter().map(|s| s.circularity.to_string()));
    row.push(pt.igs_required.to_string());
    row
}

/// `# key: value` lines ahead of a CSV body.
pub fn write_comments<W: Write>(w: &mut W, comments: &[String]) -> std::io::Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    Ok(())
}

pub fn write_boundary_csv<W: Write>(w: W, comments: &[String], points: &[BoundaryPoint]) -> Result<()> {
    let mut w = w;
    write_comments(&mut w, comments).map_err(csv::Error::from)?;
    let k = points.first().map_or(0, |p| p.params.len());
    let mut out = csv::Writer::from_writer(w);
    out.write_record(boundary_columns(k))?;
    for p in points {
        out.write_record(boundary_row(p))?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes a numeric table with a header row.
pub fn write_table<W: Write>(w: W, comments: &[String], header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = w;
    write_comments(&mut w, comments).map_err(csv::Error::from)?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(r)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRecord {
    pub alpha: Vec<f64>,
    pub r: f64,
    pub rates: Vec<f64>,
    pub c: f64,
    pub power: Vec<f64>,
    pub circularity: Vec<f64>,
    pub phase: Vec<f64>,
    pub igs_required: bool,
    pub signaling: &'static str,
    pub pu_rate: f64,
    /// 1-based users at their rate cap.
    pub saturated: Vec<usize>,
    pub iterations: usize,
}

impl From<&BoundaryPoint> for BoundaryRecord {
    fn from(p: &BoundaryPoint) -> Self {
        BoundaryRecord {
            alpha: p.profile.as_slice().to_vec(),
            r: p.r,
            rates: p.rate_tuple(),
            c: p.aggregate_c,
            power: p.params.iter().map(|s| s.power).collect(),
            circularity: p.params.iter().map(|s| s.circularity).collect(),
            phase: p.params.iter().map(|s| s.phase).collect(),
            igs_required: p.igs_required,
            signaling: match p.signaling {
                Signaling::Improper => "igs",
                Signaling::Proper => "pgs",
            },
            pu_rate: p.pu_rate,
            saturated: p.saturated.iter().map(|u| u + 1).collect(),
            iterations: p.iterations,
        }
    }
}
