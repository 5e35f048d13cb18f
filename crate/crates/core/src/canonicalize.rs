//! Zero-forcing SIC reduction of a physical scenario to the canonical model.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{check_range, Error, Result};
use crate::model::CanonicalScenario;

/// Dense complex matrix stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        let mut m = Self::zeros(n, k);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        Ok(m)
    }

    pub fn from_columns(cols: &[Vec<Complex64>]) -> Result<Self> {
        let k = cols.len();
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::Invalid("ragged matrix columns".into()));
        }
        Ok(ComplexMatrix { rows: n, cols: k, data: cols.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    fn column_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Matrix whose `j`-th column is column `order[j]` of `self`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, order.len());
        for (j, &src) in order.iter().enumerate() {
            out.column_mut(j).copy_from_slice(self.column(src));
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(Complex64::norm_sqr).sum())
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            for l in 0..self.cols {
                let b = rhs[(l, j)];
                for i in 0..self.rows {
                    out[(i, j)] += self[(i, l)] * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[j * self.rows + i]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[j * self.rows + i]
    }
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Thin QR by modified Gram-Schmidt with one reorthogonalization pass.
///
/// The diagonal of `R` is real and positive.
pub fn qr_decompose(h: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let (n, k) = (h.rows(), h.cols());
    if k == 0 || n < k {
        return Err(Error::Invalid(format!("QR needs N >= K >= 1, got {n}x{k}")));
    }
    let scale = h.frobenius_norm();
    let mut q = h.clone();
    let mut r = ComplexMatrix::zeros(k, k);
    for j in 0..k {
        for _pass in 0..2 {
            for i in 0..j {
                let coef = inner(q.column(i), q.column(j));
                r[(i, j)] += coef;
                let qi: Vec<Complex64> = q.column(i).to_vec();
                for (x, y) in q.column_mut(j).iter_mut().zip(&qi) {
                    *x -= coef * y;
                }
            }
        }
        let norm = libm::sqrt(q.column(j).iter().map(Complex64::norm_sqr).sum());
        if !(norm >= 1e-12 * scale) || norm == 0.0 {
            return Err(Error::DegenerateChannel { column: j, magnitude: norm });
        }
        r[(j, j)] = Complex64::new(norm, 0.0);
        for x in q.column_mut(j) {
            *x /= norm;
        }
    }
    Ok((q, r))
}

/// SIC ordering as a column permutation: column `j` of the permuted channel
/// matrix is user `order[j]` (0-based). [`DecodeOrder::reversed`] is the default
/// labelled "user K decoded first".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOrder(Vec<usize>);

impl DecodeOrder {
    /// `[K-1, ..., 0]`, the default ordering.
    pub fn reversed(k: usize) -> Self {
        DecodeOrder((0..k).rev().collect())
    }

    /// `[0, ..., K-1]`.
    pub fn natural(k: usize) -> Self {
        DecodeOrder((0..k).collect())
    }

    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &u in &order {
            if u >= order.len() || seen[u] {
                return Err(Error::Invalid(format!("{order:?} is not a permutation")));
            }
            seen[u] = true;
        }
        Ok(DecodeOrder(order))
    }

    /// Parses a 1-based permutation of `1..=K`.
    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::Invalid(format!("{order:?} is not a permutation of 1..K")));
        }
        Self::new(order.iter().map(|u| u - 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Channels, powers and noise levels of the primary link and the secondary MAC.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalScenario {
    /// Primary direct channel `h`.
    pub pu_direct: Complex64,
    /// Primary transmit power `p'`.
    pub pu_power: f64,
    /// Cross channels `g_k` from each secondary user to the primary receiver.
    pub su_cross: Vec<Complex64>,
    /// `N x K` channel matrix from the secondary users to the base station.
    pub su_direct: ComplexMatrix,
    /// Channel `g` from the primary transmitter to the base station.
    pub pu_to_bs: Vec<Complex64>,
    /// Secondary power budgets `P'_k`.
    pub su_budgets: Vec<f64>,
    /// Noise variance at the primary receiver.
    pub pu_noise_var: f64,
    /// Noise variance at the base station.
    pub bs_noise_var: f64,
    /// Primary rate target in b/s/Hz.
    pub pu_rate_target: f64,
    pub decode_order: DecodeOrder,
}

impl PhysicalScenario {
    pub fn users(&self) -> usize {
        self.su_direct.cols()
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.su_direct.rows(), self.su_direct.cols());
        if k == 0 {
            return Err(Error::Invalid("no secondary users".into()));
        }
        if n < k {
            return Err(Error::Invalid(format!("N = {n} antennas is less than K = {k} users")));
        }
        if self.su_cross.len() != k {
            return Err(Error::Invalid(format!("su_cross has {} entries, expected {k}", self.su_cross.len())));
        }
        if self.su_budgets.len() != k {
            return Err(Error::Invalid(format!("su_budgets has {} entries, expected {k}", self.su_budgets.len())));
        }
        if self.pu_to_bs.len() != n {
            return Err(Error::Invalid(format!("pu_to_bs has {} entries, expected {n}", self.pu_to_bs.len())));
        }
        if self.decode_order.as_slice().len() != k {
            return Err(Error::Invalid(format!("decode_order must be a permutation of 1..{k}")));
        }
        check_range("pu_power", self.pu_power, f64::MIN_POSITIVE, f64::MAX)?;
        check_range("pu_noise_var", self.pu_noise_var, f64::MIN_POSITIVE, f64::MAX)?;
        check_range("bs_noise_var", self.bs_noise_var, f64::MIN_POSITIVE, f64::MAX)?;
        check_range("pu_rate_target", self.pu_rate_target, 0.0, f64::MAX)?;
        for &b in &self.su_budgets {
            check_range("su_budget", b, f64::MIN_POSITIVE, f64::MAX)?;
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(&self.pu_direct)
            || !self.su_cross.iter().all(finite)
            || !self.pu_to_bs.iter().all(finite)
            || !(0..k).all(|j| self.su_direct.column(j).iter().all(finite))
        {
            return Err(Error::Invalid("non-finite channel coefficient".into()));
        }
        Ok(())
    }

    /// Rate target as a fraction of the interference-free primary capacity.
    pub fn capacity_fraction_target(&self, fraction: f64) -> f64 {
        fraction * libm::log2(1.0 + self.pu_power * self.pu_direct.norm_sqr() / self.pu_noise_var)
    }
}

/// Canonical model together with the receiver quantities that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalizationResult {
    pub scenario: CanonicalScenario,
    /// `Q` of the QR decomposition of the column-permuted channel matrix.
    pub zf_q: ComplexMatrix,
    /// `R` of the same decomposition.
    pub zf_r: ComplexMatrix,
    /// Effective noise variance `sigma_k^2` of each user's ZF output, indexed by user.
    pub per_user_noise: Vec<f64>,
}

/// Reduces `phys` to unit direct gains and unit noise.
pub fn to_canonical(phys: &PhysicalScenario) -> Result<CanonicalizationResult> {
    phys.validate()?;
    let k = phys.users();
    let order = phys.decode_order.as_slice();
    let (q, r) = qr_decompose(&phys.su_direct.permute_columns(order))?;

    let mut gains = vec![0.0; k];
    let mut budgets = vec![0.0; k];
    let mut per_user_noise = vec![0.0; k];
    for (pos, &user) in order.iter().enumerate() {
        let r_kk = r[(pos, pos)].norm_sqr();
        let leak = inner(q.column(pos), &phys.pu_to_bs).norm_sqr();
        let sigma2 = phys.pu_power * leak + phys.bs_noise_var;
        gains[user] = sigma2 * phys.su_cross[user].norm_sqr() / (phys.pu_noise_var * r_kk);
        budgets[user] = phys.su_budgets[user] * r_kk / sigma2;
        per_user_noise[user] = sigma2;
    }
    let pu_snr = phys.pu_power * phys.pu_direct.norm_sqr() / phys.pu_noise_var;
    let scenario = CanonicalScenario::new(pu_snr, gains, budgets, phys.pu_rate_target)?;
    Ok(CanonicalizationResult { scenario, zf_q: q, zf_r: r, per_user_noise })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_qr() {
        let (q, r) = qr_decompose(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(q, ComplexMatrix::identity(2));
        assert_eq!(r, ComplexMatrix::identity(2));
    }

    #[test]
    fn diagonal_qr_has_positive_diagonal() {
        let h = ComplexMatrix::from_rows(&[vec![c(2.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 3.0)]]).unwrap();
        let (q, r) = qr_decompose(&h).unwrap();
        assert!((r[(0, 0)] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((r[(1, 1)] - c(3.0, 0.0)).norm() < 1e-15);
        assert!((q[(1, 1)] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn rank_deficient_rejected() {
        let h = ComplexMatrix::from_rows(&[vec![c(1.0, 1.0), c(2.0, 2.0)], vec![c(0.5, 0.0), c(1.0, 0.0)]]).unwrap();
        assert!(matches!(qr_decompose(&h), Err(Error::DegenerateChannel { column: 1, .. })));
    }

    #[test]
    fn decode_order_parsing() {
        assert_eq!(DecodeOrder::from_one_based(&[2, 1]).unwrap(), DecodeOrder::reversed(2));
        assert!(DecodeOrder::from_one_based(&[1, 1]).is_err());
        assert!(DecodeOrder::from_one_based(&[0, 1]).is_err());
        assert!(DecodeOrder::new(vec![0, 2]).is_err());
    }
}
