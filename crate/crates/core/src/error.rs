use alloc::string::String;
use core::fmt;

/// Errors raised by the solvers and the canonical-model reduction.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar input lies outside its admissible range.
    Domain { what: &'static str, value: f64 },
    /// Structurally malformed input (dimension mismatch, bad permutation, ...).
    Invalid(String),
    /// The zero-forcing channel matrix is numerically rank deficient.
    DegenerateChannel { column: usize, magnitude: f64 },
    /// The primary rate target cannot be met even without secondary interference.
    Infeasible { target: f64, achievable: f64 },
    /// A closed form hit a vanishing or negative denominator.
    Degenerate(&'static str),
    /// The brute-force search would exceed the supported problem size.
    OracleTooLarge { users: usize, evaluations: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of range: {value}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::DegenerateChannel { column, magnitude } => write!(
                f,
                "channel matrix is rank deficient at column {column} (|r_kk| = {magnitude:e})"
            ),
            Error::Infeasible { target, achievable } => write!(
                f,
                "primary rate target {target} b/s/Hz exceeds the achievable {achievable} b/s/Hz"
            ),
            Error::Degenerate(what) => write!(f, "degenerate closed form: {what}"),
            Error::OracleTooLarge { users, evaluations } => write!(
                f,
                "brute-force oracle refused for K = {users} ({evaluations:.3e} grid evaluations)"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        Err(Error::Domain { what, value })
    } else {
        Ok(())
    }
}
