//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An eta-quotient prefactor exponent `sum(d_i * r_i) / 24` is not an integer.
    #[error("eta quotient {spec}: sum(d*r) = {sum} is not a multiple of 24")]
    NonIntegralLeadingExponent { spec: String, sum: i64 },

    /// An eta-quotient prefactor exponent is negative (the series would be Laurent).
    #[error("eta quotient {spec}: leading exponent {exponent} is negative")]
    NegativeLeadingExponent { spec: String, exponent: i64 },

    /// `chi(-1) * psi(-1) != (-1)^k`: the corresponding space is zero.
    #[error("Eisenstein series weight {k} with characters {chi}, {psi}: parity mismatch")]
    ParityMismatch { k: u32, chi: String, psi: String },

    /// A basis listing spans fewer dimensions than its space requires.
    #[error(
        "basis for {space} has rank {rank}, expected {expected}; dependent columns {dependent:?}"
    )]
    RankDeficient {
        space: String,
        rank: usize,
        expected: usize,
        /// 1-based indices of listed elements that are linear combinations of
        /// earlier ones.
        dependent: Vec<usize>,
    },

    /// An overdetermined linear system failed its residual rows.
    #[error("inconsistent linear system{}: row {row} has nonzero residual", ctx_suffix(.context))]
    InconsistentSystem { context: String, row: usize },

    /// The chi24 duplicate-entry remediation could not produce a substitute.
    #[error("basis remediation failed: {0}")]
    RemediationFailed(String),

    /// Unknown series name passed to the expansion surface.
    #[error("unknown series {0:?}")]
    UnknownSeries(String),

    /// A quadratic-form descriptor violates its constraints.
    #[error("invalid quadratic form: {field}: {message}")]
    ConstraintViolation { field: String, message: String },

    /// Malformed input (rationals, form labels, eta specs, table data).
    #[error("parse error: {0}")]
    Parse(String),
}

fn ctx_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" for {context}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
