use thiserror::Error;

use crate::basis::Basis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` out of range: {detail}")]
    Parameter { name: &'static str, detail: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite function value at node {node}")]
    NonFinite { node: f64 },

    #[error("expected a series in the {expected} basis, got {found}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("jacobian is singular (condition estimate {condition:.3e})")]
    Singular { condition: f64, iterate: Vec<f64> },

    #[error("infeasible iterate: K phi = {value:.3e} < 0 at t = {t}")]
    Infeasible { t: f64, value: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            detail: detail.into(),
        }
    }
}
