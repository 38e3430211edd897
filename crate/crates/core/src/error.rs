use thiserror::Error;

/// Errors produced by the state algebra, the measures and the sweep engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("unphysical covariance matrix: smallest symplectic eigenvalue {lambda_minus} < 1/2")]
    Unphysical { lambda_minus: f64 },

    #[error("unphysical covariance matrix: symplectic discriminant {discriminant} is negative")]
    NegativeDiscriminant { discriminant: f64 },

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("minimization did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_nonneg(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be nonnegative",
        });
    }
    Ok(value)
}
