//! Intrinsic bias and Riemannian risk of the two averaging estimators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub mod analytic;
pub mod monte_carlo;
pub mod special;

pub use analytic::{
    a0, ibias_frechet_analytic, ibias_mean_analytic, scalar_risk_frechet, scalar_risk_mean,
    AnalyticBiasInputs,
};
pub use monte_carlo::{
    bias_vector_field_mc, bias_vector_field_mc_with_options, risk_decomposition_mc,
    MonteCarloReport, RiskDecomposition,
};
pub use special::{digamma, trigamma};

/// Which average of the `N` sample covariances is used as the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    FrechetMean,
    ArithmeticMean,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 2] = [EstimatorKind::FrechetMean, EstimatorKind::ArithmeticMean];

    pub fn as_str(self) -> &'static str {
        match self {
            EstimatorKind::FrechetMean => "frechet-mean",
            EstimatorKind::ArithmeticMean => "arithmetic-mean",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "frechet" | "frechet-mean" | "karcher" => Ok(EstimatorKind::FrechetMean),
            "mean" | "arithmetic" | "arithmetic-mean" => Ok(EstimatorKind::ArithmeticMean),
            other => Err(Error::Config(format!(
                "unknown estimator '{other}' (expected frechet-mean or arithmetic-mean)"
            ))),
        }
    }
}
