//! Closed-form intrinsic bias and scalar Riemannian risk.
//!
//! For `N` iid draws with `K S ~ W_p^C(K, Σ)`:
//!
//! ```text
//! a₀(K, p)        = (1/p) Σ_{j=1..p} ψ(K + 1 − j) − log K
//! ibias(Fréchet)  = p a₀(K, p)²          (independent of N and Σ)
//! ibias(mean)     = p a₀(KN, p)²
//! Rr(Fréchet)     = ψ′(K)/N + [ψ(K) − log K]²      (p = 1)
//! Rr(mean)        = ψ′(KN) + [ψ(KN) − log KN]²     (p = 1)
//! ```

use serde::{Deserialize, Serialize};

use super::special::{digamma, trigamma};
use crate::error::{Error, Result};

/// Validated `(p, K, N)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyticBiasInputs {
    pub p: usize,
    pub k: usize,
    pub n: usize,
}

impl AnalyticBiasInputs {
    pub fn new(p: usize, k: usize, n: usize) -> Result<Self> {
        check_pk(k, p)?;
        if n == 0 {
            return Err(Error::Domain("sample count N must be at least 1".into()));
        }
        pooled_dof(k, n)?;
        Ok(Self { p, k, n })
    }

    pub fn a0(&self) -> f64 {
        a0_unchecked(self.k, self.p)
    }

    pub fn ibias_frechet(&self) -> f64 {
        let a = self.a0();
        self.p as f64 * a * a
    }

    pub fn ibias_mean(&self) -> f64 {
        let a = a0_unchecked(self.k * self.n, self.p);
        self.p as f64 * a * a
    }
}

fn check_pk(k: usize, p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("dimension p must be at least 1".into()));
    }
    if k < p {
        return Err(Error::Domain(format!(
            "degrees of freedom K = {k} must be at least p = {p}"
        )));
    }
    Ok(())
}

fn pooled_dof(k: usize, n: usize) -> Result<usize> {
    k.checked_mul(n)
        .ok_or_else(|| Error::Domain(format!("K·N overflows for K = {k}, N = {n}")))
}

fn a0_unchecked(k: usize, p: usize) -> f64 {
    let sum: f64 = (1..=p)
        .map(|j| digamma((k + 1 - j) as f64).expect("argument is a positive integer"))
        .sum();
    sum / p as f64 - (k as f64).ln()
}

/// The common diagonal value of the expected whitened log of a Fréchet
/// mean (or of a single sample covariance) with `K` degrees of freedom.
pub fn a0(k: usize, p: usize) -> Result<f64> {
    check_pk(k, p)?;
    Ok(a0_unchecked(k, p))
}

pub fn ibias_frechet_analytic(p: usize, k: usize) -> Result<f64> {
    Ok(AnalyticBiasInputs::new(p, k, 1)?.ibias_frechet())
}

pub fn ibias_mean_analytic(p: usize, k: usize, n: usize) -> Result<f64> {
    Ok(AnalyticBiasInputs::new(p, k, n)?.ibias_mean())
}

fn scalar_risk(dof: usize, variance_divisor: f64) -> Result<f64> {
    let kf = dof as f64;
    let bias = digamma(kf)? - kf.ln();
    Ok(trigamma(kf)? / variance_divisor + bias * bias)
}

/// Riemannian risk of the Fréchet (geometric) mean of `N` scalar draws.
pub fn scalar_risk_frechet(k: usize, n: usize) -> Result<f64> {
    AnalyticBiasInputs::new(1, k, n)?;
    scalar_risk(k, n as f64)
}

/// Riemannian risk of the arithmetic mean of `N` scalar draws.
pub fn scalar_risk_mean(k: usize, n: usize) -> Result<f64> {
    AnalyticBiasInputs::new(1, k, n)?;
    scalar_risk(pooled_dof(k, n)?, 1.0)
}
