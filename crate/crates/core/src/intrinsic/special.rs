//! Digamma ψ and trigamma ψ′ for positive real arguments.
//!
//! Both shift the argument upward with the recurrences
//! `ψ(x) = ψ(x+1) − 1/x` and `ψ′(x) = ψ′(x+1) + 1/x²` until `x ≥ 12`,
//! then sum the Bernoulli-number asymptotic expansion.

use crate::error::{Error, Result};

const SHIFT_THRESHOLD: f64 = 12.0;

/// Bernoulli numbers B₂, B₄, …, B₂₀.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn check_domain(x: f64, name: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{name} requires a finite x > 0, got {x}")));
    }
    Ok(())
}

pub fn digamma(x: f64) -> Result<f64> {
    check_domain(x, "digamma")?;
    let mut x = x;
    let mut shift = 0.0;
    while x < SHIFT_THRESHOLD {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Σ B₂ₖ / (2k x²ᵏ), Horner in 1/x²
    let mut series = 0.0;
    for (i, b) in BERNOULLI_EVEN.iter().enumerate().rev() {
        let k2 = 2.0 * (i + 1) as f64;
        series = (series + b / k2) * inv2;
    }
    Ok(shift + x.ln() - 0.5 / x - series)
}

pub fn trigamma(x: f64) -> Result<f64> {
    check_domain(x, "trigamma")?;
    let mut x = x;
    let mut shift = 0.0;
    while x < SHIFT_THRESHOLD {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Σ B₂ₖ / x^{2k+1}
    let mut series = 0.0;
    for b in BERNOULLI_EVEN.iter().rev() {
        series = (series + b) * inv2;
    }
    Ok(shift + inv + 0.5 * inv2 + series * inv)
}
