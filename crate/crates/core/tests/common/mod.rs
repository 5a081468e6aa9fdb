#![allow(dead_code)]

use intrinsic_wishart::hpd::{CMatrix, HermitianMatrix, HpdMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, p: usize) -> CMatrix {
    CMatrix::from_fn(p, p, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, p: usize, scale: f64) -> HermitianMatrix {
    let a = random_complex(rng, p);
    HermitianMatrix::new((&a + a.adjoint()) * C64::new(0.5 * scale, 0.0)).unwrap()
}

pub fn random_hpd(rng: &mut ChaCha8Rng, p: usize) -> HpdMatrix {
    let a = random_complex(rng, p);
    HpdMatrix::from_matrix(&a * a.adjoint() + CMatrix::identity(p, p) * C64::new(0.5, 0.0)).unwrap()
}

/// Invertible with condition number bounded well away from the guard.
pub fn random_invertible(rng: &mut ChaCha8Rng, p: usize) -> CMatrix {
    random_complex(rng, p) + CMatrix::identity(p, p) * C64::new(2.0, 0.0)
}

/// Householder reflection `I − 2 v vᴴ`: Hermitian, unitary and its own
/// inverse.
pub fn householder(rng: &mut ChaCha8Rng, p: usize) -> CMatrix {
    let v = random_complex(rng, p).column(0).into_owned();
    let v = &v / C64::new(v.norm(), 0.0);
    CMatrix::identity(p, p) - &v * v.adjoint() * C64::new(2.0, 0.0)
}

pub fn permutation(p: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::identity(p, p);
    m.swap_rows(i, j);
    m
}

pub fn sign_flip(p: usize, i: usize) -> CMatrix {
    let mut m = CMatrix::identity(p, p);
    m[(i, i)] = C64::new(-1.0, 0.0);
    m
}

pub fn fro(m: &CMatrix) -> f64 {
    m.norm()
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// ζ(2k) by direct summation plus an integral tail estimate.
fn zeta_even(k: usize) -> f64 {
    let s = 2.0 * k as f64;
    let terms = 2000;
    let mut sum = 0.0;
    for n in (1..=terms).rev() {
        sum += (n as f64).powf(-s);
    }
    sum + (terms as f64 + 0.5).powf(1.0 - s) / (s - 1.0)
}

/// `|B₂ₖ| / (2k)!` scaled form used by both oracles:
/// `B₂ₖ = (−1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}`.
fn bernoulli_over_factorial(k: usize) -> f64 {
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2.0 * zeta_even(k) / (2.0 * std::f64::consts::PI).powi(2 * k as i32)
}

const ORACLE_SHIFT: f64 = 40.0;
const ORACLE_TERMS: usize = 50;

/// Digamma oracle: recurrence shift to x ≥ 40, then 50 asymptotic terms
/// with Bernoulli numbers rebuilt from ζ(2k).
pub fn digamma_oracle(x: f64) -> f64 {
    let mut x = x;
    let mut shift = 0.0;
    while x < ORACLE_SHIFT {
        shift -= 1.0 / x;
        x += 1.0;
    }
    // B₂ₖ / (2k x^{2k}) = [B₂ₖ/(2k)!] (2k−1)! / x^{2k}
    let mut series = 0.0;
    let mut fact_over_pow = 1.0 / (x * x); // (2k−1)! / x^{2k} at k = 1
    for k in 1..=ORACLE_TERMS {
        series += bernoulli_over_factorial(k) * fact_over_pow;
        let next = 2 * k + 1;
        fact_over_pow *= (next as f64) * ((next - 1) as f64) / (x * x);
    }
    shift + x.ln() - 0.5 / x - series
}

/// Trigamma oracle: same shift, `Σ B₂ₖ / x^{2k+1}` for 50 terms.
pub fn trigamma_oracle(x: f64) -> f64 {
    let mut x = x;
    let mut shift = 0.0;
    while x < ORACLE_SHIFT {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    let mut series = 0.0;
    let mut fact_over_pow = 2.0 / (x * x * x); // (2k)! / x^{2k+1} at k = 1
    for k in 1..=ORACLE_TERMS {
        series += bernoulli_over_factorial(k) * fact_over_pow;
        let a = (2 * k + 1) as f64;
        let b = (2 * k + 2) as f64;
        fact_over_pow *= a * b / (x * x);
    }
    shift + 1.0 / x + 0.5 / (x * x) + series
}

/// 60 log-spaced points on [1e-3, 1e6].
pub fn special_function_grid() -> Vec<f64> {
    (0..60).map(|i| 10f64.powf(-3.0 + 9.0 * i as f64 / 59.0)).collect()
}

/// Sample variance and its large-sample standard error
/// `sqrt((m₄ − s⁴) / n)`.
pub fn variance_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    (v, ((m4 - v * v).max(0.0) / n).sqrt())
}

/// `|a − b|` within `z` combined standard errors.
pub fn within_se(a: (f64, f64), b: (f64, f64), z: f64) -> bool {
    (a.0 - b.0).abs() <= z * (a.1 * a.1 + b.1 * b.1).sqrt()
}
