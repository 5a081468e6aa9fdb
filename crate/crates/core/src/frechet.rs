//! Sample Fréchet (Karcher) mean and arithmetic mean of HPD matrices.
//!
//! The Fréchet mean minimizes `F(P) = (1/N) Σ_j d²(P, S_j)`. Its
//! Riemannian gradient is `−2 (1/N) Σ_j Lmap_P(S_j)`, so the fixed-point
//! map `P ← Emap_P(step · (1/N) Σ_j Lmap_P(S_j))` is gradient descent with
//! the factor 2 absorbed into the step. Iteration starts from the
//! arithmetic mean and stops once the mean tangent, measured in the metric
//! at the current iterate, is at most `grad_tol`. A step that increases
//! `F` is halved and retried, and each iteration starts from twice the
//! previously accepted step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpd::{matrix_exp, CMatrix, HermitianMatrix, HpdMatrix, C64};
use crate::manifold::{unwhiten, whitened_lmap};

/// Smallest step tried before an iteration is abandoned.
const MIN_STEP: f64 = 1.0 / 1024.0;

/// Relative slack on the descent test. Near the minimizer successive
/// objective values agree to rounding error only.
const OBJECTIVE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KarcherOptions {
    pub max_iters: usize,
    pub grad_tol: f64,
    pub step: f64,
}

impl Default for KarcherOptions {
    fn default() -> Self {
        Self {
            max_iters: 200,
            grad_tol: 1e-10,
            step: 1.0,
        }
    }
}

impl KarcherOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidOptions("max_iters must be at least 1".into()));
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::InvalidOptions(format!(
                "grad_tol must be positive, got {}",
                self.grad_tol
            )));
        }
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::InvalidOptions(format!(
                "step must lie in (0, 1], got {}",
                self.step
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct KarcherResult {
    pub mean: HpdMatrix,
    pub iterations: usize,
    pub final_grad_norm: f64,
    pub converged: bool,
}

fn check_samples(samples: &[HpdMatrix]) -> Result<usize> {
    let first = samples.first().ok_or(Error::EmptySamples)?;
    let p = first.dim();
    if let Some(bad) = samples.iter().find(|s| s.dim() != p) {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: bad.dim(),
        });
    }
    Ok(p)
}

/// State at one iterate: the mean whitened log map and the objective.
struct Evaluation {
    whitened_grad: HermitianMatrix,
    objective: f64,
}

fn evaluate(at: &HpdMatrix, samples: &[HpdMatrix]) -> Result<Evaluation> {
    let p = at.dim();
    let mut sum = CMatrix::zeros(p, p);
    let mut objective = 0.0;
    for s in samples {
        let l = whitened_lmap(at, s)?;
        objective += l.frobenius_norm().powi(2);
        sum += l.as_matrix();
    }
    let inv_n = 1.0 / samples.len() as f64;
    Ok(Evaluation {
        whitened_grad: HermitianMatrix::symmetrized(sum * C64::new(inv_n, 0.0)),
        objective: objective * inv_n,
    })
}

/// `(1/N) Σ_j Lmap_P(S_j)`; zero exactly at the Fréchet mean.
pub fn karcher_gradient(p: &HpdMatrix, samples: &[HpdMatrix]) -> Result<HermitianMatrix> {
    let dim = check_samples(samples)?;
    if dim != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: dim,
        });
    }
    Ok(unwhiten(p, &evaluate(p, samples)?.whitened_grad))
}

/// `F(P) = (1/N) Σ_j d²(P, S_j)`.
pub fn frechet_objective(p: &HpdMatrix, samples: &[HpdMatrix]) -> Result<f64> {
    check_samples(samples)?;
    Ok(evaluate(p, samples)?.objective)
}

pub fn arithmetic_mean(samples: &[HpdMatrix]) -> Result<HpdMatrix> {
    let p = check_samples(samples)?;
    let mut sum = CMatrix::zeros(p, p);
    for s in samples {
        sum += s.as_matrix();
    }
    HpdMatrix::from_matrix(sum * C64::new(1.0 / samples.len() as f64, 0.0))
}

pub fn frechet_mean(samples: &[HpdMatrix], opts: &KarcherOptions) -> Result<KarcherResult> {
    opts.validate()?;
    check_samples(samples)?;
    if samples.len() == 1 {
        return Ok(KarcherResult {
            mean: samples[0].clone(),
            iterations: 0,
            final_grad_norm: 0.0,
            converged: true,
        });
    }

    let mut current = arithmetic_mean(samples)?;
    let mut eval = evaluate(&current, samples)?;
    let mut iterations = 0;
    let mut last_step = opts.step;
    while iterations < opts.max_iters {
        let grad_norm = eval.whitened_grad.frobenius_norm();
        if grad_norm <= opts.grad_tol {
            break;
        }
        iterations += 1;
        let ceiling = eval.objective * (1.0 + OBJECTIVE_SLACK) + f64::MIN_POSITIVE;
        let root = current.sqrt();
        let mut step = (2.0 * last_step).min(opts.step);
        let accepted = loop {
            let moved = matrix_exp(&eval.whitened_grad.scale(step))?;
            let candidate = HpdMatrix::new(moved.as_hermitian().congruence(root.as_matrix())?)?;
            let candidate_eval = evaluate(&candidate, samples)?;
            let descends = candidate_eval.objective < eval.objective
                || (candidate_eval.objective <= ceiling
                    && candidate_eval.whitened_grad.frobenius_norm() < grad_norm);
            if descends {
                break Some((candidate, candidate_eval));
            }
            if step <= MIN_STEP {
                break None;
            }
            step *= 0.5;
        };
        match accepted {
            Some((next, next_eval)) => {
                current = next;
                eval = next_eval;
                last_step = step;
            }
            // no step along the gradient decreases F: numerically stationary
            None => break,
        }
    }

    let final_grad_norm = eval.whitened_grad.frobenius_norm();
    Ok(KarcherResult {
        mean: current,
        iterations,
        final_grad_norm,
        converged: final_grad_norm <= opts.grad_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hpd::test_util::*;
    use crate::hpd::matrix_log;
    use crate::manifold::{emap, geodesic_distance};

    fn log_euclidean_mean(samples: &[HpdMatrix]) -> HpdMatrix {
        let p = samples[0].dim();
        let mut sum = HermitianMatrix::zeros(p);
        for s in samples {
            sum = sum.add(&matrix_log(s)).unwrap();
        }
        matrix_exp(&sum.scale(1.0 / samples.len() as f64)).unwrap()
    }

    #[test]
    fn options_validation() {
        assert!(KarcherOptions::default().validate().is_ok());
        let bad = [
            KarcherOptions { max_iters: 0, ..Default::default() },
            KarcherOptions { grad_tol: 0.0, ..Default::default() },
            KarcherOptions { step: 0.0, ..Default::default() },
            KarcherOptions { step: 1.5, ..Default::default() },
        ];
        for o in bad {
            assert!(matches!(o.validate(), Err(Error::InvalidOptions(_))));
        }
    }

    #[test]
    fn gradient_examples() {
        let mut r = rng(1);
        let p = random_hpd(&mut r, 3);
        assert!(karcher_gradient(&p, std::slice::from_ref(&p)).unwrap().frobenius_norm() < 1e-12);

        let a = random_hpd(&mut r, 3);
        let a_inv = HpdMatrix::from_matrix(a.inverse()).unwrap();
        let g = karcher_gradient(&HpdMatrix::identity(3), &[a, a_inv]).unwrap();
        assert!(g.frobenius_norm() < 1e-12);

        assert!(matches!(karcher_gradient(&p, &[]), Err(Error::EmptySamples)));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut r = rng(2);
        let samples: Vec<_> = (0..4).map(|_| random_hpd(&mut r, 3)).collect();
        let base = random_hpd(&mut r, 3);
        let g = karcher_gradient(&base, &samples).unwrap();
        let inv = base.inverse();
        for _ in 0..5 {
            let h = random_hermitian(&mut r, 3, 1.0);
            // ⟨grad F, H⟩_P = −2 tr(P⁻¹ G P⁻¹ H)
            let analytic = -2.0 * (&inv * g.as_matrix() * &inv * h.as_matrix()).trace().re;
            let eps = 1e-5;
            let shifted = |t: f64| {
                let m = base.as_matrix() + h.as_matrix() * C64::new(t, 0.0);
                frechet_objective(&HpdMatrix::from_matrix(m).unwrap(), &samples).unwrap()
            };
            let fd = (shifted(eps) - shifted(-eps)) / (2.0 * eps);
            assert!(
                (fd - analytic).abs() <= 1e-5 * analytic.abs().max(1e-3),
                "fd {fd} analytic {analytic}"
            );
        }
    }

    #[test]
    fn single_sample_is_returned_exactly() {
        let s = random_hpd(&mut rng(3), 4);
        let res = frechet_mean(std::slice::from_ref(&s), &KarcherOptions::default()).unwrap();
        assert_eq!(res.mean, s);
        assert!(res.converged);
    }

    #[test]
    fn commuting_family_gives_geometric_mean() {
        let diags = [[1.0, 2.0, 0.5], [4.0, 0.25, 3.0], [9.0, 1.0, 1.5], [0.5, 7.0, 2.0]];
        let samples: Vec<_> = diags.iter().map(|d| HpdMatrix::from_diagonal(d).unwrap()).collect();
        let res = frechet_mean(&samples, &KarcherOptions::default()).unwrap();
        assert!(res.converged);
        for i in 0..3 {
            let gm = (diags.iter().map(|d| d[i].ln()).sum::<f64>() / 4.0).exp();
            assert!((res.mean.get(i, i).re - gm).abs() < 1e-8 * gm);
        }
        assert!(res.mean.get(0, 1).norm() < 1e-12);
    }

    #[test]
    fn minimizes_objective() {
        let mut r = rng(4);
        let samples: Vec<_> = (0..3).map(|_| random_hpd(&mut r, 3)).collect();
        let res = frechet_mean(&samples, &KarcherOptions::default()).unwrap();
        assert!(res.converged, "iters {} grad {}", res.iterations, res.final_grad_norm);
        assert!(res.final_grad_norm <= 1e-10);
        let best = frechet_objective(&res.mean, &samples).unwrap();
        let am = arithmetic_mean(&samples).unwrap();
        assert!(best <= frechet_objective(&am, &samples).unwrap());
        assert!(best <= frechet_objective(&log_euclidean_mean(&samples), &samples).unwrap());
        for _ in 0..100 {
            let h = random_hermitian(&mut r, 3, 1.0);
            let eps = 10f64.powf(-r_uniform(&mut r, 1.0, 4.0));
            let perturbed = emap(&res.mean, &h.scale(eps)).unwrap();
            assert!(best <= frechet_objective(&perturbed, &samples).unwrap());
        }
    }

    fn r_uniform(r: &mut rand_chacha::ChaCha8Rng, lo: f64, hi: f64) -> f64 {
        use rand::Rng;
        r.random_range(lo..hi)
    }

    #[test]
    fn far_apart_samples_still_converge() {
        let samples = vec![
            HpdMatrix::from_diagonal(&[1e3, 1e-3]).unwrap(),
            HpdMatrix::from_matrix(
                random_hpd(&mut rng(5), 2).as_matrix() * C64::new(1e-2, 0.0),
            )
            .unwrap(),
            HpdMatrix::from_diagonal(&[1e-2, 50.0]).unwrap(),
        ];
        let res = frechet_mean(&samples, &KarcherOptions::default()).unwrap();
        assert!(res.converged, "iters {} grad {}", res.iterations, res.final_grad_norm);
        let d: f64 = samples
            .iter()
            .map(|s| geodesic_distance(&res.mean, s).unwrap().powi(2))
            .sum();
        assert!((d / 3.0 - frechet_objective(&res.mean, &samples).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn max_iters_is_respected() {
        let mut r = rng(6);
        let samples: Vec<_> = (0..5).map(|_| random_hpd(&mut r, 3)).collect();
        let opts = KarcherOptions { max_iters: 1, grad_tol: 1e-15, step: 1.0 };
        let res = frechet_mean(&samples, &opts).unwrap();
        assert_eq!(res.iterations, 1);
        assert!(!res.converged);
    }

    #[test]
    fn arithmetic_mean_examples() {
        let p = random_hpd(&mut rng(7), 3);
        assert!(fro(&(arithmetic_mean(std::slice::from_ref(&p)).unwrap().as_matrix() - p.as_matrix())) < 1e-15);
        let m = arithmetic_mean(&[
            HpdMatrix::from_diagonal(&[1.0, 3.0]).unwrap(),
            HpdMatrix::from_diagonal(&[3.0, 1.0]).unwrap(),
        ])
        .unwrap();
        assert!(fro(&(m.as_matrix() - CMatrix::identity(2, 2) * C64::new(2.0, 0.0))) < 1e-15);
        assert!(matches!(arithmetic_mean(&[]), Err(Error::EmptySamples)));
        assert!(matches!(
            arithmetic_mean(&[HpdMatrix::identity(2), HpdMatrix::identity(3)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
