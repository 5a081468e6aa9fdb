//! Monte Carlo estimates of the bias vector field, intrinsic bias and
//! Riemannian risk.
//!
//! Replication `r` draws its `N` samples from stream `seed.stream_id + r`
//! and maps the estimate to the tangent space at Σ. All statistics are
//! accumulated in whitened coordinates `L = log(Σ^{-1/2} P̂ Σ^{-1/2})`,
//! where the metric at Σ becomes the plain Frobenius inner product.
//! Replications run in parallel; the reduction walks them in index order,
//! so reports are bit-identical for any worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::EstimatorKind;
use crate::error::{Error, Result};
use crate::frechet::{arithmetic_mean, frechet_mean, KarcherOptions};
use crate::hpd::{CMatrix, HermitianMatrix, HpdMatrix, C64};
use crate::manifold::{emap, unwhiten, whitened_lmap};
use crate::wishart::{sample_batch, SeedSpec, WishartModel};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub estimator: EstimatorKind,
    pub p: usize,
    pub k: usize,
    pub n: usize,
    pub replications: usize,
    /// Replication `r` used stream `seed.stream_id + r`.
    pub seed: SeedSpec,
    pub sigma: HpdMatrix,
    /// Estimate of the bias vector field `E{Lmap_Σ(estimator)}`.
    pub mean_tangent: HermitianMatrix,
    /// The same field in whitened coordinates, `E{L}`.
    pub whitened_mean_tangent: HermitianMatrix,
    /// Standard error of each entry of `whitened_mean_tangent`.
    pub mean_tangent_se: Vec<Vec<f64>>,
    /// `var{L_ij} = E|L_ij − E L_ij|²` (unbiased, `R − 1` denominator).
    pub entry_variances: Vec<Vec<f64>>,
    /// `‖mean tangent‖²_Σ`.
    pub ibias_hat: f64,
    /// Delta-method standard error of `ibias_hat`.
    pub ibias_se: f64,
    /// `ibias_hat − Σ var{L_ij} / R`, which removes the upward bias of the
    /// squared sample mean.
    pub ibias_corrected: f64,
    /// Mean of `‖Lmap_Σ(estimator)‖²_Σ`.
    pub risk_hat: f64,
    pub risk_se: f64,
    /// `Emap_Σ(mean tangent)`, the expectation of the estimator on the
    /// manifold.
    pub manifold_expectation: HpdMatrix,
    pub karcher_options: KarcherOptions,
    /// Replications whose Karcher iteration stopped at `max_iters`.
    pub karcher_unconverged: usize,
}

impl MonteCarloReport {
    pub fn variance_sum(&self) -> f64 {
        self.entry_variances.iter().flatten().sum()
    }

    /// Largest modulus among the off-diagonal whitened mean entries.
    pub fn max_off_diagonal(&self) -> f64 {
        let m = self.whitened_mean_tangent.as_matrix();
        let mut best = 0.0f64;
        for i in 0..self.p {
            for j in 0..self.p {
                if i != j {
                    best = best.max(m[(i, j)].norm());
                }
            }
        }
        best
    }
}

struct Replicate {
    whitened: CMatrix,
    converged: bool,
}

fn replicate(
    kind: EstimatorKind,
    model: &WishartModel,
    n: usize,
    seed: SeedSpec,
    opts: &KarcherOptions,
) -> Result<Replicate> {
    let samples = sample_batch(model, n, seed)?;
    let (estimate, converged) = match kind {
        EstimatorKind::FrechetMean => {
            let res = frechet_mean(&samples, opts)?;
            (res.mean, res.converged)
        }
        EstimatorKind::ArithmeticMean => (arithmetic_mean(&samples)?, true),
    };
    Ok(Replicate {
        whitened: whitened_lmap(model.sigma(), &estimate)?.into_matrix(),
        converged,
    })
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let r = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / r;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1.0);
    (mean, (var / r).sqrt())
}

pub fn bias_vector_field_mc(
    kind: EstimatorKind,
    model: &WishartModel,
    n: usize,
    replications: usize,
    seed: SeedSpec,
) -> Result<MonteCarloReport> {
    bias_vector_field_mc_with_options(kind, model, n, replications, seed, &KarcherOptions::default())
}

pub fn bias_vector_field_mc_with_options(
    kind: EstimatorKind,
    model: &WishartModel,
    n: usize,
    replications: usize,
    seed: SeedSpec,
    opts: &KarcherOptions,
) -> Result<MonteCarloReport> {
    if replications < 2 {
        return Err(Error::TooFewReplications(replications));
    }
    if n == 0 {
        return Err(Error::EmptySamples);
    }
    opts.validate()?;
    let p = model.p();

    let outcomes: Vec<Result<Replicate>> = (0..replications)
        .into_par_iter()
        .map(|r| replicate(kind, model, n, seed.offset(r as u64), opts))
        .collect();
    let mut reps = Vec::with_capacity(replications);
    for (index, out) in outcomes.into_iter().enumerate() {
        reps.push(out.map_err(|e| Error::Replication {
            index,
            source: Box::new(e),
        })?);
    }

    let rf = replications as f64;
    let mut mean = CMatrix::zeros(p, p);
    for rep in &reps {
        mean += &rep.whitened;
    }
    mean /= C64::new(rf, 0.0);

    let mut entry_variances = vec![vec![0.0; p]; p];
    for rep in &reps {
        for i in 0..p {
            for j in 0..p {
                entry_variances[i][j] += (rep.whitened[(i, j)] - mean[(i, j)]).norm_sqr();
            }
        }
    }
    for v in entry_variances.iter_mut().flatten() {
        *v /= rf - 1.0;
    }
    let mean_tangent_se: Vec<Vec<f64>> = entry_variances
        .iter()
        .map(|row| row.iter().map(|v| (v / rf).sqrt()).collect())
        .collect();

    let whitened_mean = HermitianMatrix::symmetrized(mean);
    let ibias_hat = whitened_mean.frobenius_norm().powi(2);
    // d(‖M‖²) = 2 Re⟨M, dM⟩, applied replication-wise
    let linearized: Vec<f64> = reps
        .iter()
        .map(|rep| {
            2.0 * whitened_mean
                .as_matrix()
                .iter()
                .zip(rep.whitened.iter())
                .map(|(m, x)| (m.conj() * x).re)
                .sum::<f64>()
        })
        .collect();
    let (_, ibias_se) = mean_and_se(&linearized);
    let squared_norms: Vec<f64> = reps.iter().map(|rep| rep.whitened.norm_squared()).collect();
    let (risk_hat, risk_se) = mean_and_se(&squared_norms);
    let variance_sum: f64 = entry_variances.iter().flatten().sum();

    let sigma = model.sigma().clone();
    let mean_tangent = unwhiten(&sigma, &whitened_mean);
    let manifold_expectation = emap(&sigma, &mean_tangent)?;

    Ok(MonteCarloReport {
        estimator: kind,
        p,
        k: model.k(),
        n,
        replications,
        seed,
        sigma,
        mean_tangent,
        whitened_mean_tangent: whitened_mean,
        mean_tangent_se,
        entry_variances,
        ibias_hat,
        ibias_se,
        ibias_corrected: ibias_hat - variance_sum / rf,
        risk_hat,
        risk_se,
        manifold_expectation,
        karcher_options: *opts,
        karcher_unconverged: reps.iter().filter(|r| !r.converged).count(),
    })
}

/// Riemannian risk split into the summed entry variances of the whitened
/// estimator vector field plus the intrinsic bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskDecomposition {
    pub variance_sum: f64,
    pub ibias: f64,
    pub risk: f64,
    /// `risk − (variance_sum + ibias)`.
    pub residual: f64,
    pub combined_se: f64,
    /// `|residual| ≤ 4 · combined_se`.
    pub consistent: bool,
}

/// The report's variances are already taken in whitened coordinates, so
/// this applies to any Σ.
pub fn risk_decomposition_mc(report: &MonteCarloReport) -> Result<RiskDecomposition> {
    if report.replications < 2 {
        return Err(Error::TooFewReplications(report.replications));
    }
    let p = report.p;
    if report.entry_variances.len() != p || report.entry_variances.iter().any(|r| r.len() != p) {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: report.entry_variances.len(),
        });
    }
    let variance_sum = report.variance_sum();
    let residual = report.risk_hat - (variance_sum + report.ibias_hat);
    let combined_se = report.risk_se.hypot(report.ibias_se);
    Ok(RiskDecomposition {
        variance_sum,
        ibias: report.ibias_hat,
        risk: report.risk_hat,
        residual,
        combined_se,
        consistent: residual.abs() <= 4.0 * combined_se,
    })
}
