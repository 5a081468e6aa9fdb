//! Seeded sampling of complex Wishart covariance estimators.
//!
//! `S = (1/K) Σ_k X_k X_kᴴ` with `X_k = Σ^{1/2} Z_k` and `Z_k` standard
//! circular complex Gaussian, so that `K S ~ W_p^C(K, Σ)`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpd::{CMatrix, HpdMatrix, C64};

/// Random stream identifier. Streams with different ids are
/// independent ChaCha keystreams under the same key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// The seed of the `offset`-th stream after this one.
    pub fn offset(self, offset: u64) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_id: self.stream_id.wrapping_add(offset),
        }
    }

    pub fn rng(self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// The sampling law `K·S ~ W_p^C(K, Σ)`.
#[derive(Debug, Clone)]
pub struct WishartModel {
    k: usize,
    sigma: HpdMatrix,
    sigma_sqrt: CMatrix,
}

impl WishartModel {
    pub fn new(k: usize, sigma: HpdMatrix) -> Result<Self> {
        let p = sigma.dim();
        if k < p {
            return Err(Error::InsufficientDof { p, k });
        }
        let sigma_sqrt = sigma.sqrt().as_matrix().clone();
        Ok(Self {
            k,
            sigma,
            sigma_sqrt,
        })
    }

    /// Model with `Σ = I_p`.
    pub fn standard(p: usize, k: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("dimension p must be at least 1".into()));
        }
        Self::new(k, HpdMatrix::identity(p))
    }

    pub fn p(&self) -> usize {
        self.sigma.dim()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sigma(&self) -> &HpdMatrix {
        &self.sigma
    }

    /// The same Σ with `K` replaced, e.g. by `K·N` for the law of an
    /// average of `N` independent draws.
    pub fn with_dof(&self, k: usize) -> Result<Self> {
        Self::new(k, self.sigma.clone())
    }
}

/// A p-vector with iid `N(0, 1/2)` real and imaginary parts, so that
/// `E{Z Zᴴ} = I` and `E{Z Zᵀ} = 0`.
pub fn sample_standard_complex_gaussian<R: Rng + ?Sized>(p: usize, rng: &mut R) -> DVector<C64> {
    DVector::from_fn(p, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
    })
}

pub fn sample_covariance<R: Rng + ?Sized>(model: &WishartModel, rng: &mut R) -> Result<HpdMatrix> {
    let (p, k) = (model.p(), model.k);
    if k < p {
        return Err(Error::InsufficientDof { p, k });
    }
    let mut z = CMatrix::zeros(p, k);
    for col in 0..k {
        z.set_column(col, &sample_standard_complex_gaussian(p, rng));
    }
    let x = &model.sigma_sqrt * z;
    let s = &x * x.adjoint() * C64::new(1.0 / k as f64, 0.0);
    HpdMatrix::from_matrix(s)
}

/// `n` iid sample covariances from the stream named by `seed`.
pub fn sample_batch(model: &WishartModel, n: usize, seed: SeedSpec) -> Result<Vec<HpdMatrix>> {
    if n == 0 {
        return Err(Error::EmptySamples);
    }
    let mut rng = seed.rng();
    (0..n).map(|_| sample_covariance(model, &mut rng)).collect()
}
