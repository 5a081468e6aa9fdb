//! Affine-invariant Riemannian structure on HPD(p).
//!
//! The metric at `P` is `⟨A, B⟩_P = tr(P⁻¹ A P⁻¹ B)`. Exponential and
//! logarithmic maps use the Hermitian square root of the base point:
//!
//! ```text
//! Emap_P(U) = P^{1/2} exp(P^{-1/2} U P^{-1/2}) P^{1/2}
//! Lmap_P(S) = P^{1/2} log(P^{-1/2} S P^{-1/2}) P^{1/2}
//! ```

use crate::error::{Error, Result};
use crate::hpd::{matrix_exp, CMatrix, HermitianMatrix, HpdMatrix};

/// A Hermitian direction attached to a base point.
#[derive(Clone, Debug)]
pub struct TangentVector {
    base_point: HpdMatrix,
    direction: HermitianMatrix,
}

impl TangentVector {
    pub fn new(base_point: HpdMatrix, direction: HermitianMatrix) -> Result<Self> {
        same_dim(base_point.dim(), direction.dim())?;
        Ok(Self {
            base_point,
            direction,
        })
    }

    pub fn base_point(&self) -> &HpdMatrix {
        &self.base_point
    }

    pub fn direction(&self) -> &HermitianMatrix {
        &self.direction
    }

    pub fn norm(&self) -> f64 {
        whiten(&self.base_point, &self.direction).frobenius_norm()
    }

    /// The point reached by following the geodesic for unit time.
    pub fn exp(&self) -> Result<HpdMatrix> {
        emap(&self.base_point, &self.direction)
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `P^{-1/2} X P^{-1/2}`: carries a tangent vector at `P` to the
/// tangent space at the identity.
pub fn whiten(at: &HpdMatrix, x: &HermitianMatrix) -> HermitianMatrix {
    let w = at.inv_sqrt();
    HermitianMatrix::symmetrized(w.as_matrix() * x.as_matrix() * w.as_matrix())
}

/// `P^{1/2} X P^{1/2}`, the inverse of [`whiten`].
pub fn unwhiten(at: &HpdMatrix, x: &HermitianMatrix) -> HermitianMatrix {
    let r = at.sqrt();
    HermitianMatrix::symmetrized(r.as_matrix() * x.as_matrix() * r.as_matrix())
}

/// `tr(P⁻¹ A P⁻¹ B)`, evaluated with the explicit inverse.
pub fn inner(at: &HpdMatrix, a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    same_dim(at.dim(), a.dim())?;
    same_dim(at.dim(), b.dim())?;
    let inv = at.inverse();
    let prod: CMatrix = &inv * a.as_matrix() * &inv * b.as_matrix();
    Ok(prod.trace().re)
}

/// `‖P^{-1/2} A P^{-1/2}‖_Fr`, which squares to `inner(at, A, A)`.
pub fn norm(at: &HpdMatrix, a: &HermitianMatrix) -> Result<f64> {
    same_dim(at.dim(), a.dim())?;
    Ok(whiten(at, a).frobenius_norm())
}

/// Log-eigenvalues of `P1^{-1/2} P2 P1^{-1/2}`.
fn relative_log_spectrum(p1: &HpdMatrix, p2: &HpdMatrix) -> Result<Vec<f64>> {
    same_dim(p1.dim(), p2.dim())?;
    let rel = HpdMatrix::new(whiten(p1, p2.as_hermitian()))?;
    Ok(rel.eigen().values().iter().map(|x| x.ln()).collect())
}

/// Geodesic distance `‖log(P1^{-1/2} P2 P1^{-1/2})‖_Fr`.
pub fn geodesic_distance(p1: &HpdMatrix, p2: &HpdMatrix) -> Result<f64> {
    let logs = relative_log_spectrum(p1, p2)?;
    Ok(logs.iter().map(|x| x * x).sum::<f64>().sqrt())
}

pub fn emap(p: &HpdMatrix, u: &HermitianMatrix) -> Result<HpdMatrix> {
    same_dim(p.dim(), u.dim())?;
    let inner = matrix_exp(&whiten(p, u))?;
    HpdMatrix::new(unwhiten(p, inner.as_hermitian()))
}

pub fn lmap(p: &HpdMatrix, s: &HpdMatrix) -> Result<HermitianMatrix> {
    Ok(unwhiten(p, &whitened_lmap(p, s)?))
}

/// `log(P^{-1/2} S P^{-1/2})`, i.e. `Lmap_P(S)` expressed at the identity.
/// Its Frobenius norm is the geodesic distance from `P` to `S`.
pub fn whitened_lmap(p: &HpdMatrix, s: &HpdMatrix) -> Result<HermitianMatrix> {
    same_dim(p.dim(), s.dim())?;
    Ok(HpdMatrix::new(whiten(p, s.as_hermitian()))?.log())
}
