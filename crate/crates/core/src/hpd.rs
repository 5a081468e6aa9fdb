//! Hermitian and Hermitian positive-definite (HPD) matrices.
//!
//! Every matrix function here (log, exp, square root, inverse square root)
//! goes through the spectral decomposition `H = U diag(λ) Uᴴ` and applies
//! the scalar function to the eigenvalues. The matrices in this crate are
//! small (p ≲ 16), so the eigen path is both accurate and cheap.

use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Relative Frobenius asymmetry `‖A − Aᴴ‖ / ‖A‖` accepted from raw input.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Positive-definiteness floor relative to the largest eigenvalue.
pub const PD_RELATIVE_FLOOR: f64 = 1e-12;

/// Largest eigenvalue accepted by [`matrix_exp`]; `exp(709.78)` is the
/// edge of the f64 range.
const EXP_MAX_EIGENVALUE: f64 = 700.0;

/// Condition-number guard for congruence transforms.
const MAX_TRANSFORM_CONDITION: f64 = 1e12;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITERS: usize = 10_000;

/// A p×p complex matrix equal to its own conjugate transpose.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix {
    data: CMatrix,
}

impl HermitianMatrix {
    /// Accepts `m` if it is square and Hermitian to within
    /// [`HERMITIAN_TOL`] (relative), then symmetrizes it exactly.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let scale = m.norm();
        let asym = (&m - m.adjoint()).norm();
        if asym > HERMITIAN_TOL * scale || !scale.is_finite() {
            return Err(Error::NotHermitian {
                relative_asymmetry: if scale > 0.0 { asym / scale } else { asym },
                tolerance: HERMITIAN_TOL,
            });
        }
        Ok(Self::symmetrized(m))
    }

    /// `(A + Aᴴ) / 2` with no tolerance check. Used for products that are
    /// Hermitian in exact arithmetic.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let adj = m.adjoint();
        let mut data = (m + adj) * C64::new(0.5, 0.0);
        for i in 0..data.nrows() {
            data[(i, i)].im = 0.0;
        }
        Self { data }
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    /// Builds a matrix from row-major real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let p = re.len();
        if im.len() != p || re.iter().chain(im.iter()).any(|row| row.len() != p) {
            return Err(Error::Serialization(
                "real and imaginary parts must both be square of the same size".into(),
            ));
        }
        Self::new(CMatrix::from_fn(p, p, |i, j| C64::new(re[i][j], im[i][j])))
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            data: CMatrix::zeros(p, p),
        }
    }

    pub fn identity(p: usize) -> Self {
        Self {
            data: CMatrix::identity(p, p),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| C64::new(x, 0.0)));
        Self {
            data: CMatrix::from_diagonal(&v),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.data[(i, i)].re).sum()
    }

    /// Real inner product `tr(A B)` of two Hermitian matrices.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.data[(i, i)].re).collect()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            data: &self.data * C64::new(c, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    /// `L H Lᴴ` for any square `L` of matching size.
    pub fn congruence(&self, l: &CMatrix) -> Result<Self> {
        check_dims(self.dim(), l.nrows())?;
        check_dims(self.dim(), l.ncols())?;
        Ok(Self::symmetrized(l * &self.data * l.adjoint()))
    }

    pub fn eigen(&self) -> Result<EigenDecomposition> {
        hermitian_eigen(self)
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianMatrix{}", self.data)
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Spectral decomposition `H = U diag(λ) Uᴴ` with eigenvalues in
/// descending order and each eigenvector's first non-negligible entry made
/// real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    vectors: CMatrix,
    values: Vec<f64>,
}

impl EigenDecomposition {
    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    pub fn min_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `U diag(f(λ)) Uᴴ`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let s = f(lambda);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= s);
        }
        scaled * self.vectors.adjoint()
    }

    pub(crate) fn map_hermitian<F: Fn(f64) -> f64>(&self, f: F) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.map(f))
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.map_hermitian(|x| x)
    }
}

/// Hermitian eigendecomposition, canonicalized for deterministic output.
pub fn hermitian_eigen(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let p = h.dim();
    if p == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let eig = SymmetricEigen::try_new(h.data.clone(), EIGEN_EPS, EIGEN_MAX_ITERS).ok_or_else(
        || Error::EigenNonConvergence {
            dim: p,
            frobenius_norm: h.frobenius_norm(),
            max_abs_entry: h.data.iter().map(|z| z.norm()).fold(0.0, f64::max),
        },
    )?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenNonConvergence {
            dim: p,
            frobenius_norm: h.frobenius_norm(),
            max_abs_entry: h.data.iter().map(|z| z.norm()).fold(0.0, f64::max),
        });
    }

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut vectors = CMatrix::zeros(p, p);
    let mut values = Vec::with_capacity(p);
    for (dst, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut col = eig.eigenvectors.column(src).into_owned();
        if let Some(pivot) = col.iter().find(|z| z.norm() > 1e-8).copied() {
            let phase = pivot.conj() / pivot.norm();
            col *= phase;
        }
        vectors.set_column(dst, &col);
    }
    Ok(EigenDecomposition { vectors, values })
}

/// A Hermitian matrix with strictly positive spectrum. Carries its own
/// eigendecomposition, so square roots and logarithms need no re-solve.
#[derive(Clone)]
pub struct HpdMatrix {
    herm: HermitianMatrix,
    eig: EigenDecomposition,
}

impl HpdMatrix {
    pub fn new(herm: HermitianMatrix) -> Result<Self> {
        let eig = hermitian_eigen(&herm)?;
        Self::check_spectrum(&eig)?;
        Ok(Self { herm, eig })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(HermitianMatrix::from_real(m)?)
    }

    pub fn identity(p: usize) -> Self {
        Self::from_eigen_unchecked(EigenDecomposition {
            vectors: CMatrix::identity(p, p),
            values: vec![1.0; p],
        })
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(diag))
    }

    fn check_spectrum(eig: &EigenDecomposition) -> Result<()> {
        let (lo, hi) = (eig.min_value(), eig.max_value());
        if !(hi > 0.0) || !(lo > PD_RELATIVE_FLOOR * hi) {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: lo,
                max_eigenvalue: hi,
            });
        }
        Ok(())
    }

    /// Builds the matrix from a decomposition whose eigenvalues are known
    /// to be positive (e.g. the output of `exp`).
    fn from_eigen(eig: EigenDecomposition) -> Result<Self> {
        Self::check_spectrum(&eig)?;
        Ok(Self::from_eigen_unchecked(eig))
    }

    fn from_eigen_unchecked(eig: EigenDecomposition) -> Self {
        Self {
            herm: eig.reconstruct(),
            eig,
        }
    }

    pub fn dim(&self) -> usize {
        self.herm.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.herm
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.herm.as_matrix()
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.herm.get(i, j)
    }

    /// `c · P` for `c > 0`.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!("scale factor must be positive, got {c}")));
        }
        Self::from_eigen(EigenDecomposition {
            vectors: self.eig.vectors.clone(),
            values: self.eig.values.iter().map(|x| c * x).collect(),
        })
    }

    pub fn log_det(&self) -> f64 {
        self.eig.values.iter().map(|x| x.ln()).sum()
    }

    pub fn det(&self) -> f64 {
        self.eig.values.iter().product()
    }

    pub fn inverse(&self) -> CMatrix {
        self.eig.map(|x| 1.0 / x)
    }

    pub fn sqrt(&self) -> HpdMatrix {
        Self::from_eigen_unchecked(EigenDecomposition {
            vectors: self.eig.vectors.clone(),
            values: self.eig.values.iter().map(|x| x.sqrt()).collect(),
        })
    }

    pub fn inv_sqrt(&self) -> HpdMatrix {
        // Eigenvalues reversed so the descending-order invariant survives.
        let p = self.dim();
        let mut vectors = CMatrix::zeros(p, p);
        let mut values = Vec::with_capacity(p);
        for j in (0..p).rev() {
            vectors.set_column(p - 1 - j, &self.eig.vectors.column(j));
            values.push(1.0 / self.eig.values[j].sqrt());
        }
        Self::from_eigen_unchecked(EigenDecomposition { vectors, values })
    }

    pub fn log(&self) -> HermitianMatrix {
        self.eig.map_hermitian(f64::ln)
    }

    /// `L P Lᴴ`.
    pub fn congruence(&self, l: &CMatrix) -> Result<HpdMatrix> {
        congruence(l, self)
    }
}

impl PartialEq for HpdMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.herm == other.herm
    }
}

impl fmt::Debug for HpdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpdMatrix{}", self.herm.data)
    }
}

pub fn matrix_log(p: &HpdMatrix) -> HermitianMatrix {
    p.log()
}

pub fn matrix_exp(h: &HermitianMatrix) -> Result<HpdMatrix> {
    let eig = hermitian_eigen(h)?;
    if eig.max_value() > EXP_MAX_EIGENVALUE {
        return Err(Error::Overflow {
            max_eigenvalue: eig.max_value(),
        });
    }
    let values: Vec<f64> = eig.values.iter().map(|x| x.exp()).collect();
    // exact spectrum is positive; only underflow to zero is rejected, so
    // the relative floor for user input does not apply here
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(0.0, f64::max);
    if min <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: min,
            max_eigenvalue: max,
        });
    }
    Ok(HpdMatrix::from_eigen_unchecked(EigenDecomposition {
        vectors: eig.vectors,
        values,
    }))
}

pub fn matrix_sqrt(p: &HpdMatrix) -> HpdMatrix {
    p.sqrt()
}

pub fn matrix_inv_sqrt(p: &HpdMatrix) -> HpdMatrix {
    p.inv_sqrt()
}

/// The group action `P ↦ L P Lᴴ` of invertible matrices on HPD(p).
pub fn congruence(l: &CMatrix, p: &HpdMatrix) -> Result<HpdMatrix> {
    if l.nrows() != p.dim() || l.ncols() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: if l.nrows() != p.dim() { l.nrows() } else { l.ncols() },
        });
    }
    let sv = l.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= MAX_TRANSFORM_CONDITION) {
        return Err(Error::SingularTransform { condition });
    }
    HpdMatrix::new(p.as_hermitian().congruence(l)?)
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl From<&HermitianMatrix> for MatrixRepr {
    fn from(h: &HermitianMatrix) -> Self {
        let p = h.dim();
        let rows = |f: fn(&C64) -> f64| {
            (0..p)
                .map(|i| (0..p).map(|j| f(&h.data[(i, j)])).collect())
                .collect()
        };
        MatrixRepr {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        HermitianMatrix::from_parts(&repr.re, &repr.im).map_err(serde::de::Error::custom)
    }
}

impl Serialize for HpdMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.herm.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HpdMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let herm = HermitianMatrix::deserialize(d)?;
        HpdMatrix::new(herm).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn random_complex(rng: &mut ChaCha8Rng, p: usize) -> CMatrix {
        CMatrix::from_fn(p, p, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    pub fn random_hermitian(rng: &mut ChaCha8Rng, p: usize, scale: f64) -> HermitianMatrix {
        let a = random_complex(rng, p);
        HermitianMatrix::symmetrized(a * C64::new(scale, 0.0))
    }

    pub fn random_unitary(rng: &mut ChaCha8Rng, p: usize) -> CMatrix {
        random_complex(rng, p).qr().q()
    }

    pub fn random_hpd(rng: &mut ChaCha8Rng, p: usize) -> HpdMatrix {
        let a = random_complex(rng, p);
        let m = &a * a.adjoint() + CMatrix::identity(p, p) * C64::new(0.5, 0.0);
        HpdMatrix::from_matrix(m).unwrap()
    }

    pub fn fro(m: &CMatrix) -> f64 {
        m.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::test_util::*;
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn rejects_asymmetric_input() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.5, 0.1),
                C64::new(0.5, 0.1),
                C64::new(1.0, 0.0),
            ],
        );
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn symmetrizes_small_drift() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = C64::new(0.3, 0.2);
        m[(1, 0)] = C64::new(0.3 + 1e-14, -0.2);
        m[(0, 0)].im = 1e-15;
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.get(0, 1), h.get(1, 0).conj());
        assert_eq!(h.get(0, 0).im, 0.0);
    }

    #[test]
    fn rejects_non_square() {
        let m = CMatrix::zeros(2, 3);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn eigen_of_identity() {
        let e = hermitian_eigen(&HermitianMatrix::identity(3)).unwrap();
        assert_eq!(e.values(), &[1.0, 1.0, 1.0]);
        let uu = e.vectors() * e.vectors().adjoint();
        assert!(fro(&(uu - CMatrix::identity(3, 3))) < 1e-14);
    }

    #[test]
    fn eigen_of_diagonal_is_sorted_descending() {
        let e = hermitian_eigen(&HermitianMatrix::from_diagonal(&[1.0, 4.0])).unwrap();
        assert_eq!(e.values(), &[4.0, 1.0]);
    }

    #[test]
    fn eigen_reconstructs_random_hermitian() {
        let mut r = rng(7);
        for p in [1, 2, 3, 5, 8] {
            let h = random_hermitian(&mut r, p, 2.0);
            let e = h.eigen().unwrap();
            let uu = e.vectors() * e.vectors().adjoint();
            assert!(fro(&(uu - CMatrix::identity(p, p))) < 1e-12);
            let rec = e.reconstruct();
            assert!(fro(&(rec.as_matrix() - h.as_matrix())) < 1e-10);
            assert!(e.values().windows(2).all(|w| w[0] >= w[1]));
            for j in 0..p {
                let pivot = e.vectors().column(j).iter().find(|z| z.norm() > 1e-8).copied().unwrap();
                assert!(pivot.im.abs() < 1e-14 && pivot.re > 0.0);
            }
        }
    }

    #[test]
    fn rejects_indefinite() {
        let h = HermitianMatrix::from_diagonal(&[1.0, -1e-3]);
        assert!(matches!(
            HpdMatrix::new(h),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let h = HermitianMatrix::from_diagonal(&[1.0, 1e-13]);
        assert!(HpdMatrix::new(h).is_err());
        assert!(HpdMatrix::new(HermitianMatrix::zeros(2)).is_err());
    }

    #[test]
    fn log_of_identity_is_zero() {
        let l = matrix_log(&HpdMatrix::identity(4));
        assert_eq!(l.frobenius_norm(), 0.0);
    }

    #[test]
    fn log_of_diagonal_is_entrywise() {
        let p = HpdMatrix::from_diagonal(&[E, 1.0, 1.0]).unwrap();
        let l = matrix_log(&p);
        let expected = HermitianMatrix::from_diagonal(&[1.0, 0.0, 0.0]);
        assert!(l.sub(&expected).unwrap().frobenius_norm() < 1e-15);
    }

    #[test]
    fn log_matches_eigen_oracle() {
        let mut r = rng(11);
        let u = random_unitary(&mut r, 2);
        let d = |a: f64, b: f64| {
            CMatrix::from_diagonal(&DVector::from_vec(vec![C64::new(a, 0.0), C64::new(b, 0.0)]))
        };
        let p = HpdMatrix::from_matrix(&u * d(2.0, 0.5) * u.adjoint()).unwrap();
        let expected = &u * d(2f64.ln(), -(2f64.ln())) * u.adjoint();
        assert!(fro(&(matrix_log(&p).as_matrix() - expected)) < 1e-13);
    }

    #[test]
    fn exp_of_zero_and_diagonal() {
        let e = matrix_exp(&HermitianMatrix::zeros(3)).unwrap();
        assert!(fro(&(e.as_matrix() - CMatrix::identity(3, 3))) < 1e-15);
        let e = matrix_exp(&HermitianMatrix::from_diagonal(&[1.0, -1.0])).unwrap();
        assert!((e.get(0, 0).re - E).abs() < 1e-15);
        assert!((e.get(1, 1).re - 1.0 / E).abs() < 1e-15);
        assert_eq!(e.get(0, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn exp_overflow_is_reported() {
        let h = HermitianMatrix::from_diagonal(&[800.0, 0.0]);
        assert!(matches!(matrix_exp(&h), Err(Error::Overflow { .. })));
    }

    #[test]
    fn exp_spectrum_wider_than_input_floor() {
        // condition e^40 is beyond the floor applied to supplied matrices
        let h = HermitianMatrix::from_diagonal(&[20.0, 0.0, -20.0]);
        let e = matrix_exp(&h).unwrap();
        assert!(matrix_log(&e).sub(&h).unwrap().frobenius_norm() < 1e-12);
        assert!(HpdMatrix::from_matrix(e.as_matrix().clone()).is_err());
        let tiny = HermitianMatrix::from_diagonal(&[0.0, -800.0]);
        assert!(matches!(matrix_exp(&tiny), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn exp_log_roundtrip_seeded() {
        let mut r = rng(3);
        for p in [1, 2, 3, 6] {
            let h = random_hermitian(&mut r, p, 3.0);
            let back = matrix_log(&matrix_exp(&h).unwrap());
            assert!(back.sub(&h).unwrap().frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn sqrt_examples() {
        let s = matrix_sqrt(&HpdMatrix::identity(3));
        assert!(fro(&(s.as_matrix() - CMatrix::identity(3, 3))) < 1e-15);
        let s = matrix_sqrt(&HpdMatrix::from_diagonal(&[4.0, 9.0]).unwrap());
        assert!((s.get(0, 0).re - 2.0).abs() < 1e-15 && (s.get(1, 1).re - 3.0).abs() < 1e-15);

        let mut r = rng(5);
        for p in [2, 3, 7] {
            let m = random_hpd(&mut r, p);
            let s = matrix_sqrt(&m);
            assert!(fro(&(s.as_matrix() * s.as_matrix() - m.as_matrix())) < 1e-10);
            let is = matrix_inv_sqrt(&m);
            assert!(fro(&(s.as_matrix() * is.as_matrix() - CMatrix::identity(p, p))) < 1e-10);
            assert!(is.eigen().values().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn congruence_examples() {
        let mut r = rng(9);
        let p = random_hpd(&mut r, 3);
        let same = congruence(&CMatrix::identity(3, 3), &p).unwrap();
        assert!(fro(&(same.as_matrix() - p.as_matrix())) < 1e-14);

        let swap = CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        );
        let d = HpdMatrix::from_diagonal(&[2.0, 5.0]).unwrap();
        let swapped = congruence(&swap, &d).unwrap();
        assert_eq!(swapped.get(0, 0).re, 5.0);
        assert_eq!(swapped.get(1, 1).re, 2.0);

        let sigma = random_hpd(&mut r, 3);
        let root = matrix_sqrt(&sigma);
        let back = congruence(root.as_matrix(), &HpdMatrix::identity(3)).unwrap();
        assert!(fro(&(back.as_matrix() - sigma.as_matrix())) < 1e-10);
    }

    #[test]
    fn congruence_rejects_singular() {
        let l = CMatrix::from_diagonal(&DVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]));
        assert!(matches!(
            congruence(&l, &HpdMatrix::identity(2)),
            Err(Error::SingularTransform { .. })
        ));
    }

    #[test]
    fn trace_log_is_log_det() {
        let mut r = rng(21);
        for p in [1, 3, 5] {
            let m = random_hpd(&mut r, p);
            let det = m.as_matrix().clone().determinant().re;
            assert!((matrix_log(&m).trace() - det.ln()).abs() < 1e-10);
            assert!((m.log_det() - det.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn serde_roundtrip() {
        let mut r = rng(2);
        let m = random_hpd(&mut r, 3);
        let json = serde_json::to_string(&m).unwrap();
        let back: HpdMatrix = serde_json::from_str(&json).unwrap();
        assert!(fro(&(back.as_matrix() - m.as_matrix())) < 1e-15);
        let bad = r#"{"re":[[1.0,0.0],[0.0,-1.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<HpdMatrix>(bad).is_err());
    }
}
