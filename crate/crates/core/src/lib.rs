//! Intrinsic bias and Riemannian risk for averages of complex Wishart
//! covariance estimates. Two averages are covered: the arithmetic mean and
//! the Fréchet (Karcher) mean under the affine-invariant metric on
//! Hermitian positive-definite matrices.
//!
//! The crate is organised bottom-up:
//!
//! - [`hpd`]: Hermitian / HPD value types, spectral decomposition and the
//!   matrix functions built on it (log, exp, square roots, congruence).
//! - [`manifold`]: the affine-invariant metric, geodesic distance and the
//!   exponential / logarithmic maps.
//! - [`wishart`]: seeded sampling of circular complex Gaussian vectors and
//!   complex Wishart sample covariances.
//! - [`frechet`]: the Karcher fixed-point iteration and the arithmetic mean.
//! - [`intrinsic`]: digamma / trigamma, closed-form intrinsic bias and
//!   Riemannian risk, and Monte Carlo estimators of both.
//! - [`cli`]: experiment configuration, the canned experiments and their
//!   CSV / JSON output. The `intrinsic-wishart` binary is a thin wrapper.
//!
//! Runnable walkthroughs of each capability live in the crate's
//! `examples/` directory (`cargo run --release --example <name>`).

// `!(x > 0.0)` also rejects NaN; reference constants keep all their digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod frechet;
pub mod hpd;
pub mod intrinsic;
pub mod manifold;
pub mod wishart;

pub use error::{Error, Result};
pub use frechet::{arithmetic_mean, frechet_mean, KarcherOptions, KarcherResult};
pub use hpd::{EigenDecomposition, HermitianMatrix, HpdMatrix, C64};
pub use intrinsic::{EstimatorKind, MonteCarloReport};
pub use wishart::{SeedSpec, WishartModel};
