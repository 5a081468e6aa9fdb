// Riemannian risk split into entry variances plus intrinsic bias.

use intrinsic_wishart::cli::random_sigma;
use intrinsic_wishart::intrinsic::{bias_vector_field_mc, risk_decomposition_mc};
use intrinsic_wishart::{EstimatorKind, SeedSpec, WishartModel};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    // the decomposition is taken in whitened coordinates, so Σ need not be I
    let model = WishartModel::new(20, random_sigma(3, 11))?;
    for kind in EstimatorKind::ALL {
        let rep = bias_vector_field_mc(kind, &model, 3, 2000, SeedSpec::new(2017, 0))?;
        let d = risk_decomposition_mc(&rep)?;
        println!(
            "{kind:<16} risk {:.6} = {:.6} + {:.6}  residual {:+.2e} (4 SE = {:.2e}) consistent {}",
            d.risk, d.variance_sum, d.ibias, d.residual, 4.0 * d.combined_se, d.consistent
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
