// Monte Carlo bias vector field of both estimators.

use intrinsic_wishart::intrinsic::{a0, bias_vector_field_mc, ibias_frechet_analytic, ibias_mean_analytic};
use intrinsic_wishart::{EstimatorKind, SeedSpec, WishartModel};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let (p, k, n, r) = (3, 20, 3, 2000);
    let model = WishartModel::standard(p, k)?;
    println!("a0({k}, {p}) = {:.6}", a0(k, p)?);

    for kind in EstimatorKind::ALL {
        let rep = bias_vector_field_mc(kind, &model, n, r, SeedSpec::new(2017, 0))?;
        let analytic = match kind {
            EstimatorKind::FrechetMean => ibias_frechet_analytic(p, k)?,
            EstimatorKind::ArithmeticMean => ibias_mean_analytic(p, k, n)?,
        };
        println!("\n{kind}");
        println!("  diagonal          {:?}", rep.whitened_mean_tangent.diagonal());
        println!("  max |off-diag|    {:.2e}", rep.max_off_diagonal());
        println!("  ibias             {:.6} ± {:.6} (analytic {analytic:.6})", rep.ibias_hat, rep.ibias_se);
        println!("  ibias corrected   {:.6}", rep.ibias_corrected);
        println!("  risk              {:.6} ± {:.6}", rep.risk_hat, rep.risk_se);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
