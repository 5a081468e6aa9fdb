// Fréchet (Karcher) mean of sample covariances.

use intrinsic_wishart::frechet::{arithmetic_mean, frechet_mean, frechet_objective, KarcherOptions};
use intrinsic_wishart::wishart::{sample_batch, SeedSpec, WishartModel};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let model = WishartModel::standard(3, 4)?;
    let samples = sample_batch(&model, 8, SeedSpec::new(7, 0))?;

    let res = frechet_mean(&samples, &KarcherOptions::default())?;
    println!(
        "converged {} after {} iterations, ‖grad‖ = {:.2e}",
        res.converged, res.iterations, res.final_grad_norm
    );

    let arith = arithmetic_mean(&samples)?;
    println!("objective at arithmetic mean {:.8}", frechet_objective(&arith, &samples)?);
    println!("objective at Fréchet mean    {:.8}", frechet_objective(&res.mean, &samples)?);

    // det of the Fréchet mean is the geometric mean of the determinants
    let log_gm = samples.iter().map(|s| s.log_det()).sum::<f64>() / samples.len() as f64;
    println!("log det mean {:.12}  mean log det {:.12}", res.mean.log_det(), log_gm);

    let opts = KarcherOptions { max_iters: 2, ..KarcherOptions::default() };
    let short = frechet_mean(&samples, &opts)?;
    println!("with max_iters = 2: converged {}", short.converged);
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
