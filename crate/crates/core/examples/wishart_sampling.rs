// Seeded complex Wishart sampling.

use nalgebra::DMatrix;
use intrinsic_wishart::frechet::arithmetic_mean;
use intrinsic_wishart::hpd::HpdMatrix;
use intrinsic_wishart::wishart::{sample_batch, SeedSpec, WishartModel};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let sigma = HpdMatrix::from_real(DMatrix::from_row_slice(2, 2, &[2.0, 0.6, 0.6, 1.0]))?;
    let model = WishartModel::new(10, sigma)?;

    let seed = SeedSpec::new(2017, 0);
    let batch = sample_batch(&model, 5000, seed)?;
    let mean = arithmetic_mean(&batch)?;
    println!("Σ      {}", row_major(&model.sigma().as_matrix().map(|z| z.re)));
    println!("mean S {}", row_major(&mean.as_matrix().map(|z| z.re)));
    println!("Im S₀₁ {:+.4}", mean.as_matrix()[(0, 1)].im);

    let again = sample_batch(&model, 3, seed)?;
    println!("same stream, same draws: {}", again[0].as_matrix() == batch[0].as_matrix());
    let other = sample_batch(&model, 1, seed.offset(1))?;
    println!("next stream differs:     {}", other[0].as_matrix() != batch[0].as_matrix());

    // K < p is rejected
    println!("{}", WishartModel::standard(3, 2).unwrap_err());
    Ok(())
}

fn row_major(m: &DMatrix<f64>) -> String {
    let rows: Vec<String> = m
        .row_iter()
        .map(|r| r.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
