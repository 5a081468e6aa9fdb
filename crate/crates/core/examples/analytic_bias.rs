// Closed-form intrinsic bias and scalar risk.

use intrinsic_wishart::intrinsic::{
    a0, ibias_frechet_analytic, ibias_mean_analytic, scalar_risk_frechet, scalar_risk_mean,
};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    println!("{:>4} {:>4} {:>14}", "p", "K", "a0");
    for (p, k) in [(1, 1), (1, 20), (3, 3), (3, 20), (3, 200), (8, 8)] {
        println!("{p:>4} {k:>4} {:>14.10}", a0(k, p)?);
    }

    let (p, k) = (3, 20);
    println!("\nibias Fréchet (p={p}, K={k}) = {:.8}", ibias_frechet_analytic(p, k)?);
    for n in [1, 2, 3, 10, 100] {
        println!("ibias mean    (N={n:>3})      = {:.8}", ibias_mean_analytic(p, k, n)?);
    }

    println!("\nscalar risk, K = 20");
    for n in [1, 3, 10, 100] {
        let (f, m) = (scalar_risk_frechet(20, n)?, scalar_risk_mean(20, n)?);
        println!("N = {n:>3}  Fréchet {f:.8}  mean {m:.8}  difference {:.8}", f - m);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
