// The scalar risk-difference grid, driven through the CLI layer.

use intrinsic_wishart::cli::{run, CommandKind, ExperimentConfig};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let mut config = ExperimentConfig::new(CommandKind::RiskScan);
    config.k_max = 5;
    config.n_max = 4;
    let outcome = run(&config)?;
    print!("{}", outcome.rendered);
    println!("all differences positive: {:?}", outcome.gate_passed);
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
