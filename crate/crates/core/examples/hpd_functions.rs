// Hermitian positive-definite matrices and their spectral functions.

use intrinsic_wishart::hpd::{matrix_exp, matrix_log, CMatrix, HpdMatrix, C64};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let m = CMatrix::from_row_slice(
        3,
        3,
        &[
            C64::new(4.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, 0.5),
            C64::new(1.0, -1.0), C64::new(3.0, 0.0), C64::new(0.2, 0.0),
            C64::new(0.0, -0.5), C64::new(0.2, 0.0), C64::new(2.0, 0.0),
        ],
    );
    let p = HpdMatrix::from_matrix(m)?;
    println!("eigenvalues      {:?}", p.eigen().values());
    println!("log det          {:.12}", p.log_det());

    let log = matrix_log(&p);
    println!("trace log P      {:.12}", log.trace());

    let back = matrix_exp(&log)?;
    let err = (back.as_matrix() - p.as_matrix()).norm();
    println!("‖exp(log P) − P‖ {err:.2e}");

    let root = p.sqrt();
    let err = (root.as_matrix() * root.as_matrix() - p.as_matrix()).norm();
    println!("‖P½ P½ − P‖      {err:.2e}");

    let err = (p.inv_sqrt().as_matrix() * root.as_matrix() - CMatrix::identity(3, 3)).norm();
    println!("‖P^-½ P½ − I‖    {err:.2e}");

    // non-Hermitian input is rejected
    let bad = CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    println!("non-Hermitian    {}", HpdMatrix::from_matrix(bad).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
