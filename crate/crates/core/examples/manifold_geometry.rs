// Affine-invariant geometry: distance, exponential and logarithmic maps.

use nalgebra::DMatrix;
use intrinsic_wishart::hpd::{congruence, CMatrix, HpdMatrix, C64};
use intrinsic_wishart::manifold::{emap, geodesic_distance, lmap, norm};

pub fn run_example() -> intrinsic_wishart::Result<()> {
    let a = HpdMatrix::from_diagonal(&[1.0, 2.0, 4.0])?;
    let b = HpdMatrix::from_real(DMatrix::from_row_slice(3, 3, &[2.0, 0.5, 0.0, 0.5, 1.0, 0.3, 0.0, 0.3, 3.0]))?;

    let d = geodesic_distance(&a, &b)?;
    let v = lmap(&a, &b)?;
    println!("d(A, B)            {d:.12}");
    println!("‖Lmap_A(B)‖_A      {:.12}", norm(&a, &v)?);

    // points along the geodesic from A to B
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let g = emap(&a, &v.scale(t))?;
        println!("t = {t:.2}  d(A, γ) = {:.6}  d(γ, B) = {:.6}", geodesic_distance(&a, &g)?, geodesic_distance(&g, &b)?);
    }

    let l = CMatrix::from_fn(3, 3, |i, j| C64::new((i + 2 * j) as f64 * 0.3 + if i == j { 2.0 } else { 0.0 }, 0.1 * i as f64));
    let moved = geodesic_distance(&congruence(&l, &a)?, &congruence(&l, &b)?)?;
    println!("d(LALᴴ, LBLᴴ) − d  {:.2e}", moved - d);
    Ok(())
}

#[allow(dead_code)]
fn main() -> intrinsic_wishart::Result<()> {
    run_example()
}
