//! Exact minimum, maximum and ratio supremum of quadratic forms over the
//! simplex by KKT face enumeration.
//!
//! ```bash
//! cargo run -p polya-bounds --example simplex_optimization
//! ```

use num_bigint::BigInt;
use polya_bounds::forms::QuadraticForm;
use polya_bounds::simplex_opt::{
    face_stationary_points, max_over_simplex, min_over_simplex, sup_ratio_exact, sup_ratio_floor,
};

fn main() -> Result<(), polya_bounds::Error> {
    let f = QuadraticForm::from_rows(&[[2, -1, 0], [-1, 3, -2], [0, -2, 4]])?;
    println!("f = {}", f.to_sparse());
    for s in face_stationary_points(&f)? {
        println!("  face {:<8} point {}  value {}", s.support.to_string(), s.point, s.value);
    }
    let min = min_over_simplex(&f)?;
    let max = max_over_simplex(&f)?;
    println!("min = {} at {} ({} candidates)", min.value, min.argpoint, min.candidates_examined);
    println!("max = {} at {}", max.value, max.argpoint);

    let hat = f.associated();
    println!("floor(sup f̂/f) = {}", sup_ratio_floor(&hat, &f)?);
    match sup_ratio_exact(&hat, &f, &BigInt::from(10).pow(30))? {
        Some(s) => println!("sup f̂/f = {s}"),
        None => println!("sup f̂/f is not a rational with denominator below 10^30"),
    }
    Ok(())
}
