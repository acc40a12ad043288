//! Lattice coefficients of (x1 + ⋯ + xn)^m f against their closed form in
//! f(t) and f̂(t), t = α/(m+2).
//!
//! ```bash
//! cargo run -p polya-bounds --example coefficient_identity
//! ```

use polya_bounds::bounds::{identity_rhs, verify_identity_up_to};
use polya_bounds::forms::{ExponentVector, QuadraticForm, SimplexPoint};
use polya_bounds::rational::format_rational;

fn main() -> Result<(), polya_bounds::Error> {
    let f = QuadraticForm::from_rows(&[[3, -2, 1], [-2, 5, 0], [1, 0, 2]])?;
    let m = 2;
    let expanded = f.to_sparse().expand(m);
    println!("f = {}", f.to_sparse());
    println!("coefficients of (x1 + x2 + x3)^{m} f:");
    for alpha in ExponentVector::all_of_degree(f.n(), m + 2) {
        let t = SimplexPoint::from_lattice(&alpha, m + 2)?;
        let lhs = expanded.coefficient(&alpha)?;
        let rhs = identity_rhs(&f, &t, m)?;
        println!("  {:?}  t = {t}  coefficient {}  closed form {}", alpha.entries(), format_rational(&lhs), format_rational(&rhs));
        assert_eq!(lhs, rhs);
    }

    for v in verify_identity_up_to(&f, 8) {
        println!(
            "m = {}: {} lattice points, {} mismatches, {} threshold checks",
            v.m, v.lattice_points, v.mismatches, v.threshold_checked
        );
    }
    Ok(())
}
