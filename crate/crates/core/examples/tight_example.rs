//! The binary form 4x1² − 2x1x2 + x2², where the associated-form bound is
//! attained exactly.
//!
//! ```bash
//! cargo run -p polya-bounds --example tight_example
//! ```

use polya_bounds::bounds::{bound_report, exact_polya_exponent, ExponentOutcome};
use polya_bounds::forms::QuadraticForm;

fn main() -> Result<(), polya_bounds::Error> {
    let f = QuadraticForm::from_rows(&[[4, -1], [-1, 1]])?;
    println!("f  = {}", f.to_sparse());
    println!("f̂  = {}", f.associated().to_sparse());

    let g = f.to_sparse();
    for m in 0..=4 {
        let h = g.expand(m);
        let mark = if h.strictly_positive_coefficients() { "all positive" } else { "" };
        println!("m = {m}: {h}   {mark}");
    }

    let report = bound_report(&f)?;
    println!("min f on the simplex = {} at {}", report.min_f, report.argmin);
    println!("bound_new       = {}", report.bound_new);
    println!("bound_corollary = {}", report.bound_corollary);
    println!("bound_klp       = {}", report.bound_klp);

    if let ExponentOutcome::Found(m) = exact_polya_exponent(&f, 50)?.outcome {
        println!("exact exponent  = {m}");
    }
    Ok(())
}
