//! Watching (x1 + ⋯ + xn)^m f acquire strictly positive coefficients, and a
//! form that never does.
//!
//! ```bash
//! cargo run -p polya-bounds --example polya_expansion
//! ```

use polya_bounds::bounds::{bound_new, exact_polya_exponent_retaining, ExponentOutcome};
use polya_bounds::forms::QuadraticForm;
use polya_bounds::rational::{int, ratio};

fn main() -> Result<(), polya_bounds::Error> {
    // (x1 − x2)² + x1x2/5 + x3²: barely positive near (1/2, 1/2, 0)
    let f = QuadraticForm::new(vec![
        vec![int(1), ratio(-9, 10), int(0)],
        vec![ratio(-9, 10), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ])?;
    println!("f = {}", f.to_sparse());
    let r = exact_polya_exponent_retaining(&f, 200)?;
    match r.outcome {
        ExponentOutcome::Found(m) => {
            let w = r.witness.expect("retained");
            println!("exponent {m} (bound_new {}), {} positive terms at degree {}", bound_new(&f)?, w.term_count(), w.degree());
        }
        other => println!("{other:?}"),
    }

    let g = QuadraticForm::from_rows(&[[1, -1], [-1, 1]])?;
    let r = exact_polya_exponent_retaining(&g, 200)?;
    println!("g = {}: {:?}, min {} at {}", g.to_sparse(), r.outcome, r.min_f, r.argmin);
    Ok(())
}
