//! Bound comparison for f_κ = λ²x1² − 2κλ x1x2 + x2² as λ grows.
//!
//! ```bash
//! cargo run -p polya-bounds --example fkappa_table -- 1/2 2 10 100 1000
//! ```
//!
//! The first argument is κ, the rest are λ values.

use polya_bounds::bounds::fkappa_report;
use polya_bounds::rational::{format_rational, parse_rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (kappa, lambdas) = match args.split_first() {
        Some((k, ls)) if !ls.is_empty() => (k.clone(), ls.to_vec()),
        _ => ("1/2".to_string(), ["2", "10", "100", "1000"].map(String::from).to_vec()),
    };
    let parse = |s: &str| parse_rational(s).ok_or_else(|| format!("not a rational: {s}"));
    let kappa = parse(&kappa)?;
    let lambdas = lambdas.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;

    println!("kappa = {kappa}");
    println!("{:>6} {:>10} {:>10} {:>10} {:>14} {:>14}", "lambda", "new", "corollary", "klp", "new/klp", "(1+k)/(2l)");
    for row in fkappa_report(&kappa, &lambdas)? {
        let ratio = row.ratio.as_ref().map(format_rational).unwrap_or_else(|| "-".into());
        println!(
            "{:>6} {:>10} {:>10} {:>10} {:>14} {:>14}",
            format_rational(&row.lambda),
            row.bound_new,
            row.bound_corollary,
            row.bound_klp,
            ratio,
            format_rational(&row.predicted_ratio)
        );
        assert!(row.sup_matches && row.min_matches, "closed forms disagree at lambda = {}", row.lambda);
    }
    println!("sup f̂/f − 1 and min f match their closed forms on every row");
    Ok(())
}
