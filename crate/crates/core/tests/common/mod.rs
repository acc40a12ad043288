#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use polya_bounds::forms::{QuadraticForm, SimplexPoint};
use polya_bounds::Rational;
use rand::Rng;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Symmetric matrix with entries `p/q`, `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, max_num: i64, max_den: i64) -> QuadraticForm {
    let mut rows = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den));
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    QuadraticForm::new(rows).unwrap()
}

/// `GᵀG + c·I` with small integer `G` and `c ∈ {1..4}/{1..3}`: positive on
/// the simplex.
pub fn random_positive<R: Rng>(rng: &mut R, n: usize) -> QuadraticForm {
    let g: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let shift = ratio(rng.gen_range(1..=4), rng.gen_range(1..=3));
    let mut rows = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in 0..n {
            let dot: i64 = (0..n).map(|k| g[k][i] * g[k][j]).sum();
            rows[i][j] = int(dot);
        }
        rows[i][i] += shift.clone();
    }
    QuadraticForm::new(rows).unwrap()
}

/// Random rational point of the simplex with denominator `den`.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, den: u32) -> SimplexPoint {
    let mut cuts: Vec<u32> = (0..n - 1).map(|_| rng.gen_range(0..=den)).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut coords = Vec::with_capacity(n);
    for c in cuts.into_iter().chain(std::iter::once(den)) {
        coords.push(ratio((c - prev) as i64, den as i64));
        prev = c;
    }
    SimplexPoint::new(coords).unwrap()
}
