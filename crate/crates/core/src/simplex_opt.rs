//! Exact optimization of quadratic forms over the standard simplex.
//!
//! Every local extremum of `tᵀAt` over `Δₙ` lies in the relative interior of
//! some face `{t ∈ Δₙ : tᵢ = 0 for i ∉ S}` and satisfies the KKT system
//!
//! ```text
//!     A_S t_S = μ·1,    Σ_{i∈S} tᵢ = 1,
//! ```
//!
//! whose multiplier `μ` is the form's value there. We solve that system for
//! every nonempty `S` over the rationals. A singular system means the
//! stationary set on that face is empty or an affine family along which the
//! form is affine; its extrema then sit on subfaces, which are enumerated
//! anyway, so singular faces are skipped.
//!
//! Ratio suprema `sup num/den` (with `den > 0` on `Δₙ`) reduce to sign probes
//! `max_Δ (num − r·den) ≥ 0 ⇔ r ≤ sup num/den`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{QuadraticForm, SimplexPoint};
use crate::linsolve;
use crate::rational::{floor, Rational};

/// Largest variable count accepted by face enumeration (`2ⁿ − 1` faces).
pub const MAX_VARIABLES: usize = 16;

/// Support of a face of `Δₙ`: a nonempty, strictly increasing set of 0-based
/// coordinate indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSupport(Vec<usize>);

impl FaceSupport {
    fn from_mask(mask: u32, n: usize) -> Self {
        FaceSupport((0..n).filter(|i| mask & (1 << i) != 0).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// 1-based, e.g. `{1,3}`.
impl fmt::Display for FaceSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryPoint {
    pub point: SimplexPoint,
    pub value: Rational,
    /// Smallest enumerated face whose KKT system produced this point.
    pub support: FaceSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimumResult {
    pub value: Rational,
    pub argpoint: SimplexPoint,
    pub candidates_examined: usize,
}

fn check_size(q: &QuadraticForm) -> Result<()> {
    if q.n() > MAX_VARIABLES {
        return Err(Error::TooManyVariables { n: q.n(), max: MAX_VARIABLES });
    }
    Ok(())
}

/// Solves the KKT system on one face; `None` if singular or infeasible.
fn solve_face(q: &QuadraticForm, support: &[usize]) -> Option<(Vec<Rational>, Rational)> {
    let k = support.len();
    let mut a = Vec::with_capacity(k + 1);
    for &i in support {
        let mut row: Vec<Rational> = support.iter().map(|&j| q.entry(i, j).clone()).collect();
        row.push(-Rational::one());
        a.push(row);
    }
    let mut last = vec![Rational::one(); k];
    last.push(Rational::zero());
    a.push(last);
    let mut b = vec![Rational::zero(); k];
    b.push(Rational::one());

    let mut sol = linsolve::solve(&a, &b)?;
    let mu = sol.pop().expect("k + 1 unknowns");
    if sol.iter().any(|t| t.is_negative()) {
        return None;
    }
    Some((sol, mu))
}

/// All KKT stationary points of `q` on the faces of `Δₙ`, deduplicated and
/// sorted by point. The `n` vertices are always present.
pub fn face_stationary_points(q: &QuadraticForm) -> Result<Vec<StationaryPoint>> {
    check_size(q)?;
    let n = q.n();
    let mut found: BTreeMap<SimplexPoint, StationaryPoint> = BTreeMap::new();
    // Subsets of a support have smaller masks, so the first hit for a point
    // carries its minimal support.
    for mask in 1u32..(1u32 << n) {
        let support = FaceSupport::from_mask(mask, n);
        let Some((t_s, mu)) = solve_face(q, support.indices()) else {
            continue;
        };
        let mut coords = vec![Rational::zero(); n];
        for (&i, t) in support.indices().iter().zip(t_s) {
            coords[i] = t;
        }
        let point = SimplexPoint::from_coords_unchecked(coords);
        found.entry(point.clone()).or_insert_with(|| {
            debug_assert_eq!(q.eval(&point).as_ref(), Ok(&mu));
            StationaryPoint { point, value: mu, support }
        });
    }
    Ok(found.into_values().collect())
}

fn optimum(q: &QuadraticForm, better: Ordering) -> Result<OptimumResult> {
    let points = face_stationary_points(q)?;
    let candidates_examined = points.len();
    // Sorted by point, so keeping the first of equal values gives the
    // lexicographically smallest argpoint.
    let best = points
        .into_iter()
        .reduce(|best, p| if p.value.cmp(&best.value) == better { p } else { best })
        .expect("vertices are always stationary");
    Ok(OptimumResult { value: best.value, argpoint: best.point, candidates_examined })
}

/// Exact `min_{t ∈ Δₙ} tᵀAt` with a witnessing point.
pub fn min_over_simplex(q: &QuadraticForm) -> Result<OptimumResult> {
    optimum(q, Ordering::Less)
}

/// Exact `max_{t ∈ Δₙ} tᵀAt` with a witnessing point.
pub fn max_over_simplex(q: &QuadraticForm) -> Result<OptimumResult> {
    optimum(q, Ordering::Greater)
}

pub fn is_positive_on_simplex(q: &QuadraticForm) -> Result<bool> {
    Ok(min_over_simplex(q)?.value.is_positive())
}

/// Returns the minimum of `q` if it is positive, otherwise a
/// [`Error::NotPositive`] naming the minimizer.
pub fn require_positive(q: &QuadraticForm) -> Result<OptimumResult> {
    let min = min_over_simplex(q)?;
    if !min.value.is_positive() {
        return Err(Error::NotPositive { point: min.argpoint, value: min.value });
    }
    Ok(min)
}

struct RatioProbe<'a> {
    num: &'a QuadraticForm,
    den: &'a QuadraticForm,
    min_den: OptimumResult,
}

impl<'a> RatioProbe<'a> {
    fn new(num: &'a QuadraticForm, den: &'a QuadraticForm) -> Result<Self> {
        if num.n() != den.n() {
            return Err(Error::DimensionMismatch { expected: den.n(), found: num.n() });
        }
        let min_den = require_positive(den)?;
        Ok(RatioProbe { num, den, min_den })
    }

    /// Compares `r` with `sup num/den` via the sign of `max_Δ (num − r·den)`.
    fn compare(&self, r: &Rational) -> Result<Ordering> {
        let diff = self.num.minus_multiple(r, self.den)?;
        let v = max_over_simplex(&diff)?.value;
        Ok(Rational::zero().cmp(&v))
    }

    fn at_least(&self, k: &BigInt) -> Result<bool> {
        Ok(self.compare(&Rational::from_integer(k.clone()))? != Ordering::Greater)
    }

    fn floor_of_sup(&self) -> Result<BigInt> {
        let b = SimplexPoint::barycenter(self.num.n());
        let mut lo = floor(&(self.num.eval(&b)? / self.den.eval(&b)?));
        let max_num = max_over_simplex(self.num)?.value;
        let top = if max_num.is_positive() { max_num } else { Rational::zero() };
        let mut hi = floor(&(top / &self.min_den.value)) + BigInt::one();

        assert!(self.at_least(&lo)?, "lower bracket must satisfy the probe");
        assert!(!self.at_least(&hi)?, "upper bracket must fail the probe");
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            // lo < mid < hi with probe(lo) true and probe(hi) false; a
            // monotone predicate keeps that bracket valid after either update.
            if self.at_least(&mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

/// `⌊sup_{t∈Δₙ} num(t)/den(t)⌋`, which equals `sup_t ⌊num(t)/den(t)⌋` since
/// the ratio is continuous on the compact simplex and attains its supremum.
///
/// Binary search over integers `k`, each probe one exact maximization of
/// `num − k·den`.
pub fn sup_ratio_floor(num: &QuadraticForm, den: &QuadraticForm) -> Result<BigInt> {
    RatioProbe::new(num, den)?.floor_of_sup()
}

/// Exact `sup_{t∈Δₙ} num(t)/den(t)` when it is a rational number with
/// denominator at most `max_denominator`, found by a Stern–Brocot search
/// driven by the three-way probe. Returns `Ok(None)` otherwise (for
/// instance when the supremum is irrational).
pub fn sup_ratio_exact(
    num: &QuadraticForm,
    den: &QuadraticForm,
    max_denominator: &BigInt,
) -> Result<Option<Rational>> {
    let probe = RatioProbe::new(num, den)?;
    let k = Rational::from_integer(probe.floor_of_sup()?);
    if probe.compare(&k)? == Ordering::Equal {
        return Ok(Some(k));
    }
    // The fractional part x lies strictly inside (left, right) = (0/1, 1/1).
    let frac_cmp = |p: &BigInt, q: &BigInt| probe.compare(&(&k + Rational::new(p.clone(), q.clone())));
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    let (mut c, mut d) = (BigInt::one(), BigInt::one());
    loop {
        let (p, q) = (&a + &c, &b + &d);
        if &q > max_denominator {
            return Ok(None);
        }
        match frac_cmp(&p, &q)? {
            Ordering::Equal => return Ok(Some(&k + Rational::new(p, q))),
            Ordering::Less => {
                // Advance left = (a + j·c)/(b + j·d) by the largest j staying below x.
                match gallop(|j| {
                    let (p, q) = (&a + j * &c, &b + j * &d);
                    if &q > max_denominator {
                        return Ok(Ordering::Greater);
                    }
                    frac_cmp(&p, &q)
                }, Ordering::Less)? {
                    Gallop::Hit(j) => return Ok(Some(&k + Rational::new(&a + &j * &c, &b + &j * &d))),
                    Gallop::Last(j) => {
                        a += &j * &c;
                        b += &j * &d;
                    }
                }
            }
            Ordering::Greater => {
                match gallop(|j| {
                    let (p, q) = (&c + j * &a, &d + j * &b);
                    if &q > max_denominator {
                        return Ok(Ordering::Less);
                    }
                    frac_cmp(&p, &q)
                }, Ordering::Greater)? {
                    Gallop::Hit(j) => return Ok(Some(&k + Rational::new(&c + &j * &a, &d + &j * &b))),
                    Gallop::Last(j) => {
                        c += &j * &a;
                        d += &j * &b;
                    }
                }
            }
        }
    }
}

enum Gallop {
    /// `cmp(j)` was `Equal`.
    Hit(BigInt),
    /// Largest `j ≥ 1` with `cmp(j) == side`.
    Last(BigInt),
}

/// Exponential then binary search for the last `j ≥ 1` where `cmp(j)` is
/// still `side`, given that `cmp(1) == side` and `cmp` changes side once.
fn gallop(mut cmp: impl FnMut(&BigInt) -> Result<Ordering>, side: Ordering) -> Result<Gallop> {
    let mut lo = BigInt::one();
    let mut hi = BigInt::from(2);
    loop {
        match cmp(&hi)? {
            Ordering::Equal => return Ok(Gallop::Hit(hi)),
            o if o == side => {
                lo = hi.clone();
                hi *= 2;
            }
            _ => break,
        }
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        match cmp(&mid)? {
            Ordering::Equal => return Ok(Gallop::Hit(mid)),
            o if o == side => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(Gallop::Last(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn example() -> QuadraticForm {
        QuadraticForm::from_rows(&[[4, -1], [-1, 1]]).unwrap()
    }

    fn cross() -> QuadraticForm {
        QuadraticForm::new(vec![vec![int(0), ratio(1, 2)], vec![ratio(1, 2), int(0)]]).unwrap()
    }

    fn pt(c: &[Rational]) -> SimplexPoint {
        SimplexPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn stationary_points_of_binary_example() {
        let pts = face_stationary_points(&example()).unwrap();
        let find = |p: SimplexPoint| pts.iter().find(|s| s.point == p).map(|s| s.value.clone());
        assert_eq!(find(SimplexPoint::vertex(2, 0)), Some(int(4)));
        assert_eq!(find(SimplexPoint::vertex(2, 1)), Some(int(1)));
        assert_eq!(find(pt(&[ratio(2, 7), ratio(5, 7)])), Some(ratio(3, 7)));
        assert_eq!(pts.len(), 3);
    }

    #[test]
    fn stationary_points_of_identity() {
        let pts = face_stationary_points(&QuadraticForm::identity(2)).unwrap();
        assert_eq!(pts.len(), 3);
        let bary = pts.iter().find(|s| s.point == SimplexPoint::barycenter(2)).unwrap();
        assert_eq!(bary.value, ratio(1, 2));
        assert_eq!(bary.support.to_string(), "{1,2}");
    }

    #[test]
    fn rank_one_face_is_skipped() {
        let pts = face_stationary_points(&QuadraticForm::simplex_square(2)).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|s| s.value == int(1) && s.support.indices().len() == 1));
    }

    #[test]
    fn min_examples() {
        let r = min_over_simplex(&example()).unwrap();
        assert_eq!(r.value, ratio(3, 7));
        assert_eq!(r.argpoint, pt(&[ratio(2, 7), ratio(5, 7)]));
        // λ²(1−κ²)/(λ²+2κλ+1) at κ = 1/2, λ = 2
        assert_eq!(r.value, int(4) * (int(1) - ratio(1, 4)) / (int(4) + int(2) + int(1)));
        assert_eq!(min_over_simplex(&QuadraticForm::simplex_square(2)).unwrap().value, int(1));
        let c = min_over_simplex(&cross()).unwrap();
        assert_eq!(c.value, int(0));
        // tie between both vertices; the lexicographically smaller wins
        assert_eq!(c.argpoint, SimplexPoint::vertex(2, 1));
    }

    #[test]
    fn max_examples() {
        let r = max_over_simplex(&example()).unwrap();
        assert_eq!((r.value, r.argpoint), (int(4), SimplexPoint::vertex(2, 0)));
        assert_eq!(max_over_simplex(&QuadraticForm::simplex_square(2)).unwrap().value, int(1));
        let c = max_over_simplex(&cross()).unwrap();
        assert_eq!((c.value, c.argpoint), (ratio(1, 4), SimplexPoint::barycenter(2)));
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive_on_simplex(&example()).unwrap());
        assert!(!is_positive_on_simplex(&cross()).unwrap());
        let neg = QuadraticForm::from_rows(&[[-1, 0], [0, -1]]).unwrap();
        assert!(!is_positive_on_simplex(&neg).unwrap());
    }

    #[test]
    fn sup_ratio_floor_examples() {
        let f = example();
        assert_eq!(sup_ratio_floor(&f.associated(), &f).unwrap(), BigInt::from(4));
        assert_eq!(sup_ratio_floor(&f, &f).unwrap(), BigInt::from(1));
        let id = QuadraticForm::identity(2);
        assert_eq!(sup_ratio_floor(&id.associated(), &id).unwrap(), BigInt::from(2));
    }

    #[test]
    fn sup_ratio_floor_rejects_nonpositive_denominator() {
        let err = sup_ratio_floor(&example(), &cross()).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
    }

    #[test]
    fn sup_ratio_floor_with_negative_numerator() {
        let neg = QuadraticForm::from_rows(&[[-3, 0], [0, -1]]).unwrap();
        // sup of −(3t² + s²)/(t² + s²) is −1 at (0, 1)
        assert_eq!(sup_ratio_floor(&neg, &QuadraticForm::identity(2)).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn sup_ratio_exact_examples() {
        let cap = BigInt::from(10).pow(20);
        let f = example();
        assert_eq!(sup_ratio_exact(&f.associated(), &f, &cap).unwrap(), Some(ratio(9, 2)));
        assert_eq!(sup_ratio_exact(&f, &f, &cap).unwrap(), Some(int(1)));
        let id = QuadraticForm::identity(3);
        assert_eq!(sup_ratio_exact(&id.associated(), &id, &cap).unwrap(), Some(int(3)));
    }

    #[test]
    fn sup_ratio_exact_gives_up_on_irrational() {
        // sup of (t² + 2ts)/(t² + s²) on the segment is (1 + √5)/2.
        let num = QuadraticForm::from_rows(&[[1, 1], [1, 0]]).unwrap();
        let got = sup_ratio_exact(&num, &QuadraticForm::identity(2), &BigInt::from(1_000_000)).unwrap();
        assert_eq!(got, None);
        assert_eq!(sup_ratio_floor(&num, &QuadraticForm::identity(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn too_many_variables() {
        let q = QuadraticForm::identity(17);
        assert_eq!(min_over_simplex(&q), Err(Error::TooManyVariables { n: 17, max: 16 }));
    }

    #[test]
    fn single_variable() {
        let q = QuadraticForm::from_rows(&[[5]]).unwrap();
        let r = min_over_simplex(&q).unwrap();
        assert_eq!((r.value, r.candidates_examined), (int(5), 1));
    }
}
