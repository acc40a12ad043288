//! Upper bounds on the Pólya exponent and the exact exponent itself.
//!
//! For `f = Σ a_ij x_i x_j` positive on `Δₙ`, with associated form
//! `f̂ = ½ Σ (a_ii + a_jj) x_i x_j`:
//!
//! ```text
//!     μ(f) ≤ sup_Δ ⌊f̂/f⌋ − 1                 (bound_new)
//!          ≤ ⌊max_i a_ii  / min_Δ f⌋ − 1      (bound_corollary)
//!          ≤ ⌊max_ij a_ij / min_Δ f⌋ − 1      (bound_klp)
//! ```
//!
//! The first bound rests on a closed form for the lattice coefficients of
//! `(x₁ + ⋯ + xₙ)^m f`: for `t ∈ Δₙ` with `α = t·(m+2)` integral,
//!
//! ```text
//!     [x^α] (x₁ + ⋯ + xₙ)^m f = C(m+2; α) / (m+1) · ((m+2)·f(t) − f̂(t)),
//! ```
//!
//! checked exhaustively by [`check_identity`].

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::{multinomial, ExponentVector, QuadraticForm, SimplexPoint, SparseForm};
use crate::rational::{floor, Rational};
use crate::simplex_opt::{max_over_simplex, require_positive, sup_ratio_exact, sup_ratio_floor};

/// `sup_Δ ⌊f̂/f⌋ − 1`. Never below 0, since `f̂ = f` at the vertices.
pub fn bound_new(q: &QuadraticForm) -> Result<BigInt> {
    Ok(sup_ratio_floor(&q.associated(), q)? - BigInt::one())
}

/// `⌊max_i a_ii / min_Δ f⌋ − 1`.
pub fn bound_corollary(q: &QuadraticForm) -> Result<BigInt> {
    let min = require_positive(q)?;
    Ok(floor(&(q.diag_max() / min.value)) - BigInt::one())
}

/// `⌊max_{i,j} a_ij / min_Δ f⌋ − 1`.
pub fn bound_klp(q: &QuadraticForm) -> Result<BigInt> {
    let min = require_positive(q)?;
    Ok(floor(&(q.entry_max() / min.value)) - BigInt::one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentOutcome {
    /// Least `m` with strictly positive coefficients.
    Found(u32),
    /// `f > 0` on the simplex, but no `m ≤ cap` worked.
    CapExceeded(u32),
    /// `min_Δ f ≤ 0`, so no `m` exists.
    CertifiedInfinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentResult {
    pub outcome: ExponentOutcome,
    pub min_f: Rational,
    pub argmin: SimplexPoint,
    /// `(x₁ + ⋯ + xₙ)^m f` for `Found(m)`, when retention was requested.
    pub witness: Option<SparseForm>,
}

/// The Pólya exponent by direct search over `m = 0..=cap`.
///
/// A nonpositive minimum over the simplex short-circuits to
/// [`ExponentOutcome::CertifiedInfinite`]; otherwise one rolling expansion is
/// multiplied by `x₁ + ⋯ + xₙ` per step.
pub fn exact_polya_exponent(q: &QuadraticForm, cap: u32) -> Result<ExponentResult> {
    search_exponent(q, cap, false)
}

/// [`exact_polya_exponent`], keeping the expanded form for `Found(m)`.
pub fn exact_polya_exponent_retaining(q: &QuadraticForm, cap: u32) -> Result<ExponentResult> {
    search_exponent(q, cap, true)
}

fn search_exponent(q: &QuadraticForm, cap: u32, retain: bool) -> Result<ExponentResult> {
    let min = crate::simplex_opt::min_over_simplex(q)?;
    let mut result = ExponentResult {
        outcome: ExponentOutcome::CertifiedInfinite,
        min_f: min.value,
        argmin: min.argpoint,
        witness: None,
    };
    if !result.min_f.is_positive() {
        return Ok(result);
    }
    let mut g = q.to_sparse();
    for m in 0..=cap {
        if m > 0 {
            g = g.multiply_by_simplex_sum();
        }
        if g.strictly_positive_coefficients() {
            result.outcome = ExponentOutcome::Found(m);
            if retain {
                result.witness = Some(g);
            }
            return Ok(result);
        }
    }
    result.outcome = ExponentOutcome::CapExceeded(cap);
    Ok(result)
}

/// `10 × (max(bound_new, 0) + 2)`, or `None` if `q` is not positive on the
/// simplex (the search then needs no cap).
pub fn default_cap(q: &QuadraticForm) -> Result<Option<u32>> {
    match bound_new(q) {
        Ok(b) => {
            let usable = b.max(BigInt::zero());
            let cap = (usable + 2u32) * 10u32;
            Ok(Some(cap.to_u32().unwrap_or(u32::MAX)))
        }
        Err(Error::NotPositive { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn lattice_vector(t: &SimplexPoint, m: u32) -> Result<ExponentVector> {
    let d = Rational::from_integer(BigInt::from(m + 2));
    t.coords()
        .iter()
        .map(|c| {
            let v = c * &d;
            if !v.is_integer() {
                return Err(Error::NonIntegralLattice { m });
            }
            v.to_integer().to_u32().ok_or(Error::NonIntegralLattice { m })
        })
        .collect::<Result<Vec<u32>>>()
        .map(ExponentVector::new)
}

/// `C(m+2; t·(m+2)) / (m+1) · ((m+2)·f(t) − f̂(t))`.
pub fn identity_rhs(q: &QuadraticForm, t: &SimplexPoint, m: u32) -> Result<Rational> {
    if t.len() != q.n() {
        return Err(Error::DimensionMismatch { expected: q.n(), found: t.len() });
    }
    let alpha = lattice_vector(t, m)?;
    identity_rhs_parts(q, &q.associated(), t, &alpha, m)
}

fn identity_rhs_parts(
    q: &QuadraticForm,
    assoc: &QuadraticForm,
    t: &SimplexPoint,
    alpha: &ExponentVector,
    m: u32,
) -> Result<Rational> {
    let mult = Rational::from_integer(BigInt::from(multinomial(m + 2, alpha)?));
    let inner = Rational::from_integer(BigInt::from(m + 2)) * q.eval(t)? - assoc.eval(t)?;
    Ok(mult / Rational::from_integer(BigInt::from(m + 1)) * inner)
}

/// Outcome of checking the coefficient identity at one `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub m: u32,
    /// Number of exponent vectors `α` with `|α| = m + 2`.
    pub lattice_points: usize,
    pub mismatches: usize,
    /// Lattice points with `f(t) > 0` and `m > f̂(t)/f(t) − 2`, where the
    /// coefficient must be positive.
    pub threshold_checked: usize,
    pub threshold_violations: usize,
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        self.mismatches == 0 && self.threshold_violations == 0
    }
}

fn verify_against(q: &QuadraticForm, assoc: &QuadraticForm, expanded: &SparseForm, m: u32) -> IdentityVerdict {
    let d = m + 2;
    let mut v = IdentityVerdict { m, lattice_points: 0, mismatches: 0, threshold_checked: 0, threshold_violations: 0 };
    let m_rat = Rational::from_integer(BigInt::from(m));
    let two = Rational::from_integer(BigInt::from(2));
    for alpha in ExponentVector::all_of_degree(q.n(), d) {
        v.lattice_points += 1;
        let t = SimplexPoint::from_lattice(&alpha, d).expect("|α| = m + 2");
        let lhs = expanded.coefficient(&alpha).expect("degree m + 2");
        let rhs = identity_rhs_parts(q, assoc, &t, &alpha, m).expect("well-formed lattice point");
        if lhs != rhs {
            v.mismatches += 1;
        }
        let ft = q.eval(&t).expect("same dimension");
        if ft.is_positive() && m_rat > assoc.eval(&t).expect("same dimension") / ft - &two {
            v.threshold_checked += 1;
            if !lhs.is_positive() {
                v.threshold_violations += 1;
            }
        }
    }
    v
}

/// Checks the identity at every `α` with `|α| = m + 2` against the
/// expansion of `(x₁ + ⋯ + xₙ)^m f`.
pub fn verify_identity(q: &QuadraticForm, m: u32) -> IdentityVerdict {
    verify_against(q, &q.associated(), &q.to_sparse().expand(m), m)
}

/// [`verify_identity`] for `m = 0..=max_m`, sharing one rolling expansion.
pub fn verify_identity_up_to(q: &QuadraticForm, max_m: u32) -> Vec<IdentityVerdict> {
    let assoc = q.associated();
    let mut g = q.to_sparse();
    let mut out = Vec::with_capacity(max_m as usize + 1);
    for m in 0..=max_m {
        if m > 0 {
            g = g.multiply_by_simplex_sum();
        }
        out.push(verify_against(q, &assoc, &g, m));
    }
    out
}

pub fn check_identity(q: &QuadraticForm, m: u32) -> bool {
    verify_identity(q, m).holds()
}

/// All three bounds for one form plus the data they are computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Raw `sup_Δ ⌊f̂/f⌋ − 1`; can be `−1`.
    pub bound_new: BigInt,
    /// `max(bound_new, 0)`, the usable bound on `μ(f) ≥ 0`.
    pub bound_new_usable: BigInt,
    pub bound_corollary: BigInt,
    pub bound_klp: BigInt,
    pub min_f: Rational,
    pub argmin: SimplexPoint,
    /// `sup_Δ ⌊f̂/f⌋`.
    pub ratio_floor: BigInt,
    pub diag_max: Rational,
    pub entry_max: Rational,
    pub candidates_examined: usize,
}

impl BoundReport {
    pub fn is_clamped(&self) -> bool {
        self.bound_new != self.bound_new_usable
    }
}

pub fn bound_report(q: &QuadraticForm) -> Result<BoundReport> {
    let min = require_positive(q)?;
    let ratio_floor = sup_ratio_floor(&q.associated(), q)?;
    let bound_new = &ratio_floor - BigInt::one();
    let diag_max = q.diag_max();
    let entry_max = q.entry_max();
    Ok(BoundReport {
        bound_new_usable: bound_new.clone().max(BigInt::zero()),
        bound_new,
        bound_corollary: floor(&(&diag_max / &min.value)) - BigInt::one(),
        bound_klp: floor(&(&entry_max / &min.value)) - BigInt::one(),
        min_f: min.value,
        argmin: min.argpoint,
        ratio_floor,
        diag_max,
        entry_max,
        candidates_examined: min.candidates_examined,
    })
}

/// `f_κ = λ² x₁² − 2κλ x₁x₂ + x₂²`.
pub fn fkappa_form(kappa: &Rational, lambda: &Rational) -> QuadraticForm {
    let off = -(kappa * lambda);
    let l2 = lambda * lambda;
    QuadraticForm::new(vec![vec![l2, off.clone()], vec![off, Rational::one()]]).expect("symmetric 2x2")
}

/// One row of the `f_κ` comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FkappaRow {
    pub lambda: Rational,
    pub bound_new: BigInt,
    pub bound_corollary: BigInt,
    pub bound_klp: BigInt,
    /// Computed `sup_Δ f̂/f − 1`; `None` only if the exact search gave up.
    pub sup_ratio_minus_one: Option<Rational>,
    /// `(λ² + 2κλ + 1) / (2λ − 2κλ)`.
    pub sup_closed_form: Rational,
    pub sup_matches: bool,
    pub min_f: Rational,
    /// `λ²(1 − κ²) / (λ² + 2κλ + 1)`.
    pub min_closed_form: Rational,
    pub min_matches: bool,
    /// `bound_new / bound_klp`, undefined when `bound_klp = 0`.
    pub ratio: Option<Rational>,
    /// `(1 + κ) / (2λ)`.
    pub predicted_ratio: Rational,
}

/// Compares the computed bounds and extremal values of `f_κ` with their
/// closed forms, one row per `λ`. Requires `0 ≤ κ < 1 < λ`.
pub fn fkappa_report(kappa: &Rational, lambdas: &[Rational]) -> Result<Vec<FkappaRow>> {
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    if kappa.is_negative() || *kappa >= one {
        return Err(Error::OutOfRange(format!("kappa must lie in [0, 1), got {kappa}")));
    }
    if let Some(bad) = lambdas.iter().find(|l| **l <= one) {
        return Err(Error::OutOfRange(format!("lambda must exceed 1, got {bad}")));
    }
    let max_den = BigInt::from(10).pow(60);
    lambdas
        .iter()
        .map(|lambda| {
            let f = fkappa_form(kappa, lambda);
            let report = bound_report(&f)?;
            let l2 = lambda * lambda;
            let kl = kappa * lambda;
            let sup_closed_form = (&l2 + &two * &kl + &one) / (&two * lambda - &two * &kl);
            let min_closed_form = &l2 * (&one - kappa * kappa) / (&l2 + &two * &kl + &one);
            let sup_ratio_minus_one = sup_ratio_exact(&f.associated(), &f, &max_den)?.map(|s| s - &one);
            let ratio = (!report.bound_klp.is_zero()).then(|| {
                Rational::new(report.bound_new.clone(), report.bound_klp.clone())
            });
            Ok(FkappaRow {
                lambda: lambda.clone(),
                sup_matches: sup_ratio_minus_one.as_ref() == Some(&sup_closed_form),
                min_matches: report.min_f == min_closed_form,
                bound_new: report.bound_new,
                bound_corollary: report.bound_corollary,
                bound_klp: report.bound_klp,
                sup_ratio_minus_one,
                sup_closed_form,
                min_f: report.min_f,
                min_closed_form,
                ratio,
                predicted_ratio: (&one + kappa) / (&two * lambda),
            })
        })
        .collect()
}

/// Maximum of `f̂` over the simplex, for checking `max_Δ f̂ ≤ max_i a_ii`.
pub fn associated_max(q: &QuadraticForm) -> Result<Rational> {
    Ok(max_over_simplex(&q.associated())?.value)
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

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bound_new_examples() {
        assert_eq!(bound_new(&example()).unwrap(), big(3));
        for n in 1..5 {
            assert_eq!(bound_new(&QuadraticForm::simplex_square(n)).unwrap(), big(0));
        }
        assert_eq!(bound_new(&QuadraticForm::identity(2)).unwrap(), big(1));
    }

    #[test]
    fn bound_corollary_examples() {
        assert_eq!(bound_corollary(&example()).unwrap(), big(8));
        assert_eq!(bound_corollary(&QuadraticForm::simplex_square(2)).unwrap(), big(0));
        assert_eq!(bound_corollary(&QuadraticForm::identity(2)).unwrap(), big(1));
    }

    #[test]
    fn bound_klp_examples() {
        assert_eq!(bound_klp(&example()).unwrap(), big(8));
        assert_eq!(bound_klp(&fkappa_form(&int(0), &int(100))).unwrap(), big(10000));
        assert_eq!(bound_klp(&QuadraticForm::simplex_square(2)).unwrap(), big(0));
    }

    #[test]
    fn bounds_require_positivity() {
        for b in [bound_new, bound_corollary, bound_klp] {
            assert!(matches!(b(&cross()), Err(Error::NotPositive { .. })));
        }
    }

    #[test]
    fn bound_new_is_never_negative() {
        // f̂ and f agree at every vertex, so sup f̂/f ≥ 1 and the clamp is inert.
        let q = QuadraticForm::from_rows(&[[1, 2], [2, 1]]).unwrap();
        let r = bound_report(&q).unwrap();
        assert_eq!(r.ratio_floor, big(1));
        assert_eq!(r.bound_new, big(0));
        assert!(!r.is_clamped());
    }

    #[test]
    fn exponent_examples() {
        let r = exact_polya_exponent_retaining(&example(), 20).unwrap();
        assert_eq!(r.outcome, ExponentOutcome::Found(3));
        assert!(r.witness.unwrap().strictly_positive_coefficients());
        assert_eq!(exact_polya_exponent(&cross(), 20).unwrap().outcome, ExponentOutcome::CertifiedInfinite);
        for n in 1..5 {
            let r = exact_polya_exponent(&QuadraticForm::simplex_square(n), 5).unwrap();
            assert_eq!(r.outcome, ExponentOutcome::Found(0));
        }
        assert_eq!(exact_polya_exponent(&example(), 2).unwrap().outcome, ExponentOutcome::CapExceeded(2));
        assert_eq!(exact_polya_exponent(&example(), 3).unwrap().outcome, ExponentOutcome::Found(3));
    }

    #[test]
    fn default_cap_follows_bound() {
        assert_eq!(default_cap(&example()).unwrap(), Some(50));
        assert_eq!(default_cap(&cross()).unwrap(), None);
    }

    #[test]
    fn identity_rhs_examples() {
        let half = SimplexPoint::barycenter(2);
        assert_eq!(identity_rhs(&cross(), &half, 0).unwrap(), int(1));
        let x1sq = QuadraticForm::from_rows(&[[1, 0], [0, 0]]).unwrap();
        assert_eq!(identity_rhs(&x1sq, &SimplexPoint::vertex(2, 0), 0).unwrap(), int(1));
        let t = SimplexPoint::new(vec![ratio(2, 3), ratio(1, 3)]).unwrap();
        assert_eq!(identity_rhs(&example(), &t, 1).unwrap(), int(2));
    }

    #[test]
    fn identity_rhs_rejects_off_lattice() {
        let t = SimplexPoint::new(vec![ratio(2, 3), ratio(1, 3)]).unwrap();
        assert_eq!(identity_rhs(&example(), &t, 0), Err(Error::NonIntegralLattice { m: 0 }));
    }

    #[test]
    fn identity_holds_on_example_and_basis_forms() {
        for m in 0..=3 {
            assert!(check_identity(&example(), m));
        }
        let n = 3;
        for i in 0..n {
            for j in i..n {
                let q = QuadraticForm::from_fn(n, |a, b| {
                    if (a, b) == (i, j) || (a, b) == (j, i) {
                        if i == j { int(1) } else { ratio(1, 2) }
                    } else {
                        int(0)
                    }
                });
                for m in 0..5 {
                    assert!(check_identity(&q, m), "basis form ({i},{j}) at m = {m}");
                }
            }
        }
    }

    #[test]
    fn rolling_identity_matches_single_checks() {
        let q = QuadraticForm::from_rows(&[[3, -2, 1], [-2, 5, 0], [1, 0, 2]]).unwrap();
        let rolled = verify_identity_up_to(&q, 4);
        for v in &rolled {
            assert_eq!(v, &verify_identity(&q, v.m));
            assert!(v.holds());
        }
        assert_eq!(rolled[4].lattice_points, 28);
    }

    #[test]
    fn fkappa_rows() {
        let rows = fkappa_report(&int(0), &[int(100)]).unwrap();
        let r = &rows[0];
        assert_eq!((r.bound_new.clone(), r.bound_klp.clone()), (big(50), big(10000)));
        assert_eq!(r.ratio, Some(ratio(1, 200)));
        assert_eq!(r.predicted_ratio, ratio(1, 200));
        assert!(r.sup_matches && r.min_matches);

        let r = &fkappa_report(&ratio(1, 2), &[int(2)]).unwrap()[0];
        assert_eq!((r.bound_new.clone(), r.bound_klp.clone()), (big(3), big(8)));

        let r = &fkappa_report(&int(0), &[int(2)]).unwrap()[0];
        assert_eq!(r.sup_ratio_minus_one, Some(ratio(5, 4)));
        assert_eq!(r.min_f, ratio(4, 5));
        assert_eq!(r.bound_new, big(1));
    }

    #[test]
    fn fkappa_parameter_range() {
        assert!(matches!(fkappa_report(&int(1), &[int(2)]), Err(Error::OutOfRange(_))));
        assert!(matches!(fkappa_report(&ratio(-1, 2), &[int(2)]), Err(Error::OutOfRange(_))));
        assert!(matches!(fkappa_report(&int(0), &[int(1)]), Err(Error::OutOfRange(_))));
    }
}
