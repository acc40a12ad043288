//! Homogeneous polynomials with exact rational coefficients.
//!
//! [`SparseForm`] stores a form of fixed degree as a map from exponent
//! vectors to nonzero coefficients. [`QuadraticForm`] is the dense symmetric
//! matrix view of a degree-2 form, `f = Σ_{i,j} a_ij x_i x_j`, so an
//! off-diagonal entry `a_ij` contributes `2·a_ij` to the monomial `x_i x_j`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// Exponents `(β₁, …, βₙ)` of a monomial `x^β`.
///
/// Ordered lexicographically, which fixes the iteration order of
/// [`SparseForm`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|β| = β₁ + ⋯ + βₙ`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every exponent vector of length `n` and total degree `d`, in
    /// lexicographic order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
        fn fill(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(ExponentVector(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                fill(pos + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(ExponentVector(Vec::new()));
            }
            return out;
        }
        fill(0, d, &mut vec![0; n], &mut out);
        out
    }

    fn bumped(&self, i: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e[i] += 1;
        ExponentVector(e)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Multinomial coefficient `d! / (α₁! ⋯ αₙ!)`, the coefficient of `x^α` in
/// `(x₁ + ⋯ + xₙ)^d`.
pub fn multinomial(d: u32, alpha: &ExponentVector) -> Result<BigUint> {
    let total = alpha.total_degree();
    if total != d {
        return Err(Error::DegreeMismatch { expected: d, found: total });
    }
    let mut acc = BigUint::one();
    let mut partial = 0u32;
    for &a in alpha.entries() {
        partial += a;
        acc *= binomial(BigUint::from(partial), BigUint::from(a));
    }
    Ok(acc)
}

/// A homogeneous polynomial of fixed degree in `n` variables.
///
/// Zero coefficients are never stored: an absent monomial has coefficient 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseForm {
    n: usize,
    degree: u32,
    coefficients: BTreeMap<ExponentVector, Rational>,
}

impl SparseForm {
    pub fn zero(n: usize, degree: u32) -> Self {
        SparseForm { n, degree, coefficients: BTreeMap::new() }
    }

    /// Builds a form from `(exponent, coefficient)` pairs. Repeated exponents
    /// are summed and zero results dropped.
    pub fn from_terms<I>(n: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut form = SparseForm::zero(n, degree);
        for (beta, c) in terms {
            if beta.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: beta.len() });
            }
            if beta.total_degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: beta.total_degree() });
            }
            form.add_term(beta, c);
        }
        Ok(form)
    }

    /// `(x₁ + ⋯ + xₙ)^d`.
    pub fn simplex_power(n: usize, d: u32) -> Self {
        let mut one = SparseForm::zero(n, 0);
        one.add_term(ExponentVector::zeros(n), Rational::one());
        one.expand(d)
    }

    fn add_term(&mut self, beta: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coefficients.entry(beta) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.coefficients.iter()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `[x^α] g`, zero if absent.
    pub fn coefficient(&self, alpha: &ExponentVector) -> Result<Rational> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: alpha.len() });
        }
        if alpha.total_degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: alpha.total_degree() });
        }
        Ok(self.coefficients.get(alpha).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn eval(&self, t: &SimplexPoint) -> Result<Rational> {
        self.eval_at(t.coords())
    }

    /// Evaluates at an arbitrary rational vector.
    pub fn eval_at(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut total = Rational::zero();
        for (beta, c) in &self.coefficients {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(beta.entries()) {
                if e > 0 {
                    term *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// `(x₁ + ⋯ + xₙ) · g`.
    pub fn multiply_by_simplex_sum(&self) -> SparseForm {
        let mut out = SparseForm::zero(self.n, self.degree + 1);
        for (beta, c) in &self.coefficients {
            for i in 0..self.n {
                out.add_term(beta.bumped(i), c.clone());
            }
        }
        out
    }

    /// `(x₁ + ⋯ + xₙ)^m · g`, by `m` successive single multiplications.
    pub fn expand(&self, m: u32) -> SparseForm {
        let mut g = self.clone();
        for _ in 0..m {
            g = g.multiply_by_simplex_sum();
        }
        g
    }

    /// Number of monomials of this degree, `C(ℓ + n − 1, n − 1)`.
    pub fn monomial_count(&self) -> BigUint {
        monomial_count(self.n, self.degree)
    }

    /// True iff every monomial of the form's degree, including the absent
    /// ones, has a coefficient `> 0`.
    pub fn strictly_positive_coefficients(&self) -> bool {
        BigUint::from(self.coefficients.len()) == self.monomial_count()
            && self.coefficients.values().all(|c| c.is_positive())
    }

    /// Sum of two forms of the same shape.
    pub fn checked_add(&self, other: &SparseForm) -> Result<SparseForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (beta, c) in &other.coefficients {
            out.add_term(beta.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> SparseForm {
        let mut out = SparseForm::zero(self.n, self.degree);
        for (beta, v) in &self.coefficients {
            out.add_term(beta.clone(), v * c);
        }
        out
    }
}

pub fn monomial_count(n: usize, degree: u32) -> BigUint {
    if n == 0 {
        return if degree == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(BigUint::from(degree as usize + n - 1), BigUint::from(n - 1))
}

/// Graded, highest power of `x1` first: `4*x1^2 - 2*x1*x2 + x2^2`.
impl fmt::Display for SparseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (k, (beta, c)) in self.coefficients.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = beta
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A point `t` of the standard simplex: `tᵢ ≥ 0` and `Σ tᵢ = 1` exactly.
///
/// Ordered lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexPoint(Vec<Rational>);

impl SimplexPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NoVariables);
        }
        if let Some(i) = coords.iter().position(|c| c.is_negative()) {
            return Err(Error::NotOnSimplex(format!(
                "coordinate {} is {}",
                i + 1,
                format_rational(&coords[i])
            )));
        }
        let sum: Rational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::NotOnSimplex(format!("coordinates sum to {}", format_rational(&sum))));
        }
        Ok(SimplexPoint(coords))
    }

    /// The vertex `eᵢ` (0-based `i`).
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        SimplexPoint(c)
    }

    pub fn barycenter(n: usize) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(n));
        SimplexPoint(vec![w; n])
    }

    /// The lattice point `α / d` for `|α| = d > 0`.
    pub fn from_lattice(alpha: &ExponentVector, d: u32) -> Result<Self> {
        if d == 0 || alpha.total_degree() != d {
            return Err(Error::DegreeMismatch { expected: d, found: alpha.total_degree() });
        }
        let d = BigInt::from(d);
        Self::new(alpha.entries().iter().map(|&a| Rational::new(BigInt::from(a), d.clone())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Rational>) -> Self {
        debug_assert!(coords.iter().all(|c| !c.is_negative()));
        debug_assert!(coords.iter().sum::<Rational>().is_one());
        SimplexPoint(coords)
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `f = Σ_{i,j} a_ij x_i x_j` with a symmetric rational matrix `(a_ij)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    n: usize,
    entries: Vec<Rational>,
}

impl QuadraticForm {
    /// Validates squareness and exact symmetry.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NoVariables);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row: row + 1, len: r.len(), n });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(QuadraticForm { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Integer matrix convenience constructor.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
                .collect(),
        )
    }

    /// `x₁² + ⋯ + xₙ²`.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        QuadraticForm { n, entries }
    }

    /// `(x₁ + ⋯ + xₙ)²`, the all-ones matrix.
    pub fn simplex_square(n: usize) -> Self {
        QuadraticForm { n, entries: vec![Rational::one(); n * n] }
    }

    /// Builds `f(x) = Σ a_ij x_i x_j` with `a_ij = entry(i, j)`; the caller
    /// must supply a symmetric function.
    pub(crate) fn from_fn(n: usize, entry: impl Fn(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(entry(i, j));
            }
        }
        let q = QuadraticForm { n, entries };
        debug_assert!((0..n).all(|i| (0..n).all(|j| q.entry(i, j) == q.entry(j, i))));
        q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_ij`, 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n).map(|i| self.entry(i, i).clone()).collect()
    }

    /// `M(f) = max_i a_ii`.
    pub fn diag_max(&self) -> Rational {
        self.diagonal().into_iter().max().expect("n >= 1")
    }

    /// `max_{i,j} a_ij`.
    pub fn entry_max(&self) -> Rational {
        self.entries.iter().max().cloned().expect("n >= 1")
    }

    pub fn eval(&self, t: &SimplexPoint) -> Result<Rational> {
        self.eval_at(t.coords())
    }

    /// `xᵀ A x` at an arbitrary rational vector.
    pub fn eval_at(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut total = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    row += self.entry(i, j) * xj;
                }
            }
            total += row * xi;
        }
        Ok(total)
    }

    /// Canonical sparse form: `a_ii` on `x_i²` and `2·a_ij` on `x_i x_j`, `i < j`.
    pub fn to_sparse(&self) -> SparseForm {
        let n = self.n;
        let two = Rational::from_integer(BigInt::from(2));
        let mut terms = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            terms.push((ExponentVector(e), self.entry(i, i).clone()));
            for j in i + 1..n {
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = 1;
                terms.push((ExponentVector(e), self.entry(i, j) * &two));
            }
        }
        SparseForm::from_terms(n, 2, terms).expect("well-formed quadratic terms")
    }

    /// The associated form `f̂ = ½ Σ (a_ii + a_jj) x_i x_j`, i.e. the matrix
    /// with entries `(a_ii + a_jj) / 2`. It depends only on the diagonal.
    pub fn associated(&self) -> QuadraticForm {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        QuadraticForm::from_fn(self.n, |i, j| (self.entry(i, i) + self.entry(j, j)) * &half)
    }

    pub fn scaled(&self, c: &Rational) -> QuadraticForm {
        QuadraticForm { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// `self − k·other`.
    pub fn minus_multiple(&self, k: &Rational, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(QuadraticForm {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - k * b).collect(),
        })
    }
}

/// Same as [`QuadraticForm::to_sparse`].
pub fn quadratic_to_form(q: &QuadraticForm) -> SparseForm {
    q.to_sparse()
}

/// Same as [`QuadraticForm::associated`].
pub fn associated_form(q: &QuadraticForm) -> QuadraticForm {
    q.associated()
}
