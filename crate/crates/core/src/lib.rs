//! Exact upper bounds on the Pólya exponent of quadratic forms.
//!
//! The Pólya exponent `μ(f)` of a form `f` is the least `m` such that
//! `(x₁ + ⋯ + xₙ)^m · f` has every coefficient of its degree strictly
//! positive. For a quadratic form `f = Σ a_ij x_i x_j` that is positive on the
//! standard simplex `Δₙ` this crate computes, with exact rational arithmetic:
//!
//! - the associated-form bound `sup_Δ ⌊f̂/f⌋ − 1` ([`bounds::bound_new`]),
//!   where `f̂ = ½ Σ (a_ii + a_jj) x_i x_j`;
//! - the diagonal bound `⌊max_i a_ii / min_Δ f⌋ − 1` ([`bounds::bound_corollary`]);
//! - the entrywise bound `⌊max_ij a_ij / min_Δ f⌋ − 1` ([`bounds::bound_klp`]);
//! - the exponent itself, by direct expansion ([`bounds::exact_polya_exponent`]);
//! - the coefficient identity behind the first bound ([`bounds::check_identity`]).
//!
//! Minima, maxima and ratio suprema over `Δₙ` come from exact KKT face
//! enumeration in [`simplex_opt`]. No floating point is used anywhere on the
//! computation path.
//!
//! ```
//! use polya_bounds::{bounds, forms::QuadraticForm};
//!
//! let f = QuadraticForm::from_rows(&[[4, -1], [-1, 1]]).unwrap();
//! assert_eq!(bounds::bound_new(&f).unwrap(), 3.into());
//! assert_eq!(bounds::bound_klp(&f).unwrap(), 8.into());
//! ```

#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod cli;
mod error;
pub mod forms;
mod linsolve;
pub mod rational;
pub mod simplex_opt;

pub use error::{Error, Result};
pub use rational::Rational;
