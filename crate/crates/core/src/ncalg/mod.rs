//! Exact arithmetic in free non-commutative algebras and their quotients.
//!
//! [`Expression`] is the universal value: a finite sum of [`Scalar`]-weighted
//! [`Word`]s. Quotients are described by a [`RelationSet`], whose
//! `normalize` computes the unique normal form of an expression.

mod expr;
mod gaussian;
mod generator;
mod poly;
pub mod random;
mod relations;
mod scalar;
mod symbol;
mod syntax;

pub use expr::Expression;
pub use gaussian::Gaussian;
pub use generator::{Generator, Word};
pub use poly::{Monomial, Poly};
pub use relations::{Mode, RelationSet, RelationSetBuilder};
pub use scalar::Scalar;
pub use symbol::Symbol;
pub use syntax::{parse, parse_scalar};

use crate::error::Result;

pub fn expr_add(a: &Expression, b: &Expression) -> Expression {
    a + b
}

pub fn expr_mul(a: &Expression, b: &Expression) -> Expression {
    a * b
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &Expression, b: &Expression) -> Expression {
    a.commutator(b)
}

pub fn normalize(e: &Expression, r: &RelationSet) -> Result<Expression> {
    r.normalize(e)
}

pub fn dot_derivative(e: &Expression) -> Expression {
    e.dot_derivative()
}

pub fn substitute(e: &Expression, g: Generator, replacement: &Expression) -> Expression {
    e.substitute(g, replacement)
}

pub fn is_zero(e: &Expression, r: &RelationSet) -> Result<bool> {
    r.is_zero(e)
}
