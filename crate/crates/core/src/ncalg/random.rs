//! Seeded random expressions for property checks and the identity suites.

use rand::Rng;

use super::expr::Expression;
use super::generator::{Generator, Word};
use super::scalar::Scalar;

/// Shape of random expressions.
#[derive(Clone, Debug)]
pub struct ExprShape {
    pub generators: Vec<Generator>,
    pub max_degree: usize,
    pub max_terms: usize,
    /// Coefficients are drawn as `n/d` with `|n| <= coeff_bound`, `1 <= d <= coeff_bound`.
    pub coeff_bound: i64,
}

impl ExprShape {
    pub fn new(generators: Vec<Generator>, max_degree: usize, max_terms: usize) -> Self {
        ExprShape { generators, max_degree, max_terms, coeff_bound: 3 }
    }
}

pub fn random_scalar<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-bound..=bound);
    }
    let d = rng.gen_range(1..=bound.max(1));
    Scalar::ratio(n, d)
}

pub fn random_word<R: Rng>(rng: &mut R, gens: &[Generator], max_degree: usize) -> Word {
    let len = rng.gen_range(0..=max_degree);
    Word::from((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect::<Vec<_>>())
}

/// A random expression with between one and `max_terms` terms. The result can
/// still be zero if drawn terms cancel.
pub fn random_expression<R: Rng>(rng: &mut R, shape: &ExprShape) -> Expression {
    let n = rng.gen_range(1..=shape.max_terms.max(1));
    let mut e = Expression::zero();
    for _ in 0..n {
        let w = random_word(rng, &shape.generators, shape.max_degree);
        e.add_term(w, random_scalar(rng, shape.coeff_bound));
    }
    e
}
