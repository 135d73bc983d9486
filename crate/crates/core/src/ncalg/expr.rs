//! Elements of the free associative algebra: finite sums of scalar-weighted words.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::generator::{Generator, Word};
use super::scalar::Scalar;

/// A finite formal sum `Σ c_w · w`. Like words are always collected and no
/// stored coefficient is zero, so the empty map is the zero element.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Expression {
    terms: BTreeMap<Word, Scalar>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression::default()
    }

    pub fn one() -> Self {
        Expression::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Expression::term(Word::unit(), c)
    }

    pub fn int(n: i64) -> Self {
        Expression::scalar(Scalar::from_int(n))
    }

    pub fn gen(g: Generator) -> Self {
        Expression::term(Word::single(g), Scalar::one())
    }

    pub fn word(w: Word) -> Self {
        Expression::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Expression { terms }
    }

    /// The shift operator `J` as an expression.
    pub fn j() -> Self {
        Expression::gen(Generator::j())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct words carrying a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value if the expression has no non-unit words.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    /// Every generator mentioned, in the total order.
    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|w| w.gens().iter().copied()).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Expression {
        if c.is_zero() {
            return Expression::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Expression { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Expression {
        let mut acc = Expression::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Expression) -> Expression {
        &(self * other) - &(other * self)
    }

    /// The formal overdot: the derivation raising the dot order of every
    /// ordinary generator by one and killing `J` and scalars.
    pub fn dot_derivative(&self) -> Expression {
        let mut out = Expression::zero();
        for (w, c) in &self.terms {
            let gens = w.gens();
            for (p, g) in gens.iter().enumerate() {
                if g.is_shift() {
                    continue;
                }
                let mut v = gens.to_vec();
                v[p] = g.dotted(1);
                out.add_term(Word::from(v), c.clone());
            }
        }
        out
    }

    /// Replace every occurrence of `g` with `replacement`, expanding multilinearly.
    pub fn substitute(&self, g: Generator, replacement: &Expression) -> Expression {
        self.substitute_with(|h| (h == g).then(|| replacement.clone()))
    }

    /// Generalised substitution: `f` returns the replacement for a generator,
    /// or `None` to keep it.
    pub fn substitute_with<F>(&self, f: F) -> Expression
    where
        F: Fn(Generator) -> Option<Expression>,
    {
        let mut out = Expression::zero();
        for (w, c) in &self.terms {
            let mut acc = Expression::scalar(c.clone());
            for &h in w.gens() {
                match f(h) {
                    Some(rep) => acc = &acc * &rep,
                    None => acc = acc.right_mul_gen(h),
                }
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    fn right_mul_gen(self, g: Generator) -> Expression {
        Expression {
            terms: self
                .terms
                .into_iter()
                .map(|(w, c)| {
                    let mut v = w.into_vec();
                    v.push(g);
                    (Word::from(v), c)
                })
                .collect(),
        }
    }
}

impl From<Generator> for Expression {
    fn from(g: Generator) -> Self {
        Expression::gen(g)
    }
}

impl From<Scalar> for Expression {
    fn from(c: Scalar) -> Self {
        Expression::scalar(c)
    }
}

impl AddAssign<&Expression> for Expression {
    fn add_assign(&mut self, rhs: &Expression) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Expression> for Expression {
    fn sub_assign(&mut self, rhs: &Expression) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add for &Expression {
    type Output = Expression;
    fn add(self, rhs: &Expression) -> Expression {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big += small;
        big
    }
}

impl Sub for &Expression {
    type Output = Expression;
    fn sub(self, rhs: &Expression) -> Expression {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Expression {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        let mut out = Expression::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Expression {
            type Output = Expression;
            fn $m(self, rhs: Expression) -> Expression { (&self).$m(&rhs) }
        }
        impl $tr<&Expression> for Expression {
            type Output = Expression;
            fn $m(self, rhs: &Expression) -> Expression { (&self).$m(rhs) }
        }
        impl $tr<Expression> for &Expression {
            type Output = Expression;
            fn $m(self, rhs: Expression) -> Expression { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        -&self
    }
}

impl Mul<&Expression> for &Scalar {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        rhs.scale(self)
    }
}

impl Mul<Expression> for Scalar {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        rhs.scale(&self)
    }
}

impl std::iter::Sum for Expression {
    fn sum<I: Iterator<Item = Expression>>(iter: I) -> Self {
        let mut acc = Expression::zero();
        for e in iter {
            acc += &e;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str) -> Expression {
        Expression::gen(Generator::new(name))
    }

    #[test]
    fn additive_identity_and_inverse() {
        let x = g("X");
        assert_eq!(&x + &Expression::zero(), x);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn like_terms_collect() {
        let xy = &g("X") * &g("Y");
        let s = &xy.scale(&Scalar::from_int(2)) + &xy.scale(&Scalar::from_int(3));
        assert_eq!(s, xy.scale(&Scalar::from_int(5)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn product_is_noncommutative_and_distributive() {
        let (x, y, z) = (g("X"), g("Y"), g("Z"));
        assert_ne!(&x * &y, &y * &x);
        assert_eq!(&Expression::one() * &x, x);
        assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    }

    #[test]
    fn commutator_basics() {
        let f = &g("F") + &(&g("G") * &g("H"));
        assert!(f.commutator(&f).is_zero());
    }

    #[test]
    fn dot_derivative_examples() {
        let x1 = Generator::indexed("X", 1);
        let x2 = Generator::indexed("X", 2);
        assert_eq!(Expression::gen(x1).dot_derivative(), Expression::gen(x1.dotted(1)));
        let p = &Expression::gen(x1.dotted(1)) * &Expression::gen(x2.dotted(1));
        let expected = &(&Expression::gen(x1.dotted(2)) * &Expression::gen(x2.dotted(1)))
            + &(&Expression::gen(x1.dotted(1)) * &Expression::gen(x2.dotted(2)));
        assert_eq!(p.dot_derivative(), expected);
        assert!(Expression::j().dot_derivative().is_zero());
        assert!(Expression::one().dot_derivative().is_zero());
    }

    #[test]
    fn substitute_examples() {
        let x = g("X");
        let xjx = &(&x * &Expression::j()) * &x;
        assert_eq!(xjx.substitute(Generator::j(), &Expression::one()), &x * &x);
        let f = &(&g("F") * &g("G")) + &g("H");
        assert_eq!(f.substitute(Generator::new("G"), &g("G")), f);
        assert_eq!(f.substitute(Generator::new("G"), &Expression::zero()), g("H"));
    }
}
