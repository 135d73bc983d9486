//! Exact coefficients: reduced quotients of Gaussian-rational polynomials in
//! commuting parameters such as `tau`, `hbar`, `dt`, `h` and `k`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gaussian::Gaussian;
use super::poly::Poly;
use super::symbol::Symbol;

/// A rational function `num / den`.
///
/// Invariants: `den` is nonzero and monic, `gcd(num, den) = 1`, and the zero
/// scalar has `den = 1`. Together these make structural equality coincide
/// with mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: Poly::constant(Gaussian::from_int(n)), den: Poly::one() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { num: Poly::constant(Gaussian::from_rational(q)), den: Poly::one() }
    }

    /// `n / d`; panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn gaussian(g: Gaussian) -> Self {
        Scalar { num: Poly::constant(g), den: Poly::one() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::gaussian(Gaussian::i())
    }

    /// A commuting parameter symbol.
    pub fn param(name: &str) -> Self {
        Scalar { num: Poly::var(Symbol::new(name)), den: Poly::one() }
    }

    pub fn from_polys(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            if c.is_one() {
                return Scalar { num, den };
            }
            let inv = c.inv().expect("nonzero denominator");
            return Scalar { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let (_, lc) = den.leading().expect("nonzero denominator");
        let inv = lc.inv().expect("nonzero leading coefficient");
        Scalar { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Gaussian-rational value when no parameters are involved.
    pub fn as_constant(&self) -> Option<Gaussian> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Rational value when the scalar is a real constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().filter(Gaussian::is_real).map(|g| g.re)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if rhs.den.is_one() {
            if let Some(c) = rhs.num.as_constant() {
                let inv = c.inv()?;
                return Some(Scalar { num: self.num.scale(&inv), den: self.den.clone() });
            }
        }
        Some(Scalar::reduce(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    pub fn pow(&self, e: u32) -> Self {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// True when the printed form begins with a minus sign.
    pub fn is_negative_leading(&self) -> bool {
        self.den.is_one() && self.num.leading().is_some_and(|(_, c)| c.is_negative_leading())
    }

    /// Single-term numerator over a unit denominator; prints without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.den.is_one() && self.num.len() <= 1
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&rhs.num), den: Poly::one() };
            }
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        Scalar::reduce(self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)), self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { num: self.num.mul(&rhs.num), den: Poly::one() };
        }
        Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() == 1 && !self.num.leading().unwrap().1.is_negative_leading() {
            write!(f, "{}/", self.num)?;
        } else {
            write!(f, "({})/", self.num)?;
        }
        if self.den.len() == 1 && self.den.leading().unwrap().0.factors().len() == 1 {
            let (m, _) = self.den.leading().unwrap();
            if m.factors()[0].1 == 1 {
                return write!(f, "{}", self.den);
            }
        }
        write!(f, "({})", self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_representation_is_canonical() {
        let tau = Scalar::param("tau");
        let a = &(&tau * &tau) / &(&tau * &Scalar::from_int(2));
        let b = &tau / &Scalar::from_int(2);
        assert_eq!(a, b);
        let x = &(&tau + &Scalar::one()) / &tau;
        let y = &Scalar::one() + &(&Scalar::one() / &tau);
        assert_eq!(x, y);
    }

    #[test]
    fn denominator_normalised_to_monic() {
        let hbar = Scalar::param("hbar");
        let ih = &Scalar::i() * &hbar;
        let inv = ih.inv().unwrap();
        // 1/(i hbar) = -i/hbar
        assert_eq!(inv, &(-&Scalar::i()) / &hbar);
        assert!(inv.denom().leading().unwrap().1.is_one());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn cancellation_to_zero() {
        let dt = Scalar::param("dt");
        let z = &(&Scalar::one() / &dt) - &(&Scalar::one() / &dt);
        assert!(z.is_zero());
        assert_eq!(z, Scalar::zero());
    }

    #[test]
    fn rational_function_gcd_cancels() {
        let t = Scalar::param("t");
        let one = Scalar::one();
        let num = &(&t * &t) - &one;
        let den = &t - &one;
        assert_eq!(&num / &den, &t + &one);
    }
}
