//! Sample values: `f64`, exact rationals, and exact quadratic surds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring of sample values used by time series.
pub trait Value: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// True when arithmetic is exact, so identities hold with zero residual.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    /// `√q` if representable.
    fn sqrt_rational(q: &BigRational) -> Option<Self>;

    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;

    fn vanishes(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }
}

impl Value for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        (!q.is_negative()).then(|| rational_to_f64(q).sqrt())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Value for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        let s = Surd::sqrt(q)?;
        s.irr.is_zero().then_some(s.rat)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        self.numer().is_zero()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    ToPrimitive::to_f64(q).unwrap_or_else(|| if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// `rat + irr·√radicand` with a squarefree radicand.
///
/// Values with different radicands cannot be combined; every value in a
/// computation must share one radicand (rationals combine with anything).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    rat: BigRational,
    irr: BigRational,
    /// 1 exactly when `irr` is zero.
    radicand: u64,
}

/// Largest `p·q` for which `√(p/q)` is factored.
const FACTOR_LIMIT: u64 = 1_000_000_000_000;

impl Surd {
    pub fn rational(q: BigRational) -> Self {
        Surd { rat: q, irr: Zero::zero(), radicand: 1 }
    }

    /// `rat + irr·√radicand`; `None` unless the radicand is squarefree.
    pub fn new(rat: BigRational, irr: BigRational, radicand: u64) -> Option<Self> {
        if radicand == 0 || squarefree_split(radicand).0 != 1 {
            return None;
        }
        Some(Surd::canonical(rat, irr, radicand))
    }

    fn canonical(rat: BigRational, irr: BigRational, radicand: u64) -> Self {
        if irr.is_zero() || radicand == 1 {
            let rat = if radicand == 1 { rat + irr } else { rat };
            Surd { rat, irr: Zero::zero(), radicand: 1 }
        } else {
            Surd { rat, irr, radicand }
        }
    }

    /// Exact `√q` for `q ≥ 0` with `numer·denom ≤ 10¹²`.
    pub fn sqrt(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Surd::rational(Zero::zero()));
        }
        // √(p/r) = √(p·r) / r
        let n = (q.numer() * q.denom()).to_u64().filter(|&n| n <= FACTOR_LIMIT)?;
        let (root, radicand) = squarefree_split(n);
        let coeff = BigRational::new(BigInt::from(root), q.denom().clone());
        Some(Surd::canonical(Zero::zero(), coeff, radicand))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    fn join(&self, o: &Surd) -> u64 {
        match (self.radicand, o.radicand) {
            (1, m) | (m, 1) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("cannot combine surds with radicands {a} and {b}"),
        }
    }
}

/// `n = root² · radicand` with `radicand` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let (mut root, mut rad) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            rad *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (root, rad * n)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let coeff = |f: &mut fmt::Formatter<'_>, c: &BigRational| {
            if c.is_one() {
                write!(f, "sqrt({})", self.radicand)
            } else if (-c).is_one() {
                write!(f, "-sqrt({})", self.radicand)
            } else {
                write!(f, "{c}*sqrt({})", self.radicand)
            }
        };
        if self.rat.is_zero() {
            coeff(f, &self.irr)
        } else if self.irr.is_negative() {
            write!(f, "{} - ", self.rat)?;
            coeff(f, &-&self.irr)
        } else {
            write!(f, "{} + ", self.rat)?;
            coeff(f, &self.irr)
        }
    }
}

impl Value for Surd {
    const EXACT: bool = true;

    fn zero() -> Self {
        Surd::rational(Zero::zero())
    }
    fn one() -> Self {
        Surd::rational(One::one())
    }
    fn from_rational(q: &BigRational) -> Self {
        Surd::rational(q.clone())
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        Surd::sqrt(q)
    }
    fn plus(&self, o: &Self) -> Self {
        let m = self.join(o);
        Surd::canonical(&self.rat + &o.rat, &self.irr + &o.irr, m)
    }
    fn minus(&self, o: &Self) -> Self {
        let m = self.join(o);
        Surd::canonical(&self.rat - &o.rat, &self.irr - &o.irr, m)
    }
    fn times(&self, o: &Self) -> Self {
        let m = self.join(o);
        let mb = BigRational::from_integer(m.into());
        let rat = &self.rat * &o.rat + &self.irr * &o.irr * mb;
        let irr = &self.rat * &o.irr + &self.irr * &o.rat;
        Surd::canonical(rat, irr, m)
    }
    fn negate(&self) -> Self {
        Surd { rat: -&self.rat, irr: -&self.irr, radicand: self.radicand }
    }
    fn vanishes(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rat) + rational_to_f64(&self.irr) * (self.radicand as f64).sqrt()
    }
}

/// Parse an exact rational: `p/q`, a decimal such as `-1.25`, or scientific
/// notation such as `3e-2`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(all);
    if shift >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if neg { -q } else { q })
}
