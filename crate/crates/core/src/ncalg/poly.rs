//! Sparse multivariate polynomials over the Gaussian rationals in commuting
//! parameter symbols, with exact division and a recursive primitive-PRS gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::gaussian::Gaussian;
use super::symbol::Symbol;

/// Power product of parameters, kept sorted by symbol with positive exponents.
///
/// Ordered lexicographically on exponent vectors with alphabetically earlier
/// symbols most significant; this is a monomial order, which the division
/// routine relies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.0.iter().find(|(v, _)| *v == s).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (Some(&&(sx, ex)), Some(&&(sy, ey))) => match sx.cmp(&sy) {
                    Ordering::Less => {
                        out.push((sx, ex));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((sy, ey));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((sx, ex + ey));
                        a.next();
                        b.next();
                    }
                },
            }
        }
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            let mut d = 0;
            if j < other.0.len() {
                match other.0[j].0.cmp(&s) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        d = other.0[j].1;
                        j += 1;
                    }
                    Ordering::Greater => {}
                }
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((s, e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    fn without(&self, s: Symbol) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| *v != s).collect())
    }

    fn pow_of(s: Symbol, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((sx, ex)), Some((sy, ey))) => match sx.cmp(sy) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ex.cmp(ey) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                },
            }
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gaussian>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Self {
        Poly::constant(Gaussian::one())
    }

    pub fn var(s: Symbol) -> Self {
        Poly::monomial(Monomial::var(s), Gaussian::one())
    }

    pub fn monomial(m: Monomial, c: Gaussian) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant value if the polynomial mentions no parameters.
    pub fn as_constant(&self) -> Option<Gaussian> {
        match self.terms.len() {
            0 => Some(Gaussian::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Gaussian)> {
        self.terms.iter().next_back()
    }

    pub fn variables(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| *s)).collect();
        v.sort();
        v.dedup();
        v
    }

    fn add_term(&mut self, m: Monomial, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Gaussian) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn mul_term(&self, m: &Monomial, c: &Gaussian) -> Poly {
        Poly { terms: self.terms.iter().map(|(mm, x)| (mm.mul(m), x * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = rc * &dc_inv;
            rem = rem.sub(&d.mul_term(&m, &c));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Divide by the leading coefficient so the leading term has coefficient 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    fn split_by(&self, x: Symbol) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let deg = m.degree_in(x) as usize;
            if out.len() <= deg {
                out.resize(deg + 1, Poly::zero());
            }
            out[deg].add_term(m.without(x), c.clone());
        }
        out
    }

    fn join_by(coeffs: &[Poly], x: Symbol) -> Poly {
        let mut out = Poly::zero();
        for (deg, c) in coeffs.iter().enumerate() {
            let xm = Monomial::pow_of(x, deg as u32);
            for (m, v) in &c.terms {
                out.add_term(m.mul(&xm), v.clone());
            }
        }
        out
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut vars = self.variables();
        vars.extend(other.variables());
        vars.sort();
        vars.dedup();
        let Some(&x) = vars.first() else {
            return Poly::one();
        };
        if self.as_constant().is_some() || other.as_constant().is_some() {
            return Poly::one();
        }
        let ua = self.split_by(x);
        let ub = other.split_by(x);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ca.gcd(&cb);
        let pa = primitive_with(&ua, &ca);
        let pb = primitive_with(&ub, &cb);
        let g = univariate_primitive_gcd(pa, pb);
        Poly::join_by(&g, x).mul(&c).monic()
    }
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(Poly::is_zero) {
        u.pop();
    }
}

fn content(u: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_with(u: &[Poly], cont: &Poly) -> Vec<Poly> {
    let mut out: Vec<Poly> = u.iter().map(|c| c.div_exact(cont).expect("content divides every coefficient")).collect();
    trim(&mut out);
    out
}

fn primitive(u: &[Poly]) -> Vec<Poly> {
    let c = content(u);
    if c.is_zero() {
        return Vec::new();
    }
    primitive_with(u, &c)
}

/// Pseudo-remainder of `a` by `b` (both in `R[x]`, `b` nonzero).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lt = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lc);
        }
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&lt.mul(bc));
        }
        trim(&mut r);
    }
    r
}

fn univariate_primitive_gcd(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_empty() {
            return a;
        }
        if b.len() == 1 {
            return vec![Poly::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_leading();
            let mag = if neg { -c } else { c.clone() };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
