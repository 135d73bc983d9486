//! Plain-text syntax for expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*          divisors must be scalars
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' INTEGER)?
//! atom    := INTEGER | generator | parameter | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Generators start with an upper-case letter: a run of letters for the base
//! name, optional digits for the component index, then any mix of `.` (one
//! overdot each) and `'` (one prime each). `X2.` is `Ẋ₂` and `X2''` is `X₂″`.
//! The spellings `Xdot2` and `Xddot2` are accepted for one and two overdots.
//! A bare `J` is the shift operator. Lower-case identifiers are commuting
//! parameters (`tau`, `hbar`, `dt`, `h`, `k`, ...), except `i`, the imaginary
//! unit. `[a, b]` is the commutator `ab − ba`.
//!
//! The printer emits this grammar and `parse(print(e)) == e` holds for every
//! expression whose generator names are plain letters.

use std::fmt;

use num_bigint::BigInt;

use super::expr::Expression;
use super::generator::Generator;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(Generator),
    Param(String),
    Imag,
    Op(char),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut p = 0;
    while p < bytes.len() {
        let c = bytes[p] as char;
        if c.is_ascii_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let start = p;
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            let n: BigInt = src[start..p].parse().map_err(|_| err(start, "bad integer"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = p;
            while p < bytes.len() && (bytes[p].is_ascii_alphabetic() || bytes[p] == b'_') {
                p += 1;
            }
            let name = &src[start..p];
            if c.is_ascii_lowercase() {
                if p < bytes.len() && bytes[p].is_ascii_digit() {
                    return Err(err(p, "parameters cannot carry an index"));
                }
                out.push((start, if name == "i" { Tok::Imag } else { Tok::Param(name.to_owned()) }));
                continue;
            }
            let digits_start = p;
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            let component = if p > digits_start {
                let n: u32 = src[digits_start..p].parse().map_err(|_| err(digits_start, "index too large"))?;
                if n == 0 {
                    return Err(err(digits_start, "component index must be at least 1"));
                }
                Some(n)
            } else {
                None
            };
            let (mut base, mut dots) = (name, 0u32);
            if base.len() > 4 && base.ends_with("ddot") {
                base = &base[..base.len() - 4];
                dots = 2;
            } else if base.len() > 3 && base.ends_with("dot") {
                base = &base[..base.len() - 3];
                dots = 1;
            }
            let mut primes = 0u32;
            while p < bytes.len() && (bytes[p] == b'.' || bytes[p] == b'\'') {
                if bytes[p] == b'.' {
                    dots += 1;
                } else {
                    primes += 1;
                }
                p += 1;
            }
            if base == "J" && component.is_none() {
                if dots + primes > 0 {
                    return Err(err(start, "the shift operator J takes no dots or primes"));
                }
                out.push((start, Tok::Gen(Generator::j())));
                continue;
            }
            let g = match component {
                Some(n) => Generator::indexed(base, n),
                None => Generator::new(base),
            };
            out.push((start, Tok::Gen(g.dotted(dots).shifted(primes))));
        } else if "+-*/^()[],".contains(c) {
            out.push((p, Tok::Op(c)));
            p += 1;
        } else {
            return Err(err(p, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                let s = d.as_scalar().ok_or_else(|| err(pos, "can only divide by a scalar"))?;
                let inv = s.inv().ok_or_else(|| err(pos, "division by zero"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.at += 1;
                    let e: u32 = n.try_into().map_err(|_| err(pos, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(err(pos, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expression> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return Err(err(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(Expression::scalar(Scalar::from_bigint(n))),
            Tok::Gen(g) => Ok(Expression::gen(g)),
            Tok::Param(name) => Ok(Expression::scalar(Scalar::param(&name))),
            Tok::Imag => Ok(Expression::scalar(Scalar::i())),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok(a.commutator(&b))
            }
            Tok::Op(c) => Err(err(pos, format!("unexpected `{c}`"))),
        }
    }
}

/// Parse an expression in the text syntax.
pub fn parse(src: &str) -> Result<Expression> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Parse a pure scalar (no generators).
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    parse(src)?.as_scalar().ok_or_else(|| err(0, "expected a scalar literal"))
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    if c.is_atomic() {
        write!(f, "{c}")
    } else {
        write!(f, "({c})")
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms().enumerate() {
            let neg = c.is_negative_leading();
            let mag = if neg { -c } else { c.clone() };
            match (n == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if w.is_empty() {
                write_coefficient(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write_coefficient(f, &mag)?;
                write!(f, "*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Expression {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_spellings() {
        let xd2 = Generator::indexed("X", 2).dotted(1);
        assert_eq!(parse("X2.").unwrap(), Expression::gen(xd2));
        assert_eq!(parse("Xdot2").unwrap(), Expression::gen(xd2));
        assert_eq!(parse("Xddot2").unwrap(), Expression::gen(xd2.dotted(1)));
        assert_eq!(parse("X2'").unwrap(), Expression::gen(Generator::indexed("X", 2).shifted(1)));
        assert_eq!(parse("J").unwrap(), Expression::j());
        assert_eq!(parse("Psi").unwrap(), Expression::gen(Generator::new("Psi")));
    }

    #[test]
    fn arithmetic_and_commutators() {
        let e = parse("[X1, P1] - (X1*P1 - P1*X1)").unwrap();
        assert!(e.is_zero());
        let e = parse("P1^2/2").unwrap();
        let p1 = Expression::gen(Generator::indexed("P", 1));
        assert_eq!(e, (&p1 * &p1).scale(&Scalar::ratio(1, 2)));
        let e = parse("3/4*tau*X").unwrap();
        assert_eq!(e, Expression::gen(Generator::new("X")).scale(&(&Scalar::ratio(3, 4) * &Scalar::param("tau"))));
    }

    #[test]
    fn heisenberg_literal() {
        let e = parse("1 + H*dt/(i*hbar)").unwrap();
        let coeff = &Scalar::param("dt") / &(&Scalar::i() * &Scalar::param("hbar"));
        let expected = &Expression::one() + &Expression::gen(Generator::new("H")).scale(&coeff);
        assert_eq!(e, expected);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse("X / Y"), Err(Error::Parse { .. })));
        assert!(matches!(parse("X +"), Err(Error::Parse { .. })));
        assert!(matches!(parse("X0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("J'"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("X $"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn print_examples() {
        assert_eq!(parse("X - Y").unwrap().to_string(), "X - Y");
        assert_eq!(parse("-2*X*Y + 1").unwrap().to_string(), "1 - 2*X*Y");
        let s = parse("(tau + 1)/tau * X1.").unwrap().to_string();
        assert_eq!(parse(&s).unwrap(), parse("(tau + 1)/tau * X1.").unwrap());
    }
}
