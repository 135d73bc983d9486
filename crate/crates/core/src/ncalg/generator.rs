//! Non-commuting generators and words over them.

use std::cmp::Ordering;
use std::fmt;

use super::symbol::Symbol;

/// An atomic non-commuting symbol.
///
/// Ordinary generators carry a base name, an optional component index, the
/// number of overdots (`dot`) and the number of primes (`shift`). The shift
/// generator `J` carries none of these.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Shift,
    Ordinary { name: Symbol, component: Option<u32>, dot: u32, shift: u32 },
}

/// Names that sort after every other family, so normal ordering places
/// coordinates before their conjugate momenta.
const MOMENTUM_FAMILY: &str = "P";

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator::Ordinary { name: Symbol::new(name), component: None, dot: 0, shift: 0 }
    }

    pub fn indexed(name: &str, component: u32) -> Self {
        Generator::Ordinary { name: Symbol::new(name), component: Some(component), dot: 0, shift: 0 }
    }

    /// The shift operator `J`.
    pub fn j() -> Self {
        Generator::Shift
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, Generator::Shift)
    }

    pub fn name(&self) -> Option<Symbol> {
        match self {
            Generator::Shift => None,
            Generator::Ordinary { name, .. } => Some(*name),
        }
    }

    pub fn component(&self) -> Option<u32> {
        match self {
            Generator::Shift => None,
            Generator::Ordinary { component, .. } => *component,
        }
    }

    pub fn dot_order(&self) -> u32 {
        match self {
            Generator::Shift => 0,
            Generator::Ordinary { dot, .. } => *dot,
        }
    }

    pub fn shift_order(&self) -> u32 {
        match self {
            Generator::Shift => 0,
            Generator::Ordinary { shift, .. } => *shift,
        }
    }

    /// Same generator with `n` more overdots. `J` is unchanged.
    pub fn dotted(self, n: u32) -> Self {
        match self {
            Generator::Shift => Generator::Shift,
            Generator::Ordinary { name, component, dot, shift } => {
                Generator::Ordinary { name, component, dot: dot + n, shift }
            }
        }
    }

    /// Same generator with `n` more primes. `J` is unchanged.
    pub fn shifted(self, n: u32) -> Self {
        match self {
            Generator::Shift => Generator::Shift,
            Generator::Ordinary { name, component, dot, shift } => {
                Generator::Ordinary { name, component, dot, shift: shift + n }
            }
        }
    }

    fn sort_key(&self) -> Option<(bool, Symbol, Option<u32>, u32, u32)> {
        match *self {
            Generator::Shift => None,
            Generator::Ordinary { name, component, dot, shift } => {
                Some((name.as_str() == MOMENTUM_FAMILY, name, component, dot, shift))
            }
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `J` first, then ordinary generators by (name, component, dots, primes),
/// with the `P` family placed after every other name.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Shift => f.write_str("J"),
            Generator::Ordinary { name, component, dot, shift } => {
                write!(f, "{name}")?;
                if let Some(c) = component {
                    write!(f, "{c}")?;
                }
                for _ in 0..*dot {
                    f.write_str(".")?;
                }
                for _ in 0..*shift {
                    f.write_str("'")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A monomial of the free algebra: a finite product of generators. The empty
/// word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn from_gens(gens: Vec<Generator>) -> Self {
        Word(gens)
    }

    pub fn single(g: Generator) -> Self {
        Word(vec![g])
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub(crate) fn into_vec(self) -> Vec<Generator> {
        self.0
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
