//! Rewrite systems defining quotients of the free algebra, and normal forms.
//!
//! Two rule shapes are supported:
//!
//! * shift rules `g·J → J·g'` for ordinary generators `g`, which push the
//!   shift operator to the left and raise the prime count of `g`;
//! * scalar-commutator rules `g·h → h·g + c` for `g > h` in the generator
//!   order, where `c = [g, h]` is a central scalar (`c = 0` for commuting pairs).
//!
//! Every rule strictly lowers the number of order inversions of a word (the
//! `c` branch also shortens it), so rewriting terminates. Local confluence is
//! checked on construction by resolving every critical pair over the declared
//! generators.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;

use super::expr::Expression;
use super::generator::{Generator, Word};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Free,
    Shift,
    Flat,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    mode: Mode,
    shift_rule: bool,
    commute_ordinary: bool,
    rules: BTreeMap<(Generator, Generator), Scalar>,
    declared: Option<BTreeSet<Generator>>,
}

#[derive(Clone, Debug)]
enum Step {
    Shift,
    Swap(Scalar),
}

impl RelationSet {
    /// The free algebra: no relations, every generator allowed.
    pub fn free() -> Self {
        RelationSet {
            mode: Mode::Free,
            shift_rule: false,
            commute_ordinary: false,
            rules: BTreeMap::new(),
            declared: None,
        }
    }

    /// Time series with commuting scalar values and the shift operator:
    /// ordinary generators commute with each other and `g·J = J·g'`.
    pub fn shift() -> Self {
        RelationSet {
            mode: Mode::Shift,
            shift_rule: true,
            commute_ordinary: true,
            rules: BTreeMap::new(),
            declared: None,
        }
    }

    /// Flat coordinates `X_1..X_d`, `P_1..P_d` with `[X_i,X_j] = [P_i,P_j] = 0`
    /// and `[X_i,P_j] = δ_ij`.
    pub fn flat(d: u32) -> Self {
        let mut b = RelationSetBuilder::new(Mode::Flat);
        for i in 1..=d {
            for j in 1..=d {
                let (xi, xj) = (Generator::indexed("X", i), Generator::indexed("X", j));
                let (pi, pj) = (Generator::indexed("P", i), Generator::indexed("P", j));
                if i < j {
                    b = b.commutator(xi, xj, Scalar::zero()).commutator(pi, pj, Scalar::zero());
                }
                let delta = if i == j { Scalar::one() } else { Scalar::zero() };
                b = b.commutator(xi, pj, delta);
            }
        }
        b.build().expect("Weyl relations are confluent")
    }

    pub fn builder(mode: Mode) -> RelationSetBuilder {
        RelationSetBuilder::new(mode)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn has_shift_rule(&self) -> bool {
        self.shift_rule
    }

    pub fn declared(&self) -> Option<&BTreeSet<Generator>> {
        self.declared.as_ref()
    }

    /// A copy that additionally accepts `extra` as free generators.
    pub fn with_declared<I: IntoIterator<Item = Generator>>(&self, extra: I) -> Self {
        let mut out = self.clone();
        if let Some(d) = out.declared.as_mut() {
            d.extend(extra);
        }
        out
    }

    pub fn covers(&self, g: Generator) -> bool {
        match &self.declared {
            None => true,
            Some(d) => d.contains(&g) || (g.is_shift() && self.shift_rule),
        }
    }

    /// The commutator value `[g, h]` if a scalar rule relates the pair.
    pub fn scalar_commutator(&self, g: Generator, h: Generator) -> Option<Scalar> {
        if g == h {
            return Some(Scalar::zero());
        }
        let (hi, lo, sign) = if g > h { (g, h, 1) } else { (h, g, -1) };
        match self.step_for(hi, lo)? {
            Step::Swap(c) => Some(if sign > 0 { c } else { -c }),
            Step::Shift => None,
        }
    }

    fn step_for(&self, a: Generator, b: Generator) -> Option<Step> {
        if b.is_shift() {
            return (self.shift_rule && !a.is_shift()).then_some(Step::Shift);
        }
        if a.is_shift() || a <= b {
            return None;
        }
        if let Some(c) = self.rules.get(&(a, b)) {
            return Some(Step::Swap(c.clone()));
        }
        self.commute_ordinary.then(|| Step::Swap(Scalar::zero()))
    }

    fn redexes(&self, gens: &[Generator]) -> Vec<(usize, Step)> {
        gens.windows(2).enumerate().filter_map(|(p, w)| self.step_for(w[0], w[1]).map(|s| (p, s))).collect()
    }

    fn first_redex(&self, gens: &[Generator]) -> Option<(usize, Step)> {
        gens.windows(2).enumerate().find_map(|(p, w)| self.step_for(w[0], w[1]).map(|s| (p, s)))
    }

    /// Apply `step` at position `p`, returning the rewritten terms.
    fn apply(gens: &[Generator], p: usize, step: &Step) -> Vec<(Word, Scalar)> {
        let (a, b) = (gens[p], gens[p + 1]);
        let mut swapped = gens.to_vec();
        match step {
            Step::Shift => {
                swapped[p] = Generator::j();
                swapped[p + 1] = a.shifted(1);
                vec![(Word::from(swapped), Scalar::one())]
            }
            Step::Swap(c) => {
                swapped[p] = b;
                swapped[p + 1] = a;
                let mut out = vec![(Word::from(swapped), Scalar::one())];
                if !c.is_zero() {
                    let mut shorter = gens.to_vec();
                    shorter.drain(p..p + 2);
                    out.push((Word::from(shorter), c.clone()));
                }
                out
            }
        }
    }

    fn check_covered(&self, e: &Expression) -> Result<()> {
        if self.declared.is_none() {
            return Ok(());
        }
        match e.generators().into_iter().find(|g| !self.covers(*g)) {
            Some(g) => Err(Error::UnknownGenerator(g.to_string())),
            None => Ok(()),
        }
    }

    /// Canonical representative of `e` in the quotient algebra.
    pub fn normalize(&self, e: &Expression) -> Result<Expression> {
        self.check_covered(e)?;
        if self.mode == Mode::Free {
            return Ok(e.clone());
        }
        Ok(self.normalize_unchecked(e))
    }

    fn normalize_unchecked(&self, e: &Expression) -> Expression {
        let mut cache = HashMap::new();
        let mut out = Expression::zero();
        for (w, c) in e.terms() {
            let nf = self.normal_word(w, &mut cache);
            out += &nf.scale(c);
        }
        out
    }

    fn normal_word(&self, w: &Word, cache: &mut HashMap<Word, Expression>) -> Expression {
        if let Some(hit) = cache.get(w) {
            return hit.clone();
        }
        let mut gens = w.gens().to_vec();
        let result = loop {
            match self.first_redex(&gens) {
                None => break Expression::word(Word::from(gens)),
                Some((p, Step::Shift)) => {
                    let a = gens[p];
                    gens[p] = Generator::j();
                    gens[p + 1] = a.shifted(1);
                }
                Some((p, Step::Swap(c))) if c.is_zero() => gens.swap(p, p + 1),
                Some((p, step)) => {
                    let mut acc = Expression::zero();
                    for (nw, nc) in Self::apply(&gens, p, &step) {
                        acc += &self.normal_word(&nw, cache).scale(&nc);
                    }
                    break acc;
                }
            }
        };
        cache.insert(w.clone(), result.clone());
        result
    }

    /// Normal form reached by applying rules at uniformly random redexes.
    /// Confluence means this agrees with [`RelationSet::normalize`] for every
    /// choice sequence.
    pub fn normalize_random<R: Rng>(&self, e: &Expression, rng: &mut R) -> Result<Expression> {
        self.check_covered(e)?;
        let mut work: Vec<(Word, Scalar)> = e.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = Expression::zero();
        while let Some((w, c)) = work.pop() {
            let redexes = self.redexes(w.gens());
            if redexes.is_empty() {
                out.add_term(w, c);
                continue;
            }
            let (p, step) = &redexes[rng.gen_range(0..redexes.len())];
            for (nw, nc) in Self::apply(w.gens(), *p, step) {
                work.push((nw, &nc * &c));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self, e: &Expression) -> Result<bool> {
        Ok(self.normalize(e)?.is_zero())
    }

    /// `true` when no rule applies anywhere in any word of `e`.
    pub fn is_normal(&self, e: &Expression) -> bool {
        e.terms().all(|(w, _)| self.first_redex(w.gens()).is_none())
    }

    fn check_critical_pairs(&self) -> Result<()> {
        let Some(declared) = &self.declared else {
            return Ok(());
        };
        let mut gens: Vec<Generator> = declared.iter().copied().collect();
        if self.shift_rule {
            gens.push(Generator::j());
        }
        for &a in &gens {
            for &b in &gens {
                let Some(first) = self.step_for(a, b) else { continue };
                for &c in &gens {
                    let Some(second) = self.step_for(b, c) else { continue };
                    let word = [a, b, c];
                    let resolve = |p: usize, s: &Step| {
                        let mut acc = Expression::zero();
                        for (w, k) in Self::apply(&word, p, s) {
                            acc += &Expression::term(w, k);
                        }
                        self.normalize_unchecked(&acc)
                    };
                    let left = resolve(0, &first);
                    let right = resolve(1, &second);
                    if left != right {
                        return Err(Error::NonConfluent {
                            word: Word::from(word.to_vec()).to_string(),
                            left: left.to_string(),
                            right: right.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builder for custom relation sets.
#[derive(Clone, Debug)]
pub struct RelationSetBuilder {
    mode: Mode,
    shift_rule: bool,
    rules: BTreeMap<(Generator, Generator), Scalar>,
    declared: BTreeSet<Generator>,
    error: Option<Error>,
}

impl RelationSetBuilder {
    fn new(mode: Mode) -> Self {
        RelationSetBuilder { mode, shift_rule: false, rules: BTreeMap::new(), declared: BTreeSet::new(), error: None }
    }

    /// Enable `g·J → J·g'` for every ordinary generator.
    pub fn with_shift_rule(mut self) -> Self {
        self.shift_rule = true;
        self
    }

    /// Declare generators that take part in no rule (free relative to the rest).
    pub fn declare<I: IntoIterator<Item = Generator>>(mut self, gens: I) -> Self {
        self.declared.extend(gens);
        self
    }

    /// Impose `[g, h] = c` with `c` a central scalar.
    pub fn commutator(mut self, g: Generator, h: Generator, c: Scalar) -> Self {
        if g.is_shift() || h.is_shift() {
            self.error.get_or_insert(Error::InconsistentRelation("scalar commutators with J are not supported".into()));
            return self;
        }
        if g == h {
            if !c.is_zero() {
                self.error.get_or_insert(Error::InconsistentRelation(format!("[{g}, {g}] = {c} != 0")));
            }
            return self;
        }
        let (key, val) = if g > h { ((g, h), c) } else { ((h, g), -c) };
        if let Some(prev) = self.rules.get(&key) {
            if *prev != val {
                self.error.get_or_insert(Error::InconsistentRelation(format!(
                    "[{}, {}] given as both {} and {}",
                    key.0, key.1, prev, val
                )));
            }
            return self;
        }
        self.declared.insert(g);
        self.declared.insert(h);
        self.rules.insert(key, val);
        self
    }

    pub fn build(self) -> Result<RelationSet> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let set = RelationSet {
            mode: self.mode,
            shift_rule: self.shift_rule,
            commute_ordinary: false,
            rules: self.rules,
            declared: Some(self.declared),
        };
        set.check_critical_pairs()?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: u32) -> Generator {
        Generator::indexed("X", i)
    }
    fn p(i: u32) -> Generator {
        Generator::indexed("P", i)
    }
    fn e(g: Generator) -> Expression {
        Expression::gen(g)
    }

    #[test]
    fn shift_moves_j_left() {
        let xg = Generator::new("X");
        let r = RelationSet::shift();
        let xj = &e(xg) * &Expression::j();
        assert_eq!(r.normalize(&xj).unwrap(), &Expression::j() * &e(xg.shifted(1)));
        let jx = &Expression::j() * &e(xg);
        assert_eq!(r.normalize(&jx).unwrap(), jx);
    }

    #[test]
    fn commutator_with_j() {
        let xg = Generator::new("X");
        let r = RelationSet::shift();
        let c = e(xg).commutator(&Expression::j());
        let expected = &Expression::j() * &(&e(xg.shifted(1)) - &e(xg));
        assert_eq!(r.normalize(&c).unwrap(), expected);
    }

    #[test]
    fn weyl_normal_ordering() {
        let r = RelationSet::flat(2);
        let px = &e(p(1)) * &e(x(1));
        let expected = &(&e(x(1)) * &e(p(1))) - &Expression::one();
        assert_eq!(r.normalize(&px).unwrap(), expected);
        assert_eq!(r.normalize(&e(x(1)).commutator(&e(p(1)))).unwrap(), Expression::one());
        assert!(r.is_zero(&e(x(1)).commutator(&e(x(2)))).unwrap());
        assert!(r.is_zero(&e(x(1)).commutator(&e(p(2)))).unwrap());
        assert!(!RelationSet::free().is_zero(&e(x(1)).commutator(&e(x(2)))).unwrap());
        assert!(r.is_zero(&Expression::zero()).unwrap());
    }

    #[test]
    fn unknown_generator_rejected_in_flat_mode() {
        let r = RelationSet::flat(1);
        let err = r.normalize(&e(Generator::new("Q"))).unwrap_err();
        assert!(matches!(err, Error::UnknownGenerator(_)));
        assert!(r.normalize(&e(x(2))).is_err());
    }

    #[test]
    fn non_confluent_set_rejected() {
        // X > Y and Y > Z commute but X, Z do not: XYZ has two normal forms.
        let (gx, gy, gz) = (Generator::new("X"), Generator::new("Y"), Generator::new("Z"));
        let res = RelationSet::builder(Mode::Custom)
            .commutator(gx, gy, Scalar::zero())
            .commutator(gy, gz, Scalar::zero())
            .build();
        assert!(matches!(res, Err(Error::NonConfluent { .. })));
    }

    #[test]
    fn shift_rule_requires_shift_invariant_commutators() {
        let (a, b) = (Generator::new("A"), Generator::new("B"));
        let res = RelationSet::builder(Mode::Custom).with_shift_rule().commutator(a, b, Scalar::one()).build();
        assert!(matches!(res, Err(Error::NonConfluent { .. })));
        let ok = RelationSet::builder(Mode::Custom)
            .with_shift_rule()
            .commutator(a, b, Scalar::one())
            .commutator(a.shifted(1), b.shifted(1), Scalar::one())
            .build();
        // The primed pair's own overlap with J needs the doubly primed rule.
        assert!(ok.is_err());
    }

    #[test]
    fn inconsistent_duplicate_rule() {
        let (a, b) = (Generator::new("A"), Generator::new("B"));
        let res =
            RelationSet::builder(Mode::Custom).commutator(a, b, Scalar::one()).commutator(b, a, Scalar::one()).build();
        assert!(matches!(res, Err(Error::InconsistentRelation(_))));
    }

    #[test]
    fn random_order_agrees_on_weyl_word() {
        let r = RelationSet::flat(2);
        let w = &(&(&e(p(1)) * &e(p(1))) * &e(x(1))) * &(&e(x(1)) * &e(p(2)));
        let w = &w * &e(x(2));
        let det = r.normalize(&w).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(r.normalize_random(&w, &mut rng).unwrap(), det);
        }
    }
}
