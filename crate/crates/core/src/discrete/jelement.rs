use std::collections::BTreeMap;

use super::num::Value;
use super::series::Series;

/// A finite sum `Σ_m J^m f_m` in the crossed product of shift powers over
/// sample series, with `f J = J f′`.
#[derive(Clone, Debug, PartialEq)]
pub struct JElement<T> {
    terms: BTreeMap<u32, Series<T>>,
}

impl<T: Value> Default for JElement<T> {
    fn default() -> Self {
        JElement::zero()
    }
}

impl<T: Value> JElement<T> {
    pub fn zero() -> Self {
        JElement { terms: BTreeMap::new() }
    }

    /// `J^power f`.
    pub fn term(power: u32, f: Series<T>) -> Self {
        JElement { terms: BTreeMap::from([(power, f)]) }
    }

    /// `J^0 f`, a plain series.
    pub fn series(f: Series<T>) -> Self {
        JElement::term(0, f)
    }

    /// `J` itself, on a window of `len` samples.
    pub fn j(len: usize) -> Self {
        JElement::term(1, Series::constant(T::one(), len))
    }

    pub fn terms(&self) -> &BTreeMap<u32, Series<T>> {
        &self.terms
    }

    pub fn get(&self, power: u32) -> Option<&Series<T>> {
        self.terms.get(&power)
    }

    pub fn powers(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_power(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Length of the shortest window among the terms.
    pub fn window(&self) -> usize {
        self.terms.values().map(Series::len).min().unwrap_or(0)
    }

    /// True when every coefficient vanishes on its window.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Series::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(Series::max_abs).fold(0.0, f64::max)
    }

    fn merge(&mut self, power: u32, f: Series<T>, sign: bool) {
        let f = if sign { f } else { f.neg() };
        match self.terms.get_mut(&power) {
            Some(g) => *g = g.add(&f),
            None => {
                self.terms.insert(power, f);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&p, f) in &o.terms {
            out.merge(p, f.clone(), true);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&p, f) in &o.terms {
            out.merge(p, f.clone(), false);
        }
        out
    }

    pub fn neg(&self) -> Self {
        JElement { terms: self.terms.iter().map(|(&p, f)| (p, f.neg())).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        JElement { terms: self.terms.iter().map(|(&p, f)| (p, f.scale(c))).collect() }
    }

    /// `(J^m f)(J^n g) = J^{m+n} f(t+n) g(t)`.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = JElement::zero();
        for (&m, f) in &self.terms {
            for (&n, g) in &o.terms {
                out.merge(m + n, f.shift(n as usize).mul(g), true);
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `[G, J]`, computed termwise as `J^{m+1}(f′ − f)`.
    pub fn shift_commutator(&self) -> Self {
        JElement { terms: self.terms.iter().map(|(&p, f)| (p + 1, f.diff())).collect() }
    }
}

/// `Σ a_i b_i`.
pub fn jdot<T: Value>(a: &[JElement<T>], b: &[JElement<T>]) -> JElement<T> {
    a.iter().zip(b).fold(JElement::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Epsilon cross product of 3-vectors, keeping factor order.
pub fn jcross<T: Value>(a: &[JElement<T>], b: &[JElement<T>]) -> Vec<JElement<T>> {
    (0..3)
        .map(|k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            a[i].mul(&b[j]).sub(&a[j].mul(&b[i]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Series<f64> {
        Series::new(v.to_vec())
    }

    #[test]
    fn f_j_equals_j_f_prime() {
        let f = JElement::series(s(&[1.0, 2.0, 5.0, 7.0]));
        let lhs = f.mul(&JElement::j(4));
        assert_eq!(lhs, JElement::term(1, s(&[2.0, 5.0, 7.0])));
        let rhs = JElement::j(4).mul(&f);
        assert_eq!(rhs, JElement::term(1, s(&[1.0, 2.0, 5.0, 7.0])));
    }

    #[test]
    fn shift_commutator_matches_product() {
        let g = JElement::term(2, s(&[1.0, -3.0, 4.0, 0.5, 2.0])).add(&JElement::series(s(&[2.0, 1.0, 1.0, 3.0, 8.0])));
        let direct = g.commutator(&JElement::j(5));
        let fast = g.shift_commutator();
        for p in fast.powers() {
            let (a, b) = (direct.get(p).unwrap(), fast.get(p).unwrap());
            let n = a.len().min(b.len());
            assert_eq!(&a.values()[..n], &b.values()[..n]);
        }
    }

    #[test]
    fn cross_of_parallel_commuting_series_vanishes() {
        let x: Vec<_> = (0..3).map(|i| JElement::series(s(&[i as f64, 2.0 * i as f64]))).collect();
        assert!(jcross(&x, &x).iter().all(JElement::is_zero));
        assert_eq!(jdot(&x, &x), JElement::series(s(&[5.0, 20.0])));
    }
}
