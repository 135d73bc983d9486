use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::value::RawValue;

use super::num::{parse_rational, Value};
use crate::error::{Error, Result};

/// A scalar series on the valid window `t = 0..len`.
///
/// Shifting drops samples from the top of the window; nothing is padded.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T>(Vec<T>);

impl<T: Value> Series<T> {
    pub fn new(values: Vec<T>) -> Self {
        Series(values)
    }

    pub fn constant(c: T, len: usize) -> Self {
        Series(vec![c; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn get(&self, t: usize) -> Option<&T> {
        self.0.get(t)
    }

    /// `f(t + n)`.
    pub fn shift(&self, n: usize) -> Self {
        Series(self.0.iter().skip(n).cloned().collect())
    }

    /// `f(t + 1) − f(t)`.
    pub fn diff(&self) -> Self {
        Series(self.0.windows(2).map(|w| w[1].minus(&w[0])).collect())
    }

    fn zip(&self, o: &Self, op: impl Fn(&T, &T) -> T) -> Self {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| op(a, b)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, T::plus)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, T::minus)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip(o, T::times)
    }

    pub fn neg(&self) -> Self {
        Series(self.0.iter().map(T::negate).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Series(self.0.iter().map(|v| v.times(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(T::vanishes)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// Samples of a `d`-vector taken every `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries<T> {
    tau: BigRational,
    dim: usize,
    samples: Vec<Vec<T>>,
}

#[derive(Deserialize)]
struct SeriesDoc<'a> {
    #[serde(borrow)]
    tau: &'a RawValue,
    dimension: usize,
    #[serde(borrow)]
    values: Vec<Vec<&'a RawValue>>,
}

fn raw_rational(raw: &RawValue, what: &str) -> Result<BigRational> {
    let text = raw.get();
    let literal = serde_json::from_str::<String>(text).unwrap_or_else(|_| text.to_owned());
    parse_rational(&literal).ok_or_else(|| Error::InvalidParameter(format!("{what}: not a rational number: {text}")))
}

impl<T: Value> TimeSeries<T> {
    pub fn new(tau: BigRational, samples: Vec<Vec<T>>) -> Result<Self> {
        if !tau.is_positive() {
            return Err(Error::InvalidParameter(format!("sample period must be positive, got {tau}")));
        }
        let dim = samples.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidParameter("time series needs at least one sample with one component".into()));
        }
        if let Some(bad) = samples.iter().find(|s| s.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        Ok(TimeSeries { tau, dim, samples })
    }

    /// Build from one scalar series per component.
    pub fn from_components(tau: BigRational, components: &[Series<T>]) -> Result<Self> {
        let len = components.iter().map(Series::len).min().unwrap_or(0);
        let samples = (0..len).map(|t| components.iter().map(|c| c.0[t].clone()).collect()).collect();
        TimeSeries::new(tau, samples)
    }

    /// Parse `{"tau": "1", "dimension": 3, "values": [[x, y, z], ...]}`.
    /// Numbers are read exactly; strings may hold `p/q` literals.
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: SeriesDoc =
            serde_json::from_str(src).map_err(|e| Error::InvalidParameter(format!("time series: {e}")))?;
        let tau = raw_rational(doc.tau, "tau")?;
        let mut samples = Vec::with_capacity(doc.values.len());
        for row in &doc.values {
            if row.len() != doc.dimension {
                return Err(Error::DimensionMismatch { expected: doc.dimension, found: row.len() });
            }
            let vals = row.iter().map(|v| raw_rational(v, "value").map(|q| T::from_rational(&q)));
            samples.push(vals.collect::<Result<Vec<T>>>()?);
        }
        if samples.is_empty() {
            return Err(Error::WindowTooShort { needed: 1, available: 0 });
        }
        TimeSeries::new(tau, samples)
    }

    pub fn tau(&self) -> &BigRational {
        &self.tau
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Valid window `(lo, hi)`, half-open.
    pub fn window(&self) -> (usize, usize) {
        (0, self.samples.len())
    }

    pub fn samples(&self) -> &[Vec<T>] {
        &self.samples
    }

    /// Component `i` (1-based).
    pub fn component(&self, i: usize) -> Series<T> {
        Series(self.samples.iter().map(|s| s[i - 1].clone()).collect())
    }

    pub fn components(&self) -> Vec<Series<T>> {
        (1..=self.dim).map(|i| self.component(i)).collect()
    }

    pub fn map<U: Value>(&self, f: impl Fn(&T) -> U) -> TimeSeries<U> {
        TimeSeries {
            tau: self.tau.clone(),
            dim: self.dim,
            samples: self.samples.iter().map(|s| s.iter().map(&f).collect()).collect(),
        }
    }

    /// `a·self + b·other` on the common window.
    pub fn combine(&self, a: &T, other: &TimeSeries<T>, b: &T) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u.times(a).plus(&v.times(b))).collect())
            .collect();
        TimeSeries::new(self.tau.clone(), samples)
    }

    pub(crate) fn require(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::WindowTooShort { needed, available: self.len() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_dim(&self, d: usize) -> Result<()> {
        if self.dim != d {
            Err(Error::DimensionMismatch { expected: d, found: self.dim })
        } else {
            Ok(())
        }
    }

    /// `1/τ` as a sample value.
    pub(crate) fn inv_tau(&self) -> T {
        debug_assert!(!self.tau.is_zero());
        T::from_rational(&self.tau.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn shift_and_diff_shrink_from_top() {
        let s = Series::new(vec![1.0, 4.0, 9.0, 16.0]);
        assert_eq!(s.shift(1).values(), &[4.0, 9.0, 16.0]);
        assert_eq!(s.diff().values(), &[3.0, 5.0, 7.0]);
        assert_eq!(s.diff().diff().values(), &[2.0, 2.0]);
        assert!(s.shift(5).is_empty());
    }

    #[test]
    fn json_input_is_exact() {
        let src = r#"{"tau": "1/4", "dimension": 2, "values": [[0, 0.1], ["1/3", -2e-1]]}"#;
        let ts = TimeSeries::<BigRational>::from_json(src).unwrap();
        assert_eq!(ts.tau(), &q(1, 4));
        assert_eq!(ts.samples()[0][1], q(1, 10));
        assert_eq!(ts.samples()[1], vec![q(1, 3), q(-1, 5)]);
        let num_tau = r#"{"tau": 0.5, "dimension": 1, "values": [[1]]}"#;
        assert_eq!(TimeSeries::<f64>::from_json(num_tau).unwrap().tau(), &q(1, 2));
    }

    #[test]
    fn json_input_errors() {
        let ragged = r#"{"tau": "1", "dimension": 2, "values": [[0, 1], [2]]}"#;
        assert!(matches!(TimeSeries::<f64>::from_json(ragged), Err(Error::DimensionMismatch { .. })));
        let bad_tau = r#"{"tau": "-1", "dimension": 1, "values": [[0]]}"#;
        assert!(matches!(TimeSeries::<f64>::from_json(bad_tau), Err(Error::InvalidParameter(_))));
        let empty = r#"{"tau": "1", "dimension": 1, "values": []}"#;
        assert!(matches!(TimeSeries::<f64>::from_json(empty), Err(Error::WindowTooShort { .. })));
        assert!(TimeSeries::<f64>::from_json("[]").is_err());
        let junk = r#"{"tau": "1", "dimension": 1, "values": [["x"]]}"#;
        assert!(TimeSeries::<f64>::from_json(junk).is_err());
    }
}
