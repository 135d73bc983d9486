use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::num::Value;
use super::series::TimeSeries;
use crate::error::{Error, Result};

/// Walk starting at the origin with independent steps `±√(kτ)` in every
/// component, driven by a ChaCha stream seeded from `seed`.
pub fn generate_walk<T: Value>(
    seed: u64,
    length: usize,
    k: &BigRational,
    tau: &BigRational,
    dim: usize,
) -> Result<TimeSeries<T>> {
    if length < 2 {
        return Err(Error::InvalidParameter(format!("walk length must be at least 2, got {length}")));
    }
    if dim == 0 {
        return Err(Error::InvalidParameter("walk dimension must be at least 1".into()));
    }
    if !k.is_positive() || !tau.is_positive() {
        return Err(Error::InvalidParameter(format!("k and tau must be positive, got k = {k}, tau = {tau}")));
    }
    let step = T::sqrt_rational(&(k * tau))
        .ok_or_else(|| Error::InvalidParameter(format!("sqrt({}) is not representable", k * tau)))?;
    let down = step.negate();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = vec![T::zero(); dim];
    let mut samples = Vec::with_capacity(length);
    samples.push(current.clone());
    for _ in 1..length {
        for c in current.iter_mut() {
            *c = c.plus(if rng.gen::<bool>() { &step } else { &down });
        }
        samples.push(current.clone());
    }
    TimeSeries::new(tau.clone(), samples)
}

/// Samples uniform in `[-1, 1]`.
pub fn random_uniform<R: Rng + ?Sized>(
    rng: &mut R,
    length: usize,
    dim: usize,
    tau: &BigRational,
) -> Result<TimeSeries<f64>> {
    let samples = (0..length).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
    TimeSeries::new(tau.clone(), samples)
}

/// Integer samples in `[-bound, bound]`.
pub fn random_quantized<T: Value, R: Rng + ?Sized>(
    rng: &mut R,
    length: usize,
    dim: usize,
    tau: &BigRational,
    bound: i64,
) -> Result<TimeSeries<T>> {
    let samples = (0..length).map(|_| (0..dim).map(|_| T::from_int(rng.gen_range(-bound..=bound))).collect()).collect();
    TimeSeries::new(tau.clone(), samples)
}

/// `X(t) = a + b·t`.
pub fn linear<T: Value>(length: usize, a: &[T], b: &[T], tau: &BigRational) -> Result<TimeSeries<T>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    let samples = (0..length)
        .map(|t| {
            let t = T::from_int(t as i64);
            a.iter().zip(b).map(|(ai, bi)| ai.plus(&bi.times(&t))).collect()
        })
        .collect();
    TimeSeries::new(tau.clone(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::num::Surd;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn steps_have_the_right_size() {
        let w = generate_walk::<BigRational>(3, 50, &q(1, 1), &q(1, 4), 2).unwrap();
        let half = q(1, 2);
        for c in w.components() {
            assert!(c.diff().values().iter().all(|d| d == &half || d == &-&half));
        }
        let s = generate_walk::<Surd>(3, 20, &q(9, 1), &q(1, 3), 1).unwrap();
        assert!(s.component(1).diff().values().iter().all(|d| d.radicand() == 3 && d.rational_part() == &q(0, 1)));
    }

    #[test]
    fn walks_are_deterministic() {
        let a = generate_walk::<f64>(7, 100, &q(1, 1), &q(1, 1), 3).unwrap();
        let b = generate_walk::<f64>(7, 100, &q(1, 1), &q(1, 1), 3).unwrap();
        assert_eq!(a, b);
        let c = generate_walk::<f64>(8, 100, &q(1, 1), &q(1, 1), 3).unwrap();
        assert_ne!(a, c);
        assert_eq!(generate_walk::<f64>(1, 2, &q(1, 1), &q(1, 1), 1).unwrap().len(), 2);
    }

    #[test]
    fn bad_parameters() {
        assert!(generate_walk::<f64>(0, 1, &q(1, 1), &q(1, 1), 1).is_err());
        assert!(generate_walk::<f64>(0, 5, &q(0, 1), &q(1, 1), 1).is_err());
        assert!(generate_walk::<f64>(0, 5, &q(1, 1), &q(-1, 1), 1).is_err());
        assert!(generate_walk::<BigRational>(0, 5, &q(2, 1), &q(1, 1), 1).is_err());
    }
}
