#![allow(dead_code)]

use ncworlds::ncalg::{parse, Expression, Generator, Scalar, Word};
use proptest::prelude::*;

pub fn gens(src: &[&str]) -> Vec<Generator> {
    src.iter()
        .map(|s| {
            let e = parse(s).unwrap();
            *e.generators().iter().next().unwrap()
        })
        .collect()
}

/// Small rationals, occasionally times a parameter or the imaginary unit.
pub fn scalar() -> impl Strategy<Value = Scalar> {
    let rational = (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d));
    prop_oneof![
        4 => rational.clone(),
        1 => rational.clone().prop_map(|c| &c * &Scalar::param("hbar")),
        1 => rational.clone().prop_map(|c| &c / &Scalar::param("tau")),
        1 => rational.prop_map(|c| &c * &Scalar::i()),
    ]
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |c| !c.is_zero())
}

/// Expressions over `pool` with words of length at most `degree` and at most
/// `terms` terms.
pub fn expression(pool: Vec<Generator>, degree: usize, terms: usize) -> impl Strategy<Value = Expression> {
    let n = pool.len();
    let word = prop::collection::vec(0..n, 0..=degree);
    prop::collection::vec((word, scalar()), 1..=terms).prop_map(move |ts| {
        let mut e = Expression::zero();
        for (idx, c) in ts {
            e.add_term(Word::from(idx.into_iter().map(|i| pool[i]).collect::<Vec<_>>()), c);
        }
        e
    })
}
