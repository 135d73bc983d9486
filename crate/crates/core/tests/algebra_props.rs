mod common;

use common::{expression, gens, nonzero_scalar, scalar};
use ncworlds::ncalg::{parse, parse_scalar, Expression, Generator, RelationSet, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_pool() -> Vec<Generator> {
    gens(&["X1", "X2", "Y", "X1.", "Z''"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_is_a_derivation(a in expression(free_pool(), 2, 3), b in expression(free_pool(), 2, 3), c in expression(free_pool(), 2, 3)) {
        let lhs = (&a * &b).commutator(&c);
        let rhs = &(&a * &b.commutator(&c)) + &(&a.commutator(&c) * &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_jacobi(a in expression(free_pool(), 2, 3), b in expression(free_pool(), 2, 3), c in expression(free_pool(), 2, 3)) {
        let s = &(&a.commutator(&b).commutator(&c) + &b.commutator(&c).commutator(&a)) + &c.commutator(&a).commutator(&b);
        prop_assert!(s.is_zero());
    }

    #[test]
    fn commutator_antisymmetric(a in expression(free_pool(), 3, 4), b in expression(free_pool(), 3, 4)) {
        prop_assert_eq!(a.commutator(&b), -b.commutator(&a));
    }

    #[test]
    fn overdot_is_a_derivation(a in expression(free_pool(), 3, 4), b in expression(free_pool(), 3, 4), c in scalar()) {
        let lhs = (&a * &b).dot_derivative();
        let rhs = &(&a.dot_derivative() * &b) + &(&a * &b.dot_derivative());
        prop_assert_eq!(lhs, rhs);
        let sum = &a.scale(&c) + &b;
        prop_assert_eq!(sum.dot_derivative(), &a.dot_derivative().scale(&c) + &b.dot_derivative());
        prop_assert!(Expression::scalar(c).dot_derivative().is_zero());
    }

    #[test]
    fn overdot_commutes_with_commutators(a in expression(free_pool(), 2, 3), b in expression(free_pool(), 2, 3)) {
        let lhs = a.commutator(&b).dot_derivative();
        let rhs = &a.dot_derivative().commutator(&b) + &a.commutator(&b.dot_derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_round_trip(a in expression(gens(&["X1", "P2", "Y", "X1.", "Z''", "J"]), 3, 5)) {
        let text = a.to_string();
        prop_assert_eq!(parse(&text).unwrap(), a, "text: {}", text);
    }

    #[test]
    fn scalar_round_trip_and_field_laws(a in scalar(), b in scalar(), c in nonzero_scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a / &c) * &c, a.clone());
        prop_assert_eq!(&c * &c.inv().unwrap(), Scalar::one());
        prop_assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn shift_normal_form(a in expression(gens(&["J", "X1", "X1'", "Y"]), 4, 4), b in expression(gens(&["J", "X1", "Y"]), 3, 3), seed in any::<u64>()) {
        let r = RelationSet::shift();
        let na = r.normalize(&a).unwrap();
        prop_assert!(r.is_normal(&na));
        prop_assert_eq!(r.normalize(&na).unwrap(), na.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(r.normalize_random(&a, &mut rng).unwrap(), na.clone());
        // normal forms are compatible with multiplication
        let nb = r.normalize(&b).unwrap();
        prop_assert_eq!(r.normalize(&(&na * &nb)).unwrap(), r.normalize(&(&a * &b)).unwrap());
        // every J sits to the left of every ordinary generator
        for (w, _) in na.terms() {
            let first_ordinary = w.gens().iter().position(|g| !g.is_shift()).unwrap_or(w.len());
            prop_assert!(w.gens()[first_ordinary..].iter().all(|g| !g.is_shift()));
        }
    }

    #[test]
    fn flat_normal_form(a in expression(gens(&["X1", "X2", "P1", "P2"]), 4, 4), b in expression(gens(&["X1", "P1", "P2"]), 3, 3), seed in any::<u64>()) {
        let r = RelationSet::flat(2);
        let na = r.normalize(&a).unwrap();
        prop_assert!(r.is_normal(&na));
        prop_assert_eq!(r.normalize(&na).unwrap(), na.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(r.normalize_random(&a, &mut rng).unwrap(), na.clone());
        let nb = r.normalize(&b).unwrap();
        prop_assert_eq!(r.normalize(&(&na * &nb)).unwrap(), r.normalize(&(&a * &b)).unwrap());
        for (w, _) in na.terms() {
            prop_assert!(w.gens().windows(2).all(|p| p[0] <= p[1]));
        }
    }

    #[test]
    fn free_normal_form_is_identity(a in expression(free_pool(), 4, 5)) {
        prop_assert_eq!(RelationSet::free().normalize(&a).unwrap(), a);
    }
}

#[test]
fn weyl_commutators() {
    let r = RelationSet::flat(3);
    for i in 1..=3 {
        for j in 1..=3 {
            let x = parse(&format!("X{i}")).unwrap();
            let p = parse(&format!("P{j}")).unwrap();
            let c = r.normalize(&x.commutator(&p)).unwrap();
            assert_eq!(c, Expression::int(i64::from(i == j)));
        }
    }
}
