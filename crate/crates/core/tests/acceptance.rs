//! Acceptance suite: one line per criterion, then a single assertion so that
//! every criterion is reported even when an earlier one fails.
//!
//! Run with `cargo test -p ncworlds --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use ncworlds::discrete::{
    brownian_commutator, e_route_agreement, generate_walk, linear, numeric_theorem_residuals, random_uniform, JElement,
    Series, Surd,
};
use ncworlds::emtheorem::{check_law, verify_acceleration, EMContext, Law};
use ncworlds::flatworld::{
    curvature_check, hamilton_check, heisenberg_check, heisenberg_residual, FlatContext, GaugeContext,
};
use ncworlds::ncalg::random::{random_expression, ExprShape};
use ncworlds::ncalg::{parse, Expression, Generator, RelationSet};
use ncworlds::veccalc::{epsilon_contract, Calculus};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPSILON_BUDGET: Duration = Duration::from_secs(1);
const THEOREM_BUDGET: Duration = Duration::from_secs(60);
const PRODUCT_RULE_PAIRS: usize = 200;
const RANDOM_HAMILTONIANS: usize = 50;
const BROWNIAN_BUDGET: Duration = Duration::from_secs(5);
const BROWNIAN_LENGTHS: [usize; 5] = [2, 10, 100, 1_000, 10_000];
const NUMERIC_SERIES: usize = 100;
const NUMERIC_LENGTH: usize = 64;
const NUMERIC_TOLERANCE: f64 = 1e-9;
const NUMERIC_BUDGET: Duration = Duration::from_secs(10);
const ROUTE_SERIES: usize = 1000;
const ROUTE_TOLERANCE: f64 = 1e-12;
const HYGIENE_EXPRESSIONS: usize = 500;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gen(src: &str) -> Generator {
    *parse(src).unwrap().generators().iter().next().unwrap()
}

fn epsilon_identity() -> Outcome {
    let start = Instant::now();
    let delta = |a: usize, b: usize| i64::from(a == b);
    let mut good = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                for d in 1..=3 {
                    let expected = delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c);
                    let s = epsilon_contract(a, b, c, d).unwrap();
                    good += usize::from(s.as_rational() == Some(q(expected, 1)));
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        passed: good == 81 && t < EPSILON_BUDGET,
        detail: format!("{good}/81 quadruples exact in {:.3} s", t.as_secs_f64()),
    }
}

fn electromagnetic_theorem() -> Outcome {
    let start = Instant::now();
    let ctx = EMContext::so3();
    let free = RelationSet::free();
    let mut parts = Vec::new();
    let mut all = true;
    for law in [Law::Lorentz, Law::DivB, Law::Faraday, Law::Ampere] {
        let o = check_law(&ctx, law, &free).unwrap();
        all &= o.passed;
        parts.push(format!("{} {}->{}", law.name(), o.terms_before, o.terms_after));
    }
    let t = start.elapsed();
    Outcome {
        passed: all && t < THEOREM_BUDGET,
        detail: format!("{} terms; {:.3} s", parts.join(", "), t.as_secs_f64()),
    }
}

fn acceleration_identity() -> Outcome {
    let ctx = EMContext::so3();
    let free_zero = verify_acceleration(&ctx).value.is_zero();
    let rel = ctx.commuting_relations();
    let norm_zero = |v: &ncworlds::veccalc::VectorExpr| v.try_map(|e| rel.normalize(e)).unwrap().is_zero();
    let c = ctx.calculus();
    let v = ctx.velocity();
    let bxb_gone = norm_zero(&c.cross(ctx.magnetic(), ctx.magnetic()).unwrap());
    let triple_gone = norm_zero(&c.cross(v, &c.cross(v, v).unwrap()).unwrap());
    let laws_hold = Law::ALL.iter().all(|&l| check_law(&ctx, l, &rel).unwrap().passed);
    Outcome {
        passed: free_zero && bxb_gone && triple_gone && laws_hold,
        detail: format!(
            "free residual zero: {free_zero}; commuting: BxB = 0 {bxb_gone}, triple cross = 0 {triple_gone}, laws hold {laws_hold}"
        ),
    }
}

fn product_rule() -> Outcome {
    let calc = Calculus::so3();
    let pool = vec![gen("X1."), gen("X2."), gen("X3."), gen("X1.."), gen("X2.."), gen("Y")];
    let shape = ExprShape::new(pool, 3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut good = 0;
    for _ in 0..PRODUCT_RULE_PAIRS {
        let (f, g) = (random_expression(&mut rng, &shape), random_expression(&mut rng, &shape));
        let lhs = calc.partial_t(&(&f * &g));
        let mut rhs = &(&calc.partial_t(&f) * &g) + &(&f * &calc.partial_t(&g));
        for i in 1..=3 {
            rhs += &(&calc.partial_i(&f, i).unwrap() * &calc.partial_i(&g, i).unwrap());
        }
        good += usize::from(lhs == rhs);
    }
    Outcome { passed: good == PRODUCT_RULE_PAIRS, detail: format!("{good}/{PRODUCT_RULE_PAIRS} random pairs exact") }
}

fn flat_world() -> Outcome {
    let mut hams: Vec<Expression> =
        ["P1^2/2", "P1^2/2 + X1^2", "X1*P1 + P1*X1"].iter().map(|s| parse(s).unwrap()).collect();
    let shape = ExprShape::new(vec![gen("X1"), gen("X2"), gen("P1"), gen("P2")], 3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    hams.extend((0..RANDOM_HAMILTONIANS).map(|_| random_expression(&mut rng, &shape)));
    let hamilton_ok =
        hams.iter().filter(|h| hamilton_check(&FlatContext::new(2, (*h).clone()).unwrap()).unwrap().passed()).count();

    let free_shape = ExprShape::new(vec![gen("Y"), gen("Z")], 2, 3);
    let heisenberg_ok = heisenberg_check().residual.is_zero()
        && (0..20).all(|_| {
            let (psi, h) = (random_expression(&mut rng, &free_shape), random_expression(&mut rng, &free_shape));
            heisenberg_residual(&psi, &h).residual.is_zero()
        });

    let pot_shape = ExprShape::new(vec![gen("Y"), gen("Z"), gen("P1")], 2, 3);
    let f_shape = ExprShape::new(vec![gen("F"), gen("Y")], 2, 3);
    let mut curvature_pairs = 0;
    let mut curvature_ok = 0;
    for d in 2..=4u32 {
        for _ in 0..3 {
            let pots = (0..d).map(|_| random_expression(&mut rng, &pot_shape)).collect();
            let ctx = GaugeContext::with_potentials(pots).unwrap();
            let f = random_expression(&mut rng, &f_shape);
            for i in 1..=d {
                for j in (i + 1)..=d {
                    curvature_pairs += 1;
                    curvature_ok += usize::from(curvature_check(&ctx, i, j, &f).unwrap().is_zero());
                }
            }
        }
    }
    Outcome {
        passed: hamilton_ok == hams.len() && heisenberg_ok && curvature_ok == curvature_pairs,
        detail: format!(
            "Hamilton {hamilton_ok}/{}; Heisenberg residual zero: {heisenberg_ok}; curvature {curvature_ok}/{curvature_pairs} at d = 2,3,4",
            hams.len()
        ),
    }
}

fn brownian_identity() -> Outcome {
    let start = Instant::now();
    let mut good = 0;
    let mut total = 0;
    for (k, tau) in [(q(1, 1), q(1, 1)), (q(4, 1), q(1, 1)), (q(1, 1), q(1, 4)), (q(9, 1), q(1, 3))] {
        for (s, &len) in BROWNIAN_LENGTHS.iter().enumerate() {
            total += 1;
            let x = generate_walk::<Surd>(s as u64, len, &k, &tau, 1).unwrap();
            let expected = JElement::term(1, Series::constant(Surd::rational(k.clone()), len - 1));
            good += usize::from(brownian_commutator(&x).unwrap()[0] == expected);
        }
    }
    let t = start.elapsed();
    Outcome {
        passed: good == total && t < BROWNIAN_BUDGET,
        detail: format!("{good}/{total} walks give [X,Xdot] = J k exactly; {:.3} s", t.as_secs_f64()),
    }
}

fn numeric_end_to_end() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut good = 0;
    for _ in 0..NUMERIC_SERIES {
        let x = random_uniform(&mut rng, NUMERIC_LENGTH, 3, &q(1, 1)).unwrap();
        let r = numeric_theorem_residuals(&x).unwrap();
        worst = worst.max(r.max_scaled());
        good += usize::from(r.max_scaled() < NUMERIC_TOLERANCE);
    }
    let walks = [(q(1, 1), q(1, 1)), (q(4, 1), q(1, 1)), (q(1, 1), q(1, 4)), (q(9, 1), q(1, 3))];
    for s in 0..NUMERIC_SERIES {
        let (k, tau) = &walks[s % walks.len()];
        let x = generate_walk::<f64>(s as u64, NUMERIC_LENGTH, k, tau, 3).unwrap();
        let r = numeric_theorem_residuals(&x).unwrap();
        worst = worst.max(r.max_scaled());
        good += usize::from(r.max_scaled() < NUMERIC_TOLERANCE);
    }
    let mut linear_zero = true;
    for tau in [q(1, 1), q(1, 3)] {
        let a: Vec<f64> = (0..3).map(|_| f64::from(rng.gen_range(-9..=9))).collect();
        let b: Vec<f64> = (0..3).map(|_| f64::from(rng.gen_range(-9..=9))).collect();
        let x = linear(NUMERIC_LENGTH, &a, &b, &tau).unwrap();
        let r = numeric_theorem_residuals(&x).unwrap();
        linear_zero &= r.equations.iter().all(|e| e.max_abs() == 0.0);
    }
    let t = start.elapsed();
    Outcome {
        passed: good == 2 * NUMERIC_SERIES && linear_zero && t < NUMERIC_BUDGET,
        detail: format!(
            "{good}/{} series below {NUMERIC_TOLERANCE:e} (worst {worst:.3e}); linear series exactly zero: {linear_zero}; {:.3} s",
            2 * NUMERIC_SERIES,
            t.as_secs_f64()
        ),
    }
}

fn dual_route() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let taus = [q(1, 1), q(1, 4), q(1, 3), q(5, 2)];
    let mut worst: f64 = 0.0;
    let mut good = 0;
    for s in 0..ROUTE_SERIES {
        let len = rng.gen_range(4..=64);
        let x = random_uniform(&mut rng, len, 3, &taus[s % taus.len()]).unwrap();
        let a = e_route_agreement(&x).unwrap();
        if a.scale > 0.0 {
            worst = worst.max(a.max_abs_diff / a.scale);
        }
        good += usize::from(a.within_relative(ROUTE_TOLERANCE));
    }
    Outcome {
        passed: good == ROUTE_SERIES,
        detail: format!("{good}/{ROUTE_SERIES} series agree within {ROUTE_TOLERANCE:e} relative (worst {worst:.3e})"),
    }
}

fn rewriting_hygiene() -> Outcome {
    let modes: [(&str, RelationSet, Vec<Generator>); 3] = [
        ("free", RelationSet::free(), vec![gen("X1"), gen("X2"), gen("Y."), gen("J")]),
        ("shift", RelationSet::shift(), vec![gen("J"), gen("X1"), gen("X1'"), gen("Y")]),
        ("flat", RelationSet::flat(2), vec![gen("X1"), gen("X2"), gen("P1"), gen("P2")]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut parts = Vec::new();
    let mut all = true;
    for (name, rel, pool) in &modes {
        let shape = ExprShape::new(pool.clone(), 5, 5);
        let mut good = 0;
        for _ in 0..HYGIENE_EXPRESSIONS {
            let e = random_expression(&mut rng, &shape);
            let n = rel.normalize(&e).unwrap();
            let idempotent = rel.normalize(&n).unwrap() == n;
            let order_free =
                rel.normalize_random(&e, &mut rng).unwrap() == n && rel.normalize_random(&e, &mut rng).unwrap() == n;
            good += usize::from(idempotent && order_free);
        }
        all &= good == HYGIENE_EXPRESSIONS;
        parts.push(format!("{name} {good}/{HYGIENE_EXPRESSIONS}"));
    }
    Outcome { passed: all, detail: parts.join(", ") }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("epsilon identity", epsilon_identity),
        ("electromagnetic theorem", electromagnetic_theorem),
        ("acceleration identity", acceleration_identity),
        ("modified product rule", product_rule),
        ("Hamilton, Heisenberg, curvature", flat_world),
        ("Brownian diffusion identity", brownian_identity),
        ("numeric end-to-end", numeric_end_to_end),
        ("dual-route electric field", dual_route),
        ("rewriting hygiene", rewriting_hygiene),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("[{}] {}. {name}: {}", if o.passed { "PASS" } else { "FAIL" }, n + 1, o.detail);
        if !o.passed {
            failed.push(n + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
