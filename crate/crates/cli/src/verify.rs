use std::fs;
use std::time::{Duration, Instant};

use ncworlds::emtheorem::{check_law, derive_jacobi_correction, jacobi_extension_check, EMContext, Law};
use ncworlds::flatworld::{curvature_check, hamilton_check, heisenberg_check, FlatContext, GaugeContext};
use ncworlds::ncalg::random::{random_expression, random_scalar, ExprShape};
use ncworlds::ncalg::{parse, Expression, Generator, RelationSet, Scalar};
use ncworlds::veccalc::{cross, epsilon_contract, Calculus, StructureConstants, VectorExpr};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{pass_fail, to_json, Format};

pub const CHECKS: [&str; 12] = [
    "epsilon",
    "acceleration",
    "lorentz",
    "divB",
    "faraday",
    "ampere",
    "specializations",
    "jacobi",
    "product-rule",
    "hamilton",
    "heisenberg",
    "curvature",
];

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub terms_before: usize,
    pub terms_after: usize,
    pub detail: String,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'static str,
    structure_constants: &'a str,
    seed: u64,
    passed: bool,
    checks: &'a [CheckResult],
}

type Outcome = Result<CheckResult, ncworlds::Error>;

fn result(name: &'static str, terms_before: usize, terms_after: usize, detail: String) -> CheckResult {
    CheckResult { name, passed: terms_after == 0, terms_before, terms_after, detail }
}

/// Resolve `so3` or read a JSON tensor document from a path.
pub fn load_tensor(source: &str) -> Result<StructureConstants, String> {
    if let Some(f) = StructureConstants::builtin(source) {
        return Ok(f);
    }
    let text = fs::read_to_string(source).map_err(|e| format!("cannot read {source}: {e}"))?;
    StructureConstants::from_json(&text).map_err(|e| format!("{source}: {e}"))
}

/// Expand `--only` values, which may be repeated or comma separated.
pub fn select(only: &[String]) -> Result<Vec<&'static str>, String> {
    if only.is_empty() {
        return Ok(CHECKS.to_vec());
    }
    let mut picked = Vec::new();
    for name in only.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        let found = CHECKS
            .iter()
            .find(|c| c.eq_ignore_ascii_case(name))
            .ok_or_else(|| format!("unknown check '{name}'; expected one of: {}", CHECKS.join(", ")))?;
        if !picked.contains(found) {
            picked.push(*found);
        }
    }
    Ok(CHECKS.iter().copied().filter(|c| picked.contains(c)).collect())
}

fn epsilon() -> Outcome {
    let delta = |a: usize, b: usize| i64::from(a == b);
    let mut bad = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                for d in 1..=3 {
                    let expected = delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c);
                    if epsilon_contract(a, b, c, d)? != Scalar::from_int(expected) {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok(result("epsilon", 81, bad, format!("{} of 81 index quadruples match", 81 - bad)))
}

fn law(ctx: &EMContext, name: &'static str, law: Law) -> Outcome {
    let o = check_law(ctx, law, &RelationSet::free())?;
    Ok(result(name, o.terms_before, o.terms_after, law.statement().to_owned()))
}

/// Every law again under commuting and under random central velocity
/// commutators, where `B` becomes central and `B × B` must vanish.
fn specializations(ctx: &EMContext, seed: u64) -> Outcome {
    let d = ctx.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![vec![Scalar::zero(); d]; d];
    for row in c.iter_mut() {
        for v in row.iter_mut() {
            *v = random_scalar(&mut rng, 5);
        }
    }
    let rel_sets = [("commuting", ctx.commuting_relations()), ("central", ctx.velocity_relations(&c)?)];
    let (mut before, mut after) = (0, 0);
    for (_, rel) in &rel_sets {
        for l in Law::ALL {
            let o = check_law(ctx, l, rel)?;
            before += o.terms_before;
            after += o.terms_after;
        }
        let bxb = ctx.calculus().cross(ctx.magnetic(), ctx.magnetic())?;
        before += bxb.term_count();
        after += bxb.try_map(|e| rel.normalize(e))?.term_count();
    }
    Ok(result("specializations", before, after, "all laws and B x B = 0 under commuting and central velocities".into()))
}

fn jacobi(f: &StructureConstants) -> Outcome {
    let d = f.dim();
    let (a, b, c) =
        (VectorExpr::generators("A", d, 0), VectorExpr::generators("B", d, 0), VectorExpr::generators("C", d, 0));
    let lhs = cross(&a, &cross(&b, &c, f)?, f)?;
    let rhs = cross(&cross(&a, &b, f)?, &c, f)?;
    let residual = jacobi_extension_check(f, &a, &b, &c)?;
    let derived = derive_jacobi_correction(f);
    let mut mismatched = 0;
    for i in 1..=d {
        for j in 1..=d {
            for l in 1..=d {
                for r in 1..=d {
                    let closed = (1..=d).fold(Scalar::zero(), |s, k| &s + &(f.get(i, l, k) * f.get(j, k, r)));
                    if closed != derived[i - 1][j - 1][l - 1][r - 1] {
                        mismatched += 1;
                    }
                }
            }
        }
    }
    let detail = format!(
        "A x (B x C) = (A x B) x C + T(A,B,C); tensor satisfies Jacobi: {}; correction coefficients mismatched: {mismatched}",
        f.satisfies_jacobi()
    );
    Ok(result("jacobi", lhs.term_count() + rhs.term_count(), residual.term_count() + mismatched, detail))
}

fn product_rule(f: &StructureConstants, seed: u64) -> Outcome {
    const PAIRS: usize = 50;
    let calc = Calculus::new(f.clone());
    let d = calc.dim();
    let mut gens: Vec<Generator> = (1..=d).map(|i| calc.coordinate_generator(i, 1)).collect();
    gens.push(calc.coordinate_generator(1, 2));
    gens.push(Generator::new("Y"));
    let shape = ExprShape::new(gens, 3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut before, mut after) = (0, 0);
    for _ in 0..PAIRS {
        let (a, b) = (random_expression(&mut rng, &shape), random_expression(&mut rng, &shape));
        let lhs = calc.partial_t(&(&a * &b));
        let mut rhs = &(&calc.partial_t(&a) * &b) + &(&a * &calc.partial_t(&b));
        for i in 1..=d {
            rhs += &(&calc.partial_i(&a, i)? * &calc.partial_i(&b, i)?);
        }
        before += lhs.len() + rhs.len();
        after += (&lhs - &rhs).len();
    }
    Ok(result(
        "product-rule",
        before,
        after,
        format!("d_t(FG) = d_t(F)G + F d_t(G) + sum d_i(F) d_i(G) on {PAIRS} random pairs"),
    ))
}

fn hamilton(seed: u64) -> Outcome {
    const RANDOM: usize = 20;
    let mut hams: Vec<Expression> = ["P1^2/2", "P1^2/2 + X1^2", "X1*P1 + P1*X1"]
        .iter()
        .map(|s| parse(s).expect("fixed Hamiltonians parse"))
        .collect();
    let gens = vec![
        Generator::indexed("X", 1),
        Generator::indexed("X", 2),
        Generator::indexed("P", 1),
        Generator::indexed("P", 2),
    ];
    let shape = ExprShape::new(gens, 3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4a11);
    hams.extend((0..RANDOM).map(|_| random_expression(&mut rng, &shape)));
    let (mut before, mut after) = (0, 0);
    for h in &hams {
        let report = hamilton_check(&FlatContext::new(2, h.clone())?)?;
        before += h.len();
        after += report.entries.iter().map(|e| e.position_residual.len() + e.momentum_residual.len()).sum::<usize>();
    }
    Ok(result("hamilton", before, after, format!("Hamilton's equations for {} Hamiltonians", hams.len())))
}

fn heisenberg() -> Outcome {
    let r = heisenberg_check();
    Ok(result(
        "heisenberg",
        r.nabla_psi.len(),
        r.residual.len(),
        "i hbar nabla(psi) = [psi, H] with J = 1 + H dt/(i hbar)".into(),
    ))
}

fn curvature() -> Outcome {
    let f = Expression::gen(Generator::new("F"));
    let (mut pairs, mut after) = (0, 0);
    for d in 2..=4 {
        let ctx = GaugeContext::free(d);
        for i in 1..=d {
            for j in (i + 1)..=d {
                after += curvature_check(&ctx, i, j, &f)?.len();
                pairs += 1;
            }
        }
    }
    Ok(result("curvature", pairs, after, format!("[nabla_i, nabla_j]F = [R_ij, F] for {pairs} index pairs, d = 2..4")))
}

fn run_one(name: &'static str, ctx: &EMContext, seed: u64) -> Outcome {
    let f = ctx.calculus().structure();
    match name {
        "epsilon" => epsilon(),
        "specializations" => specializations(ctx, seed),
        "jacobi" => jacobi(f),
        "product-rule" => product_rule(f, seed),
        "hamilton" => hamilton(seed),
        "heisenberg" => heisenberg(),
        "curvature" => curvature(),
        other => {
            let l = Law::from_name(other).expect("check names are validated");
            law(ctx, l.name(), l)
        }
    }
}

pub struct VerifyRun {
    pub checks: Vec<CheckResult>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl VerifyRun {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Run the selected checks in parallel; results keep the selection order.
pub fn run(names: &[&'static str], f: StructureConstants, seed: u64) -> Result<VerifyRun, String> {
    let ctx = EMContext::new(f);
    let outcomes: Vec<(Outcome, Duration)> = names
        .par_iter()
        .map(|name| {
            let start = Instant::now();
            let out = run_one(name, &ctx, seed);
            (out, start.elapsed())
        })
        .collect();
    let mut checks = Vec::with_capacity(names.len());
    let mut timings = Vec::with_capacity(names.len());
    for (name, (out, time)) in names.iter().zip(outcomes) {
        checks.push(out.map_err(|e| format!("{name}: {e}"))?);
        timings.push((*name, time));
    }
    Ok(VerifyRun { checks, timings })
}

pub fn render(run: &VerifyRun, format: Format, tensor: &str, seed: u64) -> String {
    match format {
        Format::Json => to_json(&Report {
            command: "verify",
            structure_constants: tensor,
            seed,
            passed: run.passed(),
            checks: &run.checks,
        }),
        Format::Csv => {
            let mut s = String::from("check,passed,terms_before,terms_after\n");
            for c in &run.checks {
                s.push_str(&format!("{},{},{},{}\n", c.name, c.passed, c.terms_before, c.terms_after));
            }
            s
        }
        Format::Human => {
            let mut s = format!("structure constants: {tensor}\n");
            s.push_str(&format!(
                "{:<16} {:<6} {:>12} {:>11}  {}\n",
                "check", "result", "terms before", "terms after", "identity"
            ));
            for c in &run.checks {
                s.push_str(&format!(
                    "{:<16} {:<6} {:>12} {:>11}  {}\n",
                    c.name,
                    pass_fail(c.passed),
                    c.terms_before,
                    c.terms_after,
                    c.detail
                ));
            }
            let ok = run.checks.iter().filter(|c| c.passed).count();
            s.push_str(&format!("{ok}/{} checks passed\n", run.checks.len()));
            s
        }
    }
}
