//! The generalized Feynman–Dyson electromagnetic identities, verified as exact
//! identities in the free algebra over the velocity generators `Ẋ_i` and
//! their higher overdots.
//!
//! With `B = Ẋ × Ẋ` and `E = ∂_t Ẋ`:
//!
//! 1. `Ẍ = E + Ẋ × B`
//! 2. `∇ • B = 0`
//! 3. `∂_t B + ∇ × E = B × B`
//! 4. `∂_t E − ∇ × B = (∂_t² − ∇²) Ẋ`
//!
//! Every check returns the residual (left side minus right side) so callers
//! can inspect it or normalize it in a quotient.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncalg::{Expression, Generator, Mode, RelationSet, Scalar, Word};
use crate::veccalc::{cross, Calculus, StructureConstants, VectorExpr};

/// Velocity vector with the derived fields `B` and `E`.
#[derive(Clone, Debug)]
pub struct EMContext {
    calc: Calculus,
    xdot: VectorExpr,
    b: VectorExpr,
    e: VectorExpr,
}

impl EMContext {
    pub fn new(f: StructureConstants) -> Self {
        let calc = Calculus::new(f);
        let xdot = calc.velocity();
        let b = calc.cross(&xdot, &xdot).expect("velocity matches tensor dimension");
        let e = calc.partial_t_vec(&xdot);
        EMContext { calc, xdot, b, e }
    }

    pub fn so3() -> Self {
        EMContext::new(StructureConstants::so3())
    }

    pub fn calculus(&self) -> &Calculus {
        &self.calc
    }

    pub fn dim(&self) -> usize {
        self.calc.dim()
    }

    pub fn velocity(&self) -> &VectorExpr {
        &self.xdot
    }

    /// `Ẍ`.
    pub fn acceleration(&self) -> VectorExpr {
        self.xdot.map(Expression::dot_derivative)
    }

    /// `B = Ẋ × Ẋ`.
    pub fn magnetic(&self) -> &VectorExpr {
        &self.b
    }

    /// `E = ∂_t Ẋ`.
    pub fn electric(&self) -> &VectorExpr {
        &self.e
    }

    /// `Ẋ_i`, `Ẍ_i`, ... up to `max_dots` overdots, for relation-set declarations.
    pub fn coordinate_generators(&self, max_dots: u32) -> Vec<Generator> {
        (1..=self.dim())
            .flat_map(|i| (1..=max_dots).map(move |k| (i, k)))
            .map(|(i, k)| self.calc.coordinate_generator(i, k))
            .collect()
    }

    /// Relation set imposing `[Ẋ_i, Ẋ_j] = c_ij` (central scalars, `i < j`
    /// taken from `c[i-1][j-1]`) and leaving higher overdots free.
    pub fn velocity_relations(&self, c: &[Vec<Scalar>]) -> Result<RelationSet> {
        let d = self.dim();
        if c.len() != d || c.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: c.len() });
        }
        let mut b = RelationSet::builder(Mode::Custom).declare(self.coordinate_generators(3));
        for i in 1..=d {
            for j in (i + 1)..=d {
                b = b.commutator(
                    self.calc.coordinate_generator(i, 1),
                    self.calc.coordinate_generator(j, 1),
                    c[i - 1][j - 1].clone(),
                );
            }
        }
        b.build()
    }

    /// All velocities mutually commuting.
    pub fn commuting_relations(&self) -> RelationSet {
        let d = self.dim();
        self.velocity_relations(&vec![vec![Scalar::zero(); d]; d]).expect("commuting relations are confluent")
    }
}

/// A residual with the number of terms in its constituent pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual<T> {
    pub value: T,
    /// Total terms across the pieces before they were combined.
    pub terms_before: usize,
}

fn vec_terms(vs: &[&VectorExpr]) -> usize {
    vs.iter().map(|v| v.term_count()).sum()
}

/// `Ẍ − ∂_t Ẋ − Ẋ × (Ẋ × Ẋ)`.
pub fn verify_acceleration(ctx: &EMContext) -> Residual<VectorExpr> {
    let acc = ctx.acceleration();
    let triple = ctx.calc.cross(&ctx.xdot, &ctx.b).expect("dimensions agree");
    let terms_before = vec_terms(&[&acc, &ctx.e, &triple]);
    Residual { value: &(&acc - &ctx.e) - &triple, terms_before }
}

/// `Ẍ − E − Ẋ × B`.
pub fn verify_lorentz(ctx: &EMContext) -> Residual<VectorExpr> {
    lorentz_residual(ctx, &ctx.acceleration(), &ctx.e, &ctx.b)
}

/// `Ẍ − E − Ẋ × B` for explicitly supplied fields.
pub fn lorentz_residual(ctx: &EMContext, acc: &VectorExpr, e: &VectorExpr, b: &VectorExpr) -> Residual<VectorExpr> {
    let force = ctx.calc.cross(&ctx.xdot, b).expect("dimensions agree");
    let terms_before = vec_terms(&[acc, e, &force]);
    Residual { value: &(acc - e) - &force, terms_before }
}

/// `∇ • B`.
pub fn verify_div_b(ctx: &EMContext) -> Residual<Expression> {
    let div = ctx.calc.divergence(&ctx.b).expect("dimensions agree");
    Residual { value: div, terms_before: 2 * ctx.b.term_count() * ctx.dim() }
}

/// `∂_t B + ∇ × E − B × B`.
pub fn verify_faraday(ctx: &EMContext) -> Residual<VectorExpr> {
    let dtb = ctx.calc.partial_t_vec(&ctx.b);
    let curl_e = ctx.calc.curl(&ctx.e).expect("dimensions agree");
    let bxb = ctx.calc.cross(&ctx.b, &ctx.b).expect("dimensions agree");
    let terms_before = vec_terms(&[&dtb, &curl_e, &bxb]);
    Residual { value: &(&dtb + &curl_e) - &bxb, terms_before }
}

/// `∂_t E − ∇ × B − (∂_t(∂_t Ẋ) − ∇² Ẋ)`.
pub fn verify_ampere(ctx: &EMContext) -> Residual<VectorExpr> {
    let dte = ctx.calc.partial_t_vec(&ctx.e);
    let curl_b = ctx.calc.curl(&ctx.b).expect("dimensions agree");
    let wave = &ctx.calc.partial_t_vec(&ctx.calc.partial_t_vec(&ctx.xdot)) - &ctx.calc.laplacian_vec(&ctx.xdot);
    let terms_before = vec_terms(&[&dte, &curl_b, &wave]);
    Residual { value: &(&dte - &curl_b) - &wave, terms_before }
}

/// Which identity a check verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Acceleration,
    Lorentz,
    #[serde(rename = "divB")]
    DivB,
    Faraday,
    Ampere,
}

impl Law {
    pub const ALL: [Law; 5] = [Law::Acceleration, Law::Lorentz, Law::DivB, Law::Faraday, Law::Ampere];

    pub fn name(self) -> &'static str {
        match self {
            Law::Acceleration => "acceleration",
            Law::Lorentz => "lorentz",
            Law::DivB => "divB",
            Law::Faraday => "faraday",
            Law::Ampere => "ampere",
        }
    }

    pub fn from_name(s: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    pub fn statement(self) -> &'static str {
        match self {
            Law::Acceleration => "Xddot = d_t Xdot + Xdot x (Xdot x Xdot)",
            Law::Lorentz => "Xddot = E + Xdot x B",
            Law::DivB => "div B = 0",
            Law::Faraday => "d_t B + curl E = B x B",
            Law::Ampere => "d_t E - curl B = (d_t^2 - lap) Xdot",
        }
    }
}

/// Outcome of one identity after normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: Law,
    pub terms_before: usize,
    pub terms_after: usize,
    pub passed: bool,
}

/// Run one identity and normalize its residual in `relations`.
pub fn check_law(ctx: &EMContext, law: Law, relations: &RelationSet) -> Result<LawOutcome> {
    let (terms_before, terms_after) = match law {
        Law::DivB => {
            let r = verify_div_b(ctx);
            (r.terms_before, relations.normalize(&r.value)?.len())
        }
        _ => {
            let r = match law {
                Law::Acceleration => verify_acceleration(ctx),
                Law::Lorentz => verify_lorentz(ctx),
                Law::Faraday => verify_faraday(ctx),
                Law::Ampere => verify_ampere(ctx),
                Law::DivB => unreachable!(),
            };
            let n = r.value.try_map(|e| relations.normalize(e))?;
            (r.terms_before, n.term_count())
        }
    };
    Ok(LawOutcome { law, terms_before, terms_after, passed: terms_after == 0 })
}

/// Brute-force the tensor `t[i][j][l][r]`, the coefficient of the word
/// `A_i B_j C_l` in component `r` of `A × (B × C) − (A × B) × C`, by expanding
/// both products over free generators.
pub fn derive_jacobi_correction(f: &StructureConstants) -> Vec<Vec<Vec<Vec<Scalar>>>> {
    let d = f.dim();
    let (a, b, c) =
        (VectorExpr::generators("A", d, 0), VectorExpr::generators("B", d, 0), VectorExpr::generators("C", d, 0));
    let lhs = cross(&a, &cross(&b, &c, f).unwrap(), f).unwrap();
    let rhs = cross(&cross(&a, &b, f).unwrap(), &c, f).unwrap();
    let diff = &lhs - &rhs;
    let g = |name: &str, i: usize| Generator::indexed(name, i as u32);
    let mut t = vec![vec![vec![vec![Scalar::zero(); d]; d]; d]; d];
    for i in 1..=d {
        for j in 1..=d {
            for l in 1..=d {
                let w = Word::from(vec![g("A", i), g("B", j), g("C", l)]);
                for r in 1..=d {
                    t[i - 1][j - 1][l - 1][r - 1] = diff[r].coefficient(&w);
                }
            }
        }
    }
    t
}

/// The correction term `T(A,B,C)_r = Σ_{ijlk} f_ilk f_jkr A_i B_j C_l`: the
/// cross product `B × (A × C)` with factors kept in the order `A B C`. The
/// Jacobi identity of `f` makes `A × (B × C) = (A × B) × C + T(A, B, C)`.
pub fn jacobi_correction(f: &StructureConstants, a: &VectorExpr, b: &VectorExpr, c: &VectorExpr) -> Result<VectorExpr> {
    let d = f.dim();
    for v in [a, b, c] {
        if v.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
        }
    }
    let mut out = vec![Expression::zero(); d];
    for i in 1..=d {
        for l in 1..=d {
            for k in 1..=d {
                let fil = f.get(i, l, k);
                if fil.is_zero() {
                    continue;
                }
                for j in 1..=d {
                    for (r, slot) in out.iter_mut().enumerate() {
                        let coeff = fil * f.get(j, k, r + 1);
                        if !coeff.is_zero() {
                            *slot += &(&(&a[i] * &b[j]) * &c[l]).scale(&coeff);
                        }
                    }
                }
            }
        }
    }
    Ok(VectorExpr::new(out))
}

/// `A × (B × C) − (A × B) × C − T(A, B, C)`; zero whenever `f` satisfies
/// the Jacobi identity.
pub fn jacobi_extension_check(
    f: &StructureConstants,
    a: &VectorExpr,
    b: &VectorExpr,
    c: &VectorExpr,
) -> Result<VectorExpr> {
    let lhs = cross(a, &cross(b, c, f)?, f)?;
    let rhs = cross(&cross(a, b, f)?, c, f)?;
    let t = jacobi_correction(f, a, b, c)?;
    Ok(&(&lhs - &rhs) - &t)
}
