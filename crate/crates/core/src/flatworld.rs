//! Flat coordinates, Hamiltonian mechanics, the Heisenberg equation and gauge
//! curvature.

use crate::error::{Error, Result};
use crate::ncalg::{Expression, Generator, Mode, RelationSet, Scalar, Word};

pub fn position(i: u32) -> Generator {
    Generator::indexed("X", i)
}

pub fn momentum(i: u32) -> Generator {
    Generator::indexed("P", i)
}

/// Remove one occurrence of `g` at a time: `Σ_p w[..p] w[p+1..]` over the
/// positions `p` where `g` occurs. On sorted commuting factors this is the
/// ordinary polynomial derivative by `g`.
pub fn formal_partial(e: &Expression, g: Generator) -> Expression {
    let mut out = Expression::zero();
    for (w, c) in e.terms() {
        let gens = w.gens();
        for (p, h) in gens.iter().enumerate() {
            if *h == g {
                let mut v = gens.to_vec();
                v.remove(p);
                out.add_term(Word::from(v), c.clone());
            }
        }
    }
    out
}

/// Weyl algebra on `X_1..X_d, P_1..P_d` with a Hamiltonian.
#[derive(Clone, Debug)]
pub struct FlatContext {
    dim: u32,
    relations: RelationSet,
    hamiltonian: Expression,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonEntry {
    pub index: u32,
    /// `[X_i, H] − ∂H/∂P_i`, normalized.
    pub position_residual: Expression,
    /// `[P_i, H] + ∂H/∂X_i`, normalized.
    pub momentum_residual: Expression,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonReport {
    pub entries: Vec<HamiltonEntry>,
}

impl HamiltonReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.position_residual.is_zero() && e.momentum_residual.is_zero())
    }
}

impl FlatContext {
    pub fn new(dim: u32, hamiltonian: Expression) -> Result<Self> {
        for g in hamiltonian.generators() {
            if g.is_shift() || g.dot_order() > 0 || g.shift_order() > 0 {
                return Err(Error::NonPolynomialHamiltonian(g.to_string()));
            }
        }
        let relations = RelationSet::flat(dim);
        let hamiltonian = relations.normalize(&hamiltonian)?;
        Ok(FlatContext { dim, relations, hamiltonian })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    /// The Hamiltonian in normal order.
    pub fn hamiltonian(&self) -> &Expression {
        &self.hamiltonian
    }

    /// `dF/dt = [F, H]`, normalized.
    pub fn time_derivative(&self, f: &Expression) -> Result<Expression> {
        self.relations.normalize(&f.commutator(&self.hamiltonian))
    }

    /// `∂F/∂X_i = [F, P_i]`, normalized.
    pub fn partial_x(&self, f: &Expression, i: u32) -> Result<Expression> {
        self.relations.normalize(&f.commutator(&Expression::gen(momentum(i))))
    }

    /// `∂F/∂P_i = [X_i, F]`, normalized.
    pub fn partial_p(&self, f: &Expression, i: u32) -> Result<Expression> {
        self.relations.normalize(&Expression::gen(position(i)).commutator(f))
    }
}

/// Check `dX_i/dt = ∂H/∂P_i` and `dP_i/dt = −∂H/∂X_i` for every `i`.
pub fn hamilton_check(ctx: &FlatContext) -> Result<HamiltonReport> {
    let h = ctx.hamiltonian();
    let mut entries = Vec::with_capacity(ctx.dim as usize);
    for i in 1..=ctx.dim {
        let dx = ctx.time_derivative(&Expression::gen(position(i)))?;
        let dp = ctx.time_derivative(&Expression::gen(momentum(i)))?;
        let dh_dp = formal_partial(h, momentum(i));
        let dh_dx = formal_partial(h, position(i));
        entries.push(HamiltonEntry {
            index: i,
            position_residual: ctx.relations.normalize(&(dx - dh_dp))?,
            momentum_residual: ctx.relations.normalize(&(dp + dh_dx))?,
        });
    }
    Ok(HamiltonReport { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergReport {
    /// `∇ψ = [ψ, J/Δt]` after substituting `J = 1 + HΔt/(iħ)`.
    pub nabla_psi: Expression,
    /// `iħ ∇ψ − [ψ, H]`.
    pub residual: Expression,
}

/// The discrete derivative `[ψ, J/Δt]` with `J = 1 + HΔt/(iħ)`, compared
/// against `[ψ, H]/(iħ)`.
pub fn heisenberg_residual(psi: &Expression, h: &Expression) -> HeisenbergReport {
    let dt = Scalar::param("dt");
    let ihbar = &Scalar::i() * &Scalar::param("hbar");
    let j_over_dt = Expression::j().scale(&dt.inv().expect("dt is a nonzero parameter"));
    let nabla = psi.commutator(&j_over_dt);
    let shift = &Expression::one() + &h.scale(&(&dt / &ihbar));
    let nabla_psi = nabla.substitute(Generator::j(), &shift);
    let residual = &nabla_psi.scale(&ihbar) - &psi.commutator(h);
    HeisenbergReport { nabla_psi, residual }
}

/// The Heisenberg check with free generators `Psi` and `H`.
pub fn heisenberg_check() -> HeisenbergReport {
    heisenberg_residual(&Expression::gen(Generator::new("Psi")), &Expression::gen(Generator::new("H")))
}

/// Gauge potentials `A_i` over commuting momenta `P_i`, with connection
/// `𝒢_i = P_i − A_i`.
#[derive(Clone, Debug)]
pub struct GaugeContext {
    dim: u32,
    potentials: Vec<Expression>,
    relations: RelationSet,
}

impl GaugeContext {
    /// Free generators `A_1..A_d` as potentials.
    pub fn free(dim: u32) -> Self {
        let potentials = (1..=dim).map(|i| Expression::gen(Generator::indexed("A", i))).collect();
        GaugeContext::with_potentials(potentials).expect("free potentials are valid")
    }

    /// Arbitrary potentials; they may mention any generators except `J`.
    pub fn with_potentials(potentials: Vec<Expression>) -> Result<Self> {
        let dim = potentials.len() as u32;
        let mut b = RelationSet::builder(Mode::Custom);
        for i in 1..=dim {
            for j in (i + 1)..=dim {
                b = b.commutator(momentum(i), momentum(j), Scalar::zero());
            }
            b = b.declare([momentum(i)]);
        }
        for a in &potentials {
            if a.generators().iter().any(Generator::is_shift) {
                return Err(Error::InvalidParameter("gauge potentials cannot contain J".into()));
            }
            b = b.declare(a.generators());
        }
        Ok(GaugeContext { dim, potentials, relations: b.build()? })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    fn check(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange { index: i as usize, dimension: self.dim as usize });
        }
        Ok(())
    }

    pub fn potential(&self, i: u32) -> Result<&Expression> {
        self.check(i)?;
        Ok(&self.potentials[i as usize - 1])
    }

    /// `𝒢_i = P_i − A_i`.
    pub fn connection(&self, i: u32) -> Result<Expression> {
        Ok(Expression::gen(momentum(i)) - self.potential(i)?)
    }
}

/// `R_ij = ∂_i A_j − ∂_j A_i + [A_i, A_j]` with `∂_i F = [F, P_i]`, normalized.
pub fn curvature(ctx: &GaugeContext, i: u32, j: u32) -> Result<Expression> {
    let (ai, aj) = (ctx.potential(i)?, ctx.potential(j)?);
    let (pi, pj) = (Expression::gen(momentum(i)), Expression::gen(momentum(j)));
    let r = aj.commutator(&pi) - ai.commutator(&pj) + ai.commutator(aj);
    ctx.relations.normalize(&r)
}

/// `[∇_i, ∇_j]F − [R_ij, F]` with `∇_i(F) = [F, 𝒢_i]`, normalized.
pub fn curvature_check(ctx: &GaugeContext, i: u32, j: u32, f: &Expression) -> Result<Expression> {
    let (gi, gj) = (ctx.connection(i)?, ctx.connection(j)?);
    let r = curvature(ctx, i, j)?;
    let lhs = f.commutator(&gj).commutator(&gi) - f.commutator(&gi).commutator(&gj);
    let residual = lhs - r.commutator(f);
    ctx.relations.with_declared(f.generators()).normalize(&residual)
}
