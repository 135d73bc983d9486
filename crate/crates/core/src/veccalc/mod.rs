//! Vector calculus over non-commuting components.
//!
//! Spatial partials are commutators with the velocity generators,
//! `∂_i(F) = [F, Ẋ_i]`, and the temporal partial is
//! `∂_t F = Ḟ − Σ_i Ẋ_i ∂_i(F)` with `Ẋ_i` multiplied on the left. Products
//! inside cross and dot products keep the left operand's components on the
//! left.

mod structure;

use std::ops::{Add, Index, Neg, Sub};

pub use structure::{epsilon, StructureConstants};

use crate::error::{Error, Result};
use crate::ncalg::{Expression, Generator, Scalar};

/// A fixed-length vector of expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorExpr(Vec<Expression>);

impl VectorExpr {
    pub fn new(components: Vec<Expression>) -> Self {
        VectorExpr(components)
    }

    pub fn zero(d: usize) -> Self {
        VectorExpr(vec![Expression::zero(); d])
    }

    /// Standard basis vector `e_i` (1-based) with scalar entries.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut v = VectorExpr::zero(d);
        v.0[i - 1] = Expression::one();
        v
    }

    /// Components `name_1 .. name_d` with `dots` overdots each.
    pub fn generators(name: &str, d: usize, dots: u32) -> Self {
        VectorExpr((1..=d as u32).map(|i| Expression::gen(Generator::indexed(name, i).dotted(dots))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Expression] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Expression> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expression::is_zero)
    }

    /// Total number of terms across components.
    pub fn term_count(&self) -> usize {
        self.0.iter().map(Expression::len).sum()
    }

    pub fn map<F: FnMut(&Expression) -> Expression>(&self, f: F) -> VectorExpr {
        VectorExpr(self.0.iter().map(f).collect())
    }

    pub fn try_map<F: FnMut(&Expression) -> Result<Expression>>(&self, f: F) -> Result<VectorExpr> {
        Ok(VectorExpr(self.0.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn scale(&self, c: &Scalar) -> VectorExpr {
        self.map(|e| e.scale(c))
    }

    /// Right-multiply every component by `s`: component `k` becomes `v_k · s`.
    pub fn mul_right(&self, s: &Expression) -> VectorExpr {
        self.map(|e| e * s)
    }

    /// Left-multiply every component by `s`.
    pub fn mul_left(&self, s: &Expression) -> VectorExpr {
        self.map(|e| s * e)
    }

    fn zip(&self, other: &VectorExpr, f: impl Fn(&Expression, &Expression) -> Expression) -> Result<VectorExpr> {
        same_dim(self, other)?;
        Ok(VectorExpr(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect()))
    }
}

impl Index<usize> for VectorExpr {
    type Output = Expression;
    /// 1-based component access.
    fn index(&self, i: usize) -> &Expression {
        &self.0[i - 1]
    }
}

impl Add for &VectorExpr {
    type Output = VectorExpr;
    fn add(self, rhs: &VectorExpr) -> VectorExpr {
        self.zip(rhs, |a, b| a + b).expect("vector dimensions agree")
    }
}

impl Sub for &VectorExpr {
    type Output = VectorExpr;
    fn sub(self, rhs: &VectorExpr) -> VectorExpr {
        self.zip(rhs, |a, b| a - b).expect("vector dimensions agree")
    }
}

impl Neg for &VectorExpr {
    type Output = VectorExpr;
    fn neg(self) -> VectorExpr {
        self.map(|e| -e)
    }
}

fn same_dim(a: &VectorExpr, b: &VectorExpr) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    Ok(())
}

/// `Σ_i A_i B_i` with the `A` factors on the left.
pub fn dot(a: &VectorExpr, b: &VectorExpr) -> Result<Expression> {
    same_dim(a, b)?;
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

/// Generalized cross product `(A × B)_k = Σ_ij f_ijk A_i B_j`.
pub fn cross(a: &VectorExpr, b: &VectorExpr, f: &StructureConstants) -> Result<VectorExpr> {
    same_dim(a, b)?;
    if a.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: a.dim() });
    }
    let d = f.dim();
    let mut out = vec![Expression::zero(); d];
    for i in 1..=d {
        for j in 1..=d {
            let ab = if (1..=d).any(|k| !f.get(i, j, k).is_zero()) { &a[i] * &b[j] } else { continue };
            for (k, slot) in out.iter_mut().enumerate() {
                let c = f.get(i, j, k + 1);
                if !c.is_zero() {
                    *slot += &ab.scale(c);
                }
            }
        }
    }
    Ok(VectorExpr(out))
}

/// `Σ_i ε_abi ε_cdi` computed from the epsilon tensor.
pub fn epsilon_contract(a: usize, b: usize, c: usize, d: usize) -> Result<Scalar> {
    for idx in [a, b, c, d] {
        if !(1..=3).contains(&idx) {
            return Err(Error::IndexOutOfRange { index: idx, dimension: 3 });
        }
    }
    let s: i64 = (1..=3).map(|i| epsilon(a, b, i) * epsilon(c, d, i)).sum();
    Ok(Scalar::from_int(s))
}

/// Residual `A × (B × C) − ((A•C)B − (A•B)C)` with products taken in the
/// order written, componentwise `(A•C)·B_r`. Zero when components commute.
pub fn bac_cab_check(a: &VectorExpr, b: &VectorExpr, c: &VectorExpr) -> Result<VectorExpr> {
    for v in [a, b, c] {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: v.dim() });
        }
    }
    let eps = StructureConstants::so3();
    let lhs = cross(a, &cross(b, c, &eps)?, &eps)?;
    let ac = dot(a, c)?;
    let ab = dot(a, b)?;
    let rhs = &b.mul_left(&ac) - &c.mul_left(&ab);
    Ok(&lhs - &rhs)
}

/// The non-commutative expansion forced by the epsilon identity:
/// `(A × (B × C))_r = Σ_i (A_i B_r C_i − A_i B_i C_r)`.
pub fn bac_cab_ordered(a: &VectorExpr, b: &VectorExpr, c: &VectorExpr) -> Result<VectorExpr> {
    for v in [a, b, c] {
        if v.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: v.dim() });
        }
    }
    let mut out = Vec::with_capacity(3);
    for r in 1..=3 {
        let mut acc = Expression::zero();
        for i in 1..=3 {
            acc += &(&(&a[i] * &b[r]) * &c[i]);
            acc -= &(&(&a[i] * &b[i]) * &c[r]);
        }
        out.push(acc);
    }
    Ok(VectorExpr(out))
}

/// Derivative operators attached to a coordinate family `X_1..X_d` and a
/// structure-constant tensor.
#[derive(Clone, Debug)]
pub struct Calculus {
    f: StructureConstants,
    coordinate: String,
    xdot: Vec<Expression>,
}

impl Calculus {
    pub fn new(f: StructureConstants) -> Self {
        Calculus::with_coordinate(f, "X")
    }

    pub fn with_coordinate(f: StructureConstants, coordinate: &str) -> Self {
        let xdot = (1..=f.dim() as u32).map(|i| Expression::gen(Generator::indexed(coordinate, i).dotted(1))).collect();
        Calculus { f, coordinate: coordinate.to_owned(), xdot }
    }

    pub fn so3() -> Self {
        Calculus::new(StructureConstants::so3())
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.f
    }

    pub fn coordinate(&self) -> &str {
        &self.coordinate
    }

    /// The generator `X_i` with `dots` overdots.
    pub fn coordinate_generator(&self, i: usize, dots: u32) -> Generator {
        Generator::indexed(&self.coordinate, i as u32).dotted(dots)
    }

    /// The velocity vector `Ẋ`.
    pub fn velocity(&self) -> VectorExpr {
        VectorExpr(self.xdot.clone())
    }

    /// `Ẋ_i` (1-based).
    pub fn xdot(&self, i: usize) -> Result<&Expression> {
        self.check_index(i)?;
        Ok(&self.xdot[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange { index: i, dimension: self.dim() });
        }
        Ok(())
    }

    fn check_dim(&self, v: &VectorExpr) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        Ok(())
    }

    pub fn cross(&self, a: &VectorExpr, b: &VectorExpr) -> Result<VectorExpr> {
        cross(a, b, &self.f)
    }

    /// `∂_i(F) = [F, Ẋ_i]`.
    pub fn partial_i(&self, f: &Expression, i: usize) -> Result<Expression> {
        Ok(f.commutator(self.xdot(i)?))
    }

    /// `∂_t F = Ḟ − Σ_i Ẋ_i [F, Ẋ_i]`.
    pub fn partial_t(&self, f: &Expression) -> Expression {
        let mut out = f.dot_derivative();
        for x in &self.xdot {
            out -= &(x * &f.commutator(x));
        }
        out
    }

    pub fn partial_t_vec(&self, v: &VectorExpr) -> VectorExpr {
        v.map(|e| self.partial_t(e))
    }

    /// `∇ • B = Σ_i [B_i, Ẋ_i]`.
    pub fn divergence(&self, b: &VectorExpr) -> Result<Expression> {
        self.check_dim(b)?;
        Ok(b.0.iter().zip(&self.xdot).map(|(bi, x)| bi.commutator(x)).sum())
    }

    /// `(∇ × E)_k = Σ_ij f_ijk [E_j, Ẋ_i]`.
    pub fn curl(&self, e: &VectorExpr) -> Result<VectorExpr> {
        self.check_dim(e)?;
        let d = self.dim();
        let mut out = vec![Expression::zero(); d];
        for i in 1..=d {
            for j in 1..=d {
                if (1..=d).all(|k| self.f.get(i, j, k).is_zero()) {
                    continue;
                }
                let dij = e[j].commutator(&self.xdot[i - 1]);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.f.get(i, j, k + 1);
                    if !c.is_zero() {
                        *slot += &dij.scale(c);
                    }
                }
            }
        }
        Ok(VectorExpr(out))
    }

    /// `∇² F = Σ_i [[F, Ẋ_i], Ẋ_i]`.
    pub fn laplacian(&self, f: &Expression) -> Expression {
        self.xdot.iter().map(|x| f.commutator(x).commutator(x)).sum()
    }

    pub fn laplacian_vec(&self, v: &VectorExpr) -> VectorExpr {
        v.map(|e| self.laplacian(e))
    }
}
