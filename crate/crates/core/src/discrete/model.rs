use serde::Serialize;

use super::jelement::{jcross, JElement};
use super::num::Value;
use super::series::{Series, TimeSeries};
use crate::emtheorem::Law;
use crate::error::{Error, Result};

/// Absolute residual threshold, scaled by `max(1, magnitude)`.
pub const THRESHOLD: f64 = 1e-9;

pub type JVector<T> = Vec<JElement<T>>;

fn vsub<T: Value>(a: &[JElement<T>], b: &[JElement<T>]) -> JVector<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn vadd<T: Value>(a: &[JElement<T>], b: &[JElement<T>]) -> JVector<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn vmax_abs<T: Value>(v: &[JElement<T>]) -> f64 {
    v.iter().map(JElement::max_abs).fold(0.0, f64::max)
}

/// `Δ(X_i)/τ` for each component.
fn scaled_steps<T: Value>(x: &TimeSeries<T>) -> Vec<Series<T>> {
    let inv = x.inv_tau();
    x.components().iter().map(|c| c.diff().scale(&inv)).collect()
}

/// `Ẋ = J(X′ − X)/τ`, one element per component.
pub fn xdot<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    x.require(2)?;
    Ok(scaled_steps(x).into_iter().map(|u| JElement::term(1, u)).collect())
}

/// `[X_i, Ẋ_i]` computed in the crossed product, per component.
pub fn brownian_commutator<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    let v = xdot(x)?;
    Ok(x.components().into_iter().zip(&v).map(|(c, vi)| JElement::series(c).commutator(vi)).collect())
}

/// `(X′ − X)²/τ` for component `i` (1-based): the per-step diffusion estimate.
pub fn diffusion_track<T: Value>(x: &TimeSeries<T>, i: usize) -> Result<Series<T>> {
    x.require(2)?;
    if i == 0 || i > x.dim() {
        return Err(Error::IndexOutOfRange { index: i, dimension: x.dim() });
    }
    let d = x.component(i).diff();
    Ok(d.mul(&d).scale(&x.inv_tau()))
}

/// `B = Ẋ × Ẋ` multiplied out in the crossed product.
pub fn discrete_b<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    x.require_dim(3)?;
    x.require(3)?;
    let v = xdot(x)?;
    Ok(jcross(&v, &v))
}

fn cross_series<T: Value>(a: &[Series<T>], b: &[Series<T>]) -> Vec<Series<T>> {
    (0..3)
        .map(|k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            a[i].mul(&b[j]).sub(&a[j].mul(&b[i]))
        })
        .collect()
}

fn shifted<T: Value>(u: &[Series<T>], n: usize) -> Vec<Series<T>> {
    u.iter().map(|s| s.shift(n)).collect()
}

/// `B = J² Δ(X′) × Δ(X) / τ²`.
pub fn discrete_b_closed<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    x.require_dim(3)?;
    x.require(3)?;
    let u = scaled_steps(x);
    Ok(cross_series(&shifted(&u, 1), &u).into_iter().map(|s| JElement::term(2, s)).collect())
}

/// `E = J² Δ²(X)/τ² − J³ Δ(X″) × (Δ(X′) × Δ(X)) / τ³`.
pub fn discrete_e<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    x.require_dim(3)?;
    x.require(4)?;
    let inv = x.inv_tau();
    let u = scaled_steps(x);
    let inner = cross_series(&shifted(&u, 1), &u);
    let triple = cross_series(&shifted(&u, 2), &inner);
    Ok(u.iter()
        .zip(triple)
        .map(|(ui, ti)| JElement::term(2, ui.diff().scale(&inv)).sub(&JElement::term(3, ti)))
        .collect())
}

/// `E = Ẍ − Ẋ × (Ẋ × Ẋ)` multiplied out in the crossed product.
pub fn discrete_e_via_acceleration<T: Value>(x: &TimeSeries<T>) -> Result<JVector<T>> {
    x.require_dim(3)?;
    x.require(4)?;
    let calc = DiscreteCalculus::new(x)?;
    let v = calc.velocity();
    let acc: JVector<T> = v.iter().map(|c| calc.dot(c)).collect();
    let b = jcross(v, v);
    Ok(vsub(&acc, &jcross(v, &b)))
}

/// Largest difference between two element vectors against their magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Agreement {
    pub max_abs_diff: f64,
    pub scale: f64,
}

impl Agreement {
    pub fn of<T: Value>(a: &[JElement<T>], b: &[JElement<T>]) -> Self {
        Agreement { max_abs_diff: vmax_abs(&vsub(a, b)), scale: vmax_abs(a).max(vmax_abs(b)) }
    }

    /// `max_abs_diff ≤ tol · scale` (exact agreement when the scale is zero).
    pub fn within_relative(&self, tol: f64) -> bool {
        self.max_abs_diff <= tol * self.scale
    }
}

/// Agreement of the closed-form electric field with the `Ẍ − Ẋ × B` route.
pub fn e_route_agreement<T: Value>(x: &TimeSeries<T>) -> Result<Agreement> {
    Ok(Agreement::of(&discrete_e(x)?, &discrete_e_via_acceleration(x)?))
}

/// Commutator calculus in the crossed product generated by one series `X`.
#[derive(Clone, Debug)]
pub struct DiscreteCalculus<T> {
    inv_tau: T,
    xdot: JVector<T>,
}

impl<T: Value> DiscreteCalculus<T> {
    pub fn new(x: &TimeSeries<T>) -> Result<Self> {
        Ok(DiscreteCalculus { inv_tau: x.inv_tau(), xdot: xdot(x)? })
    }

    pub fn dim(&self) -> usize {
        self.xdot.len()
    }

    pub fn velocity(&self) -> &[JElement<T>] {
        &self.xdot
    }

    /// `Ġ = [G, J]/τ`.
    pub fn dot(&self, g: &JElement<T>) -> JElement<T> {
        g.shift_commutator().scale(&self.inv_tau)
    }

    /// `∂_i G = [G, Ẋ_i]`, 1-based.
    pub fn partial_i(&self, g: &JElement<T>, i: usize) -> JElement<T> {
        g.commutator(&self.xdot[i - 1])
    }

    /// `∂_t G = Ġ − Σ_i Ẋ_i [G, Ẋ_i]`.
    pub fn partial_t(&self, g: &JElement<T>) -> JElement<T> {
        let drift =
            (1..=self.dim()).fold(JElement::zero(), |acc, i| acc.add(&self.xdot[i - 1].mul(&self.partial_i(g, i))));
        self.dot(g).sub(&drift)
    }

    pub fn partial_t_vec(&self, v: &[JElement<T>]) -> JVector<T> {
        v.iter().map(|g| self.partial_t(g)).collect()
    }

    /// `Σ_i [V_i, Ẋ_i]`.
    pub fn divergence(&self, v: &[JElement<T>]) -> JElement<T> {
        v.iter().enumerate().fold(JElement::zero(), |acc, (i, g)| acc.add(&self.partial_i(g, i + 1)))
    }

    /// `(∇ × V)_k = Σ ε_ijk [V_j, Ẋ_i]` in three dimensions.
    pub fn curl(&self, v: &[JElement<T>]) -> JVector<T> {
        (0..3)
            .map(|k| {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                self.partial_i(&v[j], i + 1).sub(&self.partial_i(&v[i], j + 1))
            })
            .collect()
    }

    /// `Σ_i [[G, Ẋ_i], Ẋ_i]`.
    pub fn laplacian(&self, g: &JElement<T>) -> JElement<T> {
        (1..=self.dim()).fold(JElement::zero(), |acc, i| acc.add(&self.partial_i(&self.partial_i(g, i), i)))
    }
}

/// Definitional versus closed-form partial derivatives of a scalar series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartialCheck {
    /// Max `|[F, Ẋ_i] − Ḟ Δ_i|` per spatial index.
    pub spatial: Vec<f64>,
    /// Max `|∂_t F − (J ΔF/τ − J² (Δ′•Δ) ΔF/τ²)|`.
    pub temporal: f64,
    pub scale: f64,
}

impl PartialCheck {
    pub fn max_residual(&self) -> f64 {
        self.spatial.iter().copied().fold(self.temporal, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol * self.scale.max(1.0)
    }
}

/// Check `∂_i F = Ḟ Δ_i` and `∂_t F = J[1 − J Δ′•Δ/τ] ΔF/τ` for a scalar
/// series `F` (first component used) against their commutator definitions.
pub fn discrete_partial_checks<T: Value>(f: &TimeSeries<T>, x: &TimeSeries<T>) -> Result<PartialCheck> {
    f.require(4)?;
    x.require(4)?;
    if f.tau() != x.tau() {
        return Err(Error::InvalidParameter(format!("sample periods differ: {} and {}", f.tau(), x.tau())));
    }
    let calc = DiscreteCalculus::new(x)?;
    let fs = f.component(1);
    let fe = JElement::series(fs.clone());
    let fdot = calc.dot(&fe);
    let steps: Vec<Series<T>> = x.components().iter().map(Series::diff).collect();
    let mut scale = fdot.max_abs();
    let spatial = steps
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let def = calc.partial_i(&fe, i + 1);
            let closed = fdot.mul(&JElement::series(d.clone()));
            scale = scale.max(def.max_abs()).max(closed.max_abs());
            def.sub(&closed).max_abs()
        })
        .collect();
    let inv = x.inv_tau();
    let df = fs.diff();
    let dd = steps.iter().fold(Series::constant(T::zero(), x.len() - 2), |acc, d| acc.add(&d.shift(1).mul(d)));
    let closed_t = JElement::term(1, df.scale(&inv)).sub(&JElement::term(2, dd.mul(&df).scale(&inv.times(&inv))));
    let def_t = calc.partial_t(&fe);
    scale = scale.max(def_t.max_abs()).max(closed_t.max_abs());
    Ok(PartialCheck { spatial, temporal: def_t.sub(&closed_t).max_abs(), scale })
}

/// Residual of one equation at one shift power.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerResidual {
    pub j_power: u32,
    pub max_abs: f64,
    pub exact_zero: bool,
    /// Largest component residual at each `t` of the window.
    pub track: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquationResidual {
    pub law: Law,
    /// Largest coefficient among the pieces of the equation.
    pub scale: f64,
    pub powers: Vec<PowerResidual>,
}

impl EquationResidual {
    fn build<T: Value>(law: Law, residual: &[JElement<T>], scale: f64) -> Self {
        let mut powers: Vec<u32> = residual.iter().flat_map(JElement::powers).collect();
        powers.sort_unstable();
        powers.dedup();
        let powers = powers
            .into_iter()
            .map(|p| {
                let series: Vec<&Series<T>> = residual.iter().filter_map(|c| c.get(p)).collect();
                let len = series.iter().map(|s| s.len()).min().unwrap_or(0);
                let track: Vec<f64> =
                    (0..len).map(|t| series.iter().map(|s| s.values()[t].to_f64().abs()).fold(0.0, f64::max)).collect();
                PowerResidual {
                    j_power: p,
                    max_abs: track.iter().copied().fold(0.0, f64::max),
                    exact_zero: series.iter().all(|s| s.is_zero()),
                    track,
                }
            })
            .collect();
        EquationResidual { law, scale, powers }
    }

    pub fn max_abs(&self) -> f64 {
        self.powers.iter().map(|p| p.max_abs).fold(0.0, f64::max)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.powers.iter().all(|p| p.exact_zero)
    }

    /// Residual divided by `max(1, scale)`.
    pub fn scaled(&self) -> f64 {
        self.max_abs() / self.scale.max(1.0)
    }

    pub fn passed(&self, exact: bool) -> bool {
        if exact {
            self.is_exact_zero()
        } else {
            self.scaled() <= THRESHOLD
        }
    }
}

/// All identities evaluated on one series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremResiduals {
    pub exact: bool,
    pub window: usize,
    pub equations: Vec<EquationResidual>,
}

impl TheoremResiduals {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|e| e.passed(self.exact))
    }

    pub fn equation(&self, law: Law) -> Option<&EquationResidual> {
        self.equations.iter().find(|e| e.law == law)
    }

    pub fn max_scaled(&self) -> f64 {
        self.equations.iter().map(EquationResidual::scaled).fold(0.0, f64::max)
    }

    /// Rows `equation,j_power,t,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("equation,j_power,t,residual\n");
        for eq in &self.equations {
            for p in &eq.powers {
                for (t, r) in p.track.iter().enumerate() {
                    out.push_str(&format!("{},{},{},{}\n", eq.law.name(), p.j_power, t, format_f64(*r)));
                }
            }
        }
        out
    }
}

/// Fixed 17-significant-digit rendering.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Needed for the third differences and shifts in the Ampère identity.
pub const THEOREM_WINDOW: usize = 6;

/// Evaluate the acceleration identity and the four field equations on `X`
/// with `B` and `E` taken in closed form.
pub fn numeric_theorem_residuals<T: Value>(x: &TimeSeries<T>) -> Result<TheoremResiduals> {
    x.require_dim(3)?;
    x.require(THEOREM_WINDOW)?;
    let calc = DiscreteCalculus::new(x)?;
    let v = calc.velocity();
    let acc: JVector<T> = v.iter().map(|c| calc.dot(c)).collect();
    let b = discrete_b_closed(x)?;
    let e = discrete_e(x)?;
    let vxb = jcross(v, &b);
    let scale = |pieces: &[&[JElement<T>]]| pieces.iter().map(|p| vmax_abs(p)).fold(0.0, f64::max);

    let mut equations = Vec::with_capacity(Law::ALL.len());
    for law in Law::ALL {
        let (residual, mag) = match law {
            Law::Acceleration => {
                let dtv = calc.partial_t_vec(v);
                let triple = jcross(v, &jcross(v, v));
                (vsub(&vsub(&acc, &dtv), &triple), scale(&[&acc, &dtv, &triple]))
            }
            Law::Lorentz => (vsub(&vsub(&acc, &e), &vxb), scale(&[&acc, &e, &vxb])),
            Law::DivB => {
                let div = calc.divergence(&b);
                let pieces: JVector<T> = (0..3).map(|i| calc.partial_i(&b[i], i + 1)).collect();
                (vec![div], scale(&[&pieces]))
            }
            Law::Faraday => {
                let dtb = calc.partial_t_vec(&b);
                let curl_e = calc.curl(&e);
                let bxb = jcross(&b, &b);
                (vsub(&vadd(&dtb, &curl_e), &bxb), scale(&[&dtb, &curl_e, &bxb]))
            }
            Law::Ampere => {
                let dte = calc.partial_t_vec(&e);
                let curl_b = calc.curl(&b);
                let dt2v = calc.partial_t_vec(&calc.partial_t_vec(v));
                let lap: JVector<T> = v.iter().map(|c| calc.laplacian(c)).collect();
                let rhs = vsub(&dt2v, &lap);
                (vsub(&vsub(&dte, &curl_b), &rhs), scale(&[&dte, &curl_b, &dt2v, &lap]))
            }
        };
        equations.push(EquationResidual::build(law, &residual, mag));
    }
    Ok(TheoremResiduals { exact: T::EXACT, window: x.len(), equations })
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ts(tau: BigRational, rows: &[[i64; 3]]) -> TimeSeries<BigRational> {
        TimeSeries::new(tau, rows.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect()).unwrap()
    }

    #[test]
    fn xdot_of_ramp_is_ones() {
        let x = TimeSeries::new(q(1, 1), (0..5).map(|t| vec![t as f64]).collect()).unwrap();
        let v = xdot(&x).unwrap();
        assert_eq!(v[0], JElement::term(1, Series::constant(1.0, 4)));
        let c = brownian_commutator(&x).unwrap();
        assert_eq!(c[0], JElement::term(1, Series::constant(1.0, 4)));
    }

    #[test]
    fn window_errors() {
        let x = TimeSeries::new(q(1, 1), vec![vec![0.0]]).unwrap();
        assert!(matches!(xdot(&x), Err(Error::WindowTooShort { needed: 2, available: 1 })));
        let y = ts(q(1, 1), &[[0, 0, 0], [1, 0, 0], [1, 1, 0]]);
        assert!(discrete_b(&y).is_ok());
        assert!(matches!(discrete_e(&y), Err(Error::WindowTooShort { needed: 4, .. })));
        assert!(matches!(numeric_theorem_residuals(&y), Err(Error::WindowTooShort { needed: 6, .. })));
        let flat = TimeSeries::new(q(1, 1), vec![vec![0.0, 0.0]; 6]).unwrap();
        assert!(matches!(discrete_b(&flat), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn b_at_origin_from_unit_steps() {
        // Δ(X)(0) = e1, Δ(X)(1) = e2, so B(0) = e2 × e1 = −e3.
        let x = ts(q(1, 1), &[[0, 0, 0], [1, 0, 0], [1, 1, 0]]);
        let b = discrete_b(&x).unwrap();
        let at0: Vec<BigRational> = b.iter().map(|c| c.get(2).unwrap().values()[0].clone()).collect();
        assert_eq!(at0, vec![q(0, 1), q(0, 1), q(-1, 1)]);
        assert_eq!(b, discrete_b_closed(&x).unwrap());
    }

    #[test]
    fn quadratic_routes_agree_exactly() {
        let rows: Vec<[i64; 3]> = (0..8).map(|t| [t * t, 3 * t * t - t, -2 * t * t + 5]).collect();
        let x = ts(q(1, 2), &rows);
        let closed = discrete_e(&x).unwrap();
        let route = discrete_e_via_acceleration(&x).unwrap();
        for (a, b) in closed.iter().zip(&route) {
            assert!(a.sub(b).is_zero());
        }
        // Δ²X = (2, 6, −4), τ = 1/2
        assert_eq!(closed[1].get(2).unwrap().values()[0], q(24, 1));
    }

    #[test]
    fn linear_series_has_no_fields() {
        let rows: Vec<[i64; 3]> = (0..8).map(|t| [2 * t + 1, -t, 7]).collect();
        let x = ts(q(1, 3), &rows);
        assert!(discrete_b(&x).unwrap().iter().all(JElement::is_zero));
        assert!(discrete_e(&x).unwrap().iter().all(JElement::is_zero));
        let r = numeric_theorem_residuals(&x).unwrap();
        assert!(r.passed());
        assert!(r.equations.iter().all(|e| e.is_exact_zero() && e.max_abs() == 0.0));
    }

    #[test]
    fn partial_closed_forms_exact() {
        let x = ts(q(2, 3), &[[0, 1, 3], [2, -1, 4], [3, 5, 4], [-1, 2, 0], [6, 6, 1], [2, 0, 0]]);
        let f = x.map(|v| v.clone());
        let f1 = TimeSeries::from_components(q(2, 3), &[f.component(1)]).unwrap();
        let check = discrete_partial_checks(&f1, &x).unwrap();
        assert_eq!(check.max_residual(), 0.0);
        let c = TimeSeries::new(q(2, 3), vec![vec![q(5, 1)]; 6]).unwrap();
        let check = discrete_partial_checks(&c, &x).unwrap();
        assert_eq!(check.max_residual(), 0.0);
        assert_eq!(check.scale, 0.0);
    }

    #[test]
    fn theorem_on_small_integer_series_is_exact() {
        let x = ts(q(1, 1), &[[0, 1, 3], [2, -1, 4], [3, 5, 4], [-1, 2, 0], [6, 6, 1], [2, 0, 0], [1, 1, 1]]);
        let r = numeric_theorem_residuals(&x).unwrap();
        for eq in &r.equations {
            assert!(eq.is_exact_zero(), "{:?}", eq.law);
            assert!(!eq.powers.is_empty());
        }
        let top = r.equations.iter().flat_map(|e| e.powers.iter().map(|p| p.j_power)).max();
        assert_eq!(top, Some(5));
        let csv = r.to_csv();
        assert!(csv.starts_with("equation,j_power,t,residual\nacceleration,"));
    }
}
