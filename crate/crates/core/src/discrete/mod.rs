//! A concrete non-commutative world: sums `Σ J^m f_m` of shift powers over
//! sampled time series, multiplied with `f J = J f′`.
//!
//! In this algebra `Ẋ = J(X′ − X)/τ` and every derivative is a commutator, so
//! the field identities of [`crate::emtheorem`] can be checked numerically on
//! arbitrary series. Sample values may be `f64`, exact rationals, or exact
//! surds (needed for walks whose steps `±√(kτ)` are irrational).

mod jelement;
mod model;
mod num;
mod series;
mod walk;

pub use jelement::{jcross, jdot, JElement};
pub use model::{
    brownian_commutator, diffusion_track, discrete_b, discrete_b_closed, discrete_e, discrete_e_via_acceleration,
    discrete_partial_checks, e_route_agreement, format_f64, numeric_theorem_residuals, xdot, Agreement,
    DiscreteCalculus, EquationResidual, JVector, PartialCheck, PowerResidual, TheoremResiduals, THEOREM_WINDOW,
    THRESHOLD,
};
pub use num::{parse_rational, Surd, Value};
pub use series::{Series, TimeSeries};
pub use walk::{generate_walk, linear, random_quantized, random_uniform};
