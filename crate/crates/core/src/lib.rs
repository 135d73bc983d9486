//! Exact non-commutative calculus and discrete time-series models.
//!
//! * [`ncalg`]: free algebras over exact coefficients, commutators, the
//!   formal overdot, and normal forms modulo shift and commutator relations.
//! * [`veccalc`]: cross and dot products, curl, divergence, and the spatial
//!   and temporal partials defined through commutators with `Ẋ_i`.
//! * [`flatworld`]: Hamilton's equations, the Heisenberg equation and gauge
//!   curvature in flat (Weyl) coordinates.
//! * [`emtheorem`]: symbolic verification of the generalized Lorentz, Gauss,
//!   Faraday and Ampère laws in the free algebra.
//! * [`discrete`]: the crossed-product algebra of shift powers over time
//!   series, with numeric and exact backends.

pub mod discrete;
pub mod emtheorem;
mod error;
pub mod flatworld;
pub mod ncalg;
pub mod veccalc;

pub use error::{Error, Result};
