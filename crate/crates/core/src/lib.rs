//! Riesz potential of `n` unit charges placed at the vertices of a regular
//! polygon inscribed in the unit circle.
//!
//! The crate evaluates
//!
//! ```text
//! U_β(r, θ) = Σ_{j=1}^{n} |r e^{iθ} − e^{2πij/n}|^{−2β}
//! ```
//!
//! inside the unit disk by direct summation, through an integral
//! representation (`0 < β < 1`) and in closed form (`β = 1`), locates every
//! equilibrium point and classifies it, and runs the parameter sweeps used by
//! the `riesz` command line tool.
//!
//! Numerical code is generic over [`num::Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`. The origin is always
//! an equilibrium and is handled as a special case by the solver.

// `!(x > 0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charges;
pub mod error;
pub mod experiments;
pub mod num;
pub mod potential;
pub mod solver;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num::Real;

pub type Config = charges::ChargeConfiguration<f64>;
pub type Exponent = charges::RieszExponent<f64>;
pub type Point = charges::PolarPoint<f64>;
pub type Rule = specfun::QuadratureRule<f64>;
pub type Equilibrium = solver::EquilibriumPoint<f64>;
pub type Bounds = solver::BoundPair<f64>;
