//! Special functions, the matched-weight Gauss rule and the integral
//! representation of the polygon potential.
//!
//! For `0 < β < 1` the potential admits the representation
//!
//! ```text
//! U_β(r, θ) = (n sin πβ / π) ∫₀¹ t^{β−1}(1−t)^{−β} (1 − r²t)^{−β}
//!             · (1 − (rt)^{2n}) / |1 − (rt)ⁿ e^{inθ}|² dt
//! ```
//!
//! whose endpoint singularities are absorbed into the weight of a Gauss
//! rule. These evaluators share nothing with the direct sums in
//! [`crate::potential`] and serve as an independent check on them.

mod gamma;
mod hypergeometric;
mod integral;
mod quadrature;

pub use gamma::beta_function;
pub use hypergeometric::gauss_2f1;
pub use integral::{
    fourier_coefficient, g_n_factor, integral_potential, j_derivative, j_integral, meanvalue_identity_rhs,
};
pub use quadrature::{build_rule, QuadratureRule, DEFAULT_NODE_COUNT};
