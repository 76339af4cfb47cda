use crate::charges::{ChargeConfiguration, PolarPoint, RieszExponent};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::potential::{half_angle_sine, ring_kernel};

use super::{beta_function, gauss_2f1, QuadratureRule};

fn check_rule<T: Real>(beta: T, rule: &QuadratureRule<T>) -> Result<()> {
    if rule.beta() != beta {
        return Err(Error::domain(format!(
            "quadrature rule built for beta = {}, evaluator called with {beta}",
            rule.beta()
        )));
    }
    Ok(())
}

/// `sin(πβ)/π`, the reciprocal of the weight's zeroth moment.
fn moment_scale<T: Real>(beta: T) -> T {
    (T::PI() * beta).sin() / T::PI()
}

/// `U_β(r, θ)` through its integral representation; `0 < β < 1` only.
pub fn integral_potential<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    p: PolarPoint<T>,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let b = beta.require_fractional()?;
    check_rule(b, rule)?;
    let n = cfg.n();
    let r = p.r();
    let sh = half_angle_sine(cfg, p.theta());
    let r2 = r * r;
    let integral = rule.integrate(|t| (T::one() - r2 * t).powf(-b) * ring_kernel(n, r * t, sh));
    Ok(T::of(n) * moment_scale(b) * integral)
}

/// `J_n^β(r) = ∫₀¹ t^{β−1}(1−t)^{−β}(1 − r²t)^{−β} (1 − (rt)ⁿ)/(1 + (rt)ⁿ) dt`,
/// so that `u_β(r) = (n sin πβ/π) J_n^β(r)`.
pub fn j_integral<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    r: T,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let b = beta.require_fractional()?;
    check_rule(b, rule)?;
    let n = cfg.n() as i32;
    let r2 = r * r;
    Ok(rule.integrate(|t| {
        let s = (r * t).powi(n);
        (T::one() - r2 * t).powf(-b) * (T::one() - s) / (T::one() + s)
    }))
}

/// `g_n(r, t) = β(1 − (rt)^{2n}) − n r^{n−2} t^{n−1} (1 − r²t)`.
pub fn g_n_factor<T: Real>(n: usize, beta: T, r: T, t: T) -> T {
    let ni = n as i32;
    let rt_n = (r * t).powi(ni);
    beta * (T::one() - rt_n * rt_n) - T::of(n) * r.powi(ni - 2) * t.powi(ni - 1) * (T::one() - r * r * t)
}

/// `dJ_n^β/dr = 2r ∫₀¹ t^β(1−t)^{−β}(1 − r²t)^{−(β+1)} g_n(r,t) / (1 + (rt)ⁿ)² dt`.
pub fn j_derivative<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    r: T,
    rule: &QuadratureRule<T>,
) -> Result<T> {
    let b = beta.require_fractional()?;
    check_rule(b, rule)?;
    let n = cfg.n();
    let r2 = r * r;
    let integral = rule.integrate(|t| {
        let s = T::one() + (r * t).powi(n as i32);
        t * (T::one() - r2 * t).powf(-b - T::one()) * g_n_factor(n, b, r, t) / (s * s)
    });
    Ok(T::two() * r * integral)
}

/// Fourier coefficient `b_m` of `|1 − r e^{iθ}|^{−2β}`:
/// `(sin βπ/π) r^{|m|} ∫₀¹ (1−t)^{−β} t^{β−1} t^{|m|} (1 − tr²)^{−β} dt`.
pub fn fourier_coefficient<T: Real>(m: i64, r: T, beta: &RieszExponent<T>, rule: &QuadratureRule<T>) -> Result<T> {
    let b = beta.require_fractional()?;
    check_rule(b, rule)?;
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::domain(format!("radius must lie in [0, 1), got {r}")));
    }
    let k = m.unsigned_abs() as i32;
    let r2 = r * r;
    let integral = rule.integrate(|t| t.powi(k) * (T::one() - t * r2).powf(-b));
    Ok(moment_scale(b) * r.powi(k) * integral)
}

/// `B(1 + β, 1 − β) ₂F₁(1 + β, 1 + β; 2; r²)`, the closed form of
/// `∫₀¹ t^β(1−t)^{−β}(1 − r²t)^{−(β+1)} dt`.
pub fn meanvalue_identity_rhs<T: Real>(beta: T, r: T) -> Result<T> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::domain(format!("identity needs 0 < beta < 1, got {beta}")));
    }
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::domain(format!("radius must lie in [0, 1), got {r}")));
    }
    let a = T::one() + beta;
    Ok(beta_function(a, T::one() - beta)? * gauss_2f1(a, a, T::two(), r * r)?)
}
