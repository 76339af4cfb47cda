//! Radial bounds on the non-trivial equilibria.

use crate::charges::check_n;
use crate::error::{Error, Result};
use crate::num::{cos_sin_pi_frac, Real};
use crate::specfun::beta_function;

/// `r_l(n, β) = (β/(β + n))^{1/(n−2)}`; below it `u'_β > 0`.
pub fn lower_bound<T: Real>(n: usize, beta: T) -> Result<T> {
    check_n(n)?;
    check_beta(beta)?;
    let nf = T::of(n);
    Ok((beta / (beta + nf)).powf(T::one() / T::of(n - 2)))
}

/// `cos(π/n)`, the apothem; no equilibrium on `[cos(π/n), 1)`.
pub fn apothem_bound<T: Real>(n: usize) -> Result<T> {
    check_n(n)?;
    Ok(cos_sin_pi_frac::<T>(1, n as i64).0)
}

/// `{4β(n + β) B(1 + β, 1 − 2β)}^{1/(n−2)}`, defined for `0 < β < 1/2`.
pub fn small_beta_bound<T: Real>(n: usize, beta: T) -> Result<T> {
    check_n(n)?;
    check_beta(beta)?;
    if !(beta < T::lit(0.5)) {
        return Err(Error::domain(format!("small-beta bound needs beta < 1/2, got {beta}")));
    }
    let b = beta_function(T::one() + beta, T::one() - T::two() * beta)?;
    let base = T::lit(4.0) * beta * (T::of(n) + beta) * b;
    Ok(base.powf(T::one() / T::of(n - 2)))
}

fn check_beta<T: Real>(beta: T) -> Result<()> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be positive and finite, got {beta}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair<T> {
    pub r_lower: T,
    pub r_upper: T,
    /// Only for `β < 1/2`.
    pub r_small_beta: Option<T>,
}

impl<T: Real> BoundPair<T> {
    /// `r_lower < r < r_upper`, and `r` below the small-β bound if present.
    pub fn contains(&self, r: T) -> bool {
        self.r_lower < r && r < self.r_upper && self.r_small_beta.is_none_or(|b| r < b)
    }
}

pub fn bound_pair<T: Real>(n: usize, beta: T) -> Result<BoundPair<T>> {
    let r_small_beta = if beta < T::lit(0.5) { Some(small_beta_bound(n, beta)?) } else { None };
    Ok(BoundPair {
        r_lower: lower_bound(n, beta)?,
        r_upper: apothem_bound(n)?,
        r_small_beta,
    })
}
