use crate::error::{Error, Result};
use crate::num::Real;

/// `B(x, y) = Γ(x)Γ(y)/Γ(x + y)` via log-Gamma.
pub fn beta_function<T: Real>(x: T, y: T) -> Result<T> {
    if !(x > T::zero() && y > T::zero()) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!("beta function needs positive arguments, got ({x}, {y})")));
    }
    let (xf, yf) = (x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN));
    let value = statrs::function::beta::checked_beta(xf, yf).map_err(|e| Error::domain(e.to_string()))?;
    Ok(T::lit(value))
}
