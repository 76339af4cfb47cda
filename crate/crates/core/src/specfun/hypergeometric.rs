use crate::error::{Error, Result};
use crate::num::Real;

const MAX_TERMS: usize = 100_000;

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for `0 ≤ x < 1`.
///
/// Summed as a power series for `x ≤ 1/2`; above that the Euler
/// transformation `(1 − x)^{c−a−b} ₂F₁(c − a, c − b; c; x)` is summed
/// instead. Summation stops once a term drops below `1e−17` of the partial
/// sum.
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, x: T) -> Result<T> {
    if !(x >= T::zero() && x < T::one()) {
        return Err(Error::domain(format!("2F1 series needs 0 <= x < 1, got {x}")));
    }
    if c <= T::zero() && c == c.round() {
        return Err(Error::domain(format!("2F1 undefined for non-positive integer c = {c}")));
    }
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::domain("2F1 parameters must be finite"));
    }
    if x <= T::lit(0.5) {
        series(a, b, c, x)
    } else {
        let prefactor = (T::one() - x).powf(c - a - b);
        Ok(prefactor * series(c - a, c - b, c, x)?)
    }
}

fn series<T: Real>(a: T, b: T, c: T, x: T) -> Result<T> {
    let stop = T::lit(1e-17);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..MAX_TERMS {
        let kf = T::of(k);
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + T::one())) * x;
        sum = sum + term;
        if term == T::zero() || term.abs() <= stop * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Numerical(format!("2F1 series did not converge at x = {x}")))
}
