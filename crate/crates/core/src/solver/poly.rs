//! Polynomials attached to the equilibrium problem.
//!
//! * `p_n(r) = −r^{2n} + n rⁿ − n r^{n−2} + 1`, whose single zero in
//!   `(0, 1)` is the `β = 1` equilibrium radius.
//! * The polynomials obtained for `(n, β) = (3, 1/2)` and `(4, 1/2)` by
//!   clearing the square roots in `u'_β(r) = 0`.
//! * `f_β(r) = (1 + r)^{2β+1}(2r − 1) + (1 + r² − r)^{β+1}` for the
//!   triangle, whose positive root is the equilibrium radius for every
//!   `0 < β < 1`.
//!
//! Coefficient lists are in descending powers.

use crate::charges::check_n;
use crate::error::{Error, Result};
use crate::num::Real;

use super::roots::{refine_root, roots_in_interval, Root};

/// Coefficients of `p_n`, highest power first (length `2n + 1`).
pub fn pn_polynomial<T: Real>(n: usize) -> Result<Vec<T>> {
    check_n(n)?;
    let deg = 2 * n;
    let mut c = vec![T::zero(); deg + 1];
    c[0] = -T::one();
    c[deg - n] = T::of(n);
    c[deg - (n - 2)] = -T::of(n);
    c[deg] = T::one();
    Ok(c)
}

/// `p_n(r)`.
pub fn pn_eval<T: Real>(n: usize, r: T) -> T {
    let ni = n as i32;
    let nf = T::of(n);
    let rn = r.powi(ni);
    T::one() - rn * rn + nf * (rn - r.powi(ni - 2))
}

/// `p_n'(r) = −2n r^{2n−1} + n² r^{n−1} − n(n−2) r^{n−3}`.
pub fn pn_derivative<T: Real>(n: usize, r: T) -> T {
    let ni = n as i32;
    let nf = T::of(n);
    -T::two() * nf * r.powi(2 * ni - 1) + nf * nf * r.powi(ni - 1) - nf * T::of(n - 2) * r.powi(ni - 3)
}

/// `p_n''(r)`; the last term vanishes identically for `n = 3`.
pub fn pn_second_derivative<T: Real>(n: usize, r: T) -> T {
    let ni = n as i32;
    let nf = T::of(n);
    let mut v = -T::two() * nf * T::of(2 * n - 1) * r.powi(2 * ni - 2) + nf * nf * T::of(n - 1) * r.powi(ni - 2);
    if n > 3 {
        v = v - nf * T::of(n - 2) * T::of(n - 3) * r.powi(ni - 4);
    }
    v
}

/// Zeros of `p_n` in the open interval `(0, 1)`.
///
/// `p_n` has a double zero at `r = 1`, so the scan stops short of it; near
/// `1` the polynomial behaves like `−2n(1 − r)²` and cannot change sign.
pub fn pn_roots_in_unit_interval<T: Real>(n: usize) -> Result<Vec<Root<T>>> {
    check_n(n)?;
    let hi = T::one() - T::lit(1e-6);
    roots_in_interval(|r| pn_eval(n, r), |r| pn_derivative(n, r), T::zero(), hi, 4096)
}

/// Horner evaluation of a descending coefficient list.
pub fn polyval<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().fold(T::zero(), |acc, &c| acc * x + c)
}

/// Derivative of a descending coefficient list.
pub fn polyder<T: Real>(coeffs: &[T]) -> Vec<T> {
    let deg = coeffs.len().saturating_sub(1);
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * T::of(deg - i))
        .collect()
}

/// Sign changes in a coefficient sequence, zeros skipped.
pub fn descartes_sign_changes<T: Real>(coeffs: &[T]) -> Result<usize> {
    let mut last = 0i8;
    let mut changes = 0;
    for &c in coeffs {
        let s = if c > T::zero() {
            1
        } else if c < T::zero() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    if last == 0 {
        return Err(Error::domain("coefficient list has no non-zero entry"));
    }
    Ok(changes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolynomialSource {
    /// As printed in the literature.
    Printed,
    /// Obtained again by squaring `u'_β(r) = 0`.
    Rederived,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExamplePolynomial<T> {
    pub source: PolynomialSource,
    pub label: &'static str,
    pub coeffs: Vec<T>,
}

impl<T: Real> ExamplePolynomial<T> {
    pub fn eval(&self, x: T) -> T {
        polyval(&self.coeffs, x)
    }

    /// Roots on `[lo, hi]` by a fine sign scan.
    pub fn roots_in(&self, lo: T, hi: T) -> Result<Vec<Root<T>>> {
        let d = polyder(&self.coeffs);
        roots_in_interval(|x| polyval(&self.coeffs, x), |x| polyval(&d, x), lo, hi, 4096)
    }

    /// Smallest value on a uniform grid of `[lo, hi]`.
    pub fn grid_min(&self, lo: T, hi: T, points: usize) -> T {
        (0..=points)
            .map(|i| self.eval(lo + (hi - lo) * T::of(i) / T::of(points)))
            .fold(T::infinity(), T::min)
    }
}

/// Polynomials whose non-negative roots contain the equilibrium radius for
/// `(n, β) = (3, 1/2)` and `(4, 1/2)`.
pub fn example_polynomials<T: Real>(n: usize, beta: T) -> Result<Vec<ExamplePolynomial<T>>> {
    let to = |c: &[f64]| c.iter().map(|&x| T::lit(x)).collect::<Vec<T>>();
    if beta != T::lit(0.5) {
        return Err(Error::domain(format!("no example polynomial for n = {n}, beta = {beta}")));
    }
    match n {
        3 => Ok(vec![ExamplePolynomial {
            source: PolynomialSource::Printed,
            label: "r^5+5r^4+r^3+r^2-4r+1",
            coeffs: to(&[1.0, 5.0, 1.0, 1.0, -4.0, 1.0]),
        }]),
        4 => Ok(vec![
            ExamplePolynomial {
                source: PolynomialSource::Printed,
                label: "4r^6+r^5-4r^3+1",
                coeffs: to(&[4.0, 1.0, 0.0, -4.0, 0.0, 0.0, 1.0]),
            },
            ExamplePolynomial {
                source: PolynomialSource::Rederived,
                label: "4r^6+r^4-4r^2+1",
                coeffs: to(&[4.0, 0.0, 1.0, 0.0, -4.0, 0.0, 1.0]),
            },
        ]),
        _ => Err(Error::domain(format!("no example polynomial for n = {n}, beta = {beta}"))),
    }
}

/// `f_β(r) = (1 + r)^{2β+1}(2r − 1) + (1 + r² − r)^{β+1}`.
pub fn f_beta_triangle<T: Real>(r: T, beta: T) -> T {
    let one = T::one();
    (one + r).powf(T::two() * beta + one) * (T::two() * r - one) + (one + r * r - r).powf(beta + one)
}

fn f_beta_derivative<T: Real>(r: T, beta: T) -> T {
    let one = T::one();
    let two = T::two();
    let e = two * beta + one;
    let q = one + r * r - r;
    e * (one + r).powf(e - one) * (two * r - one) + two * (one + r).powf(e) + (beta + one) * q.powf(beta) * (two * r - one)
}

/// The positive root of `f_β` in `(0, 1/2)`.
///
/// `f_β(0) = 0` with `f_β'(0) = −3β < 0` and `f_β(1/2) > 0`, so the left
/// end is moved off zero by halving from `1/4` until `f_β` is negative.
pub fn f_beta_root<T: Real>(beta: T) -> Result<Root<T>> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::domain(format!("f_beta root needs 0 < beta < 1, got {beta}")));
    }
    let half = T::lit(0.5);
    let mut a = T::lit(0.25);
    while f_beta_triangle(a, beta) >= T::zero() {
        a = a * half;
        if a < T::lit(1e-12) {
            return Err(Error::Numerical(format!("f_beta has no negative value near 0 for beta = {beta}")));
        }
    }
    refine_root(|r| f_beta_triangle(r, beta), |r| f_beta_derivative(r, beta), a, half)
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn descartes_bounds_positive_roots(roots in proptest::collection::vec(0.05f64..3.0, 1..5), neg in proptest::collection::vec(-3.0f64..-0.05, 0..3)) {
            // build ∏(x − ρ) from known roots
            let mut coeffs = vec![1.0f64];
            for &rho in roots.iter().chain(&neg) {
                let mut next = vec![0.0; coeffs.len() + 1];
                for (i, &c) in coeffs.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] -= c * rho;
                }
                coeffs = next;
            }
            let changes = descartes_sign_changes(&coeffs).unwrap();
            prop_assert!(changes >= roots.len());
            prop_assert_eq!((changes - roots.len()) % 2, 0);
        }

        #[test]
        fn pn_root_is_unique(n in 3usize..25) {
            prop_assert_eq!(pn_roots_in_unit_interval::<f64>(n).unwrap().len(), 1);
        }

        #[test]
        fn f_beta_root_is_a_sign_change(beta in 0.01f64..0.99) {
            let root = f_beta_root(beta).unwrap();
            let (lo, hi) = root.bracket;
            prop_assert!(lo < hi || root.fx == 0.0);
            prop_assert!(f_beta_triangle(lo, beta) <= 0.0 && f_beta_triangle(hi, beta) >= 0.0);
        }
    }
}
