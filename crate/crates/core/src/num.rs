//! Scalar abstraction shared by every evaluator.
//!
//! All numerics are written against [`Real`], which is implemented for `f32`
//! and `f64`. Tolerances quoted throughout the crate assume `f64`; the `f32`
//! instantiation works but only to single-precision accuracy.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the evaluators and solvers.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Sum + Send + Sync + 'static
{
    /// `π − fl(π)`, the part of π lost when rounding to `Self`.
    fn pi_lo() -> Self;

    /// Next representable value towards `+∞`.
    fn next_up(self) -> Self;

    /// Next representable value towards `−∞`.
    fn next_down(self) -> Self;

    /// Converts an `f64` literal; every `f64` literal is representable
    /// (possibly rounded) in both supported types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to scalar")
    }

    /// Converts a count or index.
    #[inline]
    fn of(k: usize) -> Self {
        Self::from_usize(k).expect("integer converts to scalar")
    }

    #[inline]
    fn of_i64(k: i64) -> Self {
        Self::from_i64(k).expect("integer converts to scalar")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

macro_rules! impl_real {
    ($t:ty, $bits:ty) => {
        impl Real for $t {
            #[inline]
            fn pi_lo() -> Self {
                // 1.2246467991473532e-16 is π − fl64(π).
                let wide = std::f64::consts::PI - (std::f64::consts::PI as $t) as f64;
                (wide + 1.2246467991473532e-16) as $t
            }

            fn next_up(self) -> Self {
                if self.is_nan() || self == <$t>::INFINITY {
                    return self;
                }
                if self == 0.0 {
                    return <$t>::from_bits(1);
                }
                let bits = self.to_bits();
                if self > 0.0 {
                    <$t>::from_bits(bits + 1)
                } else {
                    <$t>::from_bits(bits - 1)
                }
            }

            fn next_down(self) -> Self {
                -(-self).next_up()
            }
        }
    };
}

impl_real!(f32, u32);
impl_real!(f64, u64);

/// Neumaier's variant of Kahan summation.
///
/// The running compensation captures the rounding error of every addition
/// exactly, so sums of many terms of mixed sign stay accurate to a few ulps
/// of the result rather than of the largest term.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    iter.into_iter().collect::<CompensatedSum<T>>().value()
}

/// `(cos(πm/n), sin(πm/n))` evaluated to within an ulp or so.
///
/// The angle is reduced with integer arithmetic, mapped into `[0, π/4]` by
/// symmetry and the rounding error of `π·p/q` is carried as a first-order
/// correction. Values that are exactly representable (0, ±1/2, ±1) come out
/// exact, and `m` and `−m` give bitwise-opposite sines.
pub fn cos_sin_pi_frac<T: Real>(m: i64, n: i64) -> (T, T) {
    assert!(n > 0, "denominator must be positive");
    let period = 2 * n;
    let mut k = m.rem_euclid(period);
    // sin(π(2n − k)/n) = −sin(πk/n)
    let mut sin_sign = T::one();
    if k > n {
        k = period - k;
        sin_sign = -T::one();
    }
    // k ∈ [0, n]; fold to [0, n/2] via cos(π − x) = −cos x.
    let mut cos_sign = T::one();
    if 2 * k > n {
        k = n - k;
        cos_sign = -T::one();
    }
    // k/n ∈ [0, 1/2]; fold to [0, 1/4] via swap of sin and cos.
    let swap = 4 * k > n;
    let (p, q) = if swap { (n - 2 * k, 2 * n) } else { (k, n) };
    let (c, s) = cos_sin_small(p, q);
    let (c, s) = if swap { (s, c) } else { (c, s) };
    (cos_sign * c, sin_sign * s)
}

/// cos and sin of `πp/q` for `0 ≤ p/q ≤ 1/4`.
fn cos_sin_small<T: Real>(p: i64, q: i64) -> (T, T) {
    if p == 0 {
        return (T::one(), T::zero());
    }
    if 6 * p == q {
        // π/6 has sin exactly 1/2.
        let s = T::lit(0.5);
        return (cos_sin_correct::<T>(p, q).0, s);
    }
    cos_sin_correct(p, q)
}

fn cos_sin_correct<T: Real>(p: i64, q: i64) -> (T, T) {
    let pf = T::of_i64(p);
    let qf = T::of_i64(q);
    let prod = T::PI() * pf;
    let prod_err = T::PI().mul_add(pf, -prod);
    let hi = prod / qf;
    let rem = (-hi).mul_add(qf, prod);
    let lo = (rem + prod_err + T::pi_lo() * pf) / qf;
    let (s, c) = hi.sin_cos();
    (c - s * lo, s + c * lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_special_angles() {
        assert_eq!(cos_sin_pi_frac::<f64>(1, 3), (0.5, cos_sin_pi_frac::<f64>(1, 3).1));
        assert_eq!(cos_sin_pi_frac::<f64>(2, 3).0, -0.5);
        assert_eq!(cos_sin_pi_frac::<f64>(3, 3), (-1.0, 0.0));
        assert_eq!(cos_sin_pi_frac::<f64>(1, 2), (0.0, 1.0));
        assert_eq!(cos_sin_pi_frac::<f64>(0, 7), (1.0, 0.0));
        assert_eq!(cos_sin_pi_frac::<f64>(1, 6).1, 0.5);
        assert_eq!(cos_sin_pi_frac::<f64>(5, 3).0, 0.5);
    }

    #[test]
    fn matches_libm_closely() {
        for n in 1..40i64 {
            for m in -3 * n..3 * n {
                let (c, s) = cos_sin_pi_frac::<f64>(m, n);
                let x = std::f64::consts::PI * m as f64 / n as f64;
                assert!((c - x.cos()).abs() < 4e-15, "cos {m}/{n}");
                assert!((s - x.sin()).abs() < 4e-15, "sin {m}/{n}");
            }
        }
    }

    #[test]
    fn odd_symmetry_is_bitwise() {
        for n in 3..30i64 {
            for m in 0..2 * n {
                let (c1, s1) = cos_sin_pi_frac::<f64>(m, n);
                let (c2, s2) = cos_sin_pi_frac::<f64>(-m, n);
                assert_eq!(c1.to_bits(), c2.to_bits());
                assert_eq!(s1, -s2);
            }
        }
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(xs), 2.0);
        assert_ne!(xs.iter().sum::<f64>(), 2.0);
    }

    #[test]
    fn next_up_down() {
        assert!(1.0f64.next_up() > 1.0);
        assert_eq!(1.0f64.next_up().next_down(), 1.0);
        assert_eq!((-1.0f32).next_up().next_down(), -1.0);
        assert!(0.0f64.next_down() < 0.0);
        assert!(<f32 as Real>::pi_lo().abs() < 1e-6);
    }
}
