//! Regular-polygon charge configuration and polar points.
//!
//! `n` unit charges sit at the `n`-th roots of unity `e^{2πij/n}`,
//! `j = 1..n`. Besides the vertex rays the configuration records the `n`
//! perpendicular bisector rays `θ = πk/n`, `k` odd, on which all
//! non-trivial equilibria lie.

use crate::error::{Error, Result};
use crate::num::{cos_sin_pi_frac, Real};

/// Which evaluators accept a given exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainTag {
    /// `0 < β < 1`: integral representation available.
    Fractional,
    /// `β = 1`: closed forms available.
    Unit,
    /// `β > 1`: direct summation only.
    General,
}

/// Riesz parameter `β` of the pair potential `|x|^{-2β}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RieszExponent<T> {
    beta: T,
    tag: DomainTag,
}

impl<T: Real> RieszExponent<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::domain(format!("beta must be positive and finite, got {beta}")));
        }
        let tag = if beta < T::one() {
            DomainTag::Fractional
        } else if beta == T::one() {
            DomainTag::Unit
        } else {
            DomainTag::General
        };
        Ok(Self { beta, tag })
    }

    #[inline]
    pub fn value(&self) -> T {
        self.beta
    }

    #[inline]
    pub fn tag(&self) -> DomainTag {
        self.tag
    }

    /// Rejects exponents outside `(0, 1)`.
    pub fn require_fractional(&self) -> Result<T> {
        match self.tag {
            DomainTag::Fractional => Ok(self.beta),
            _ => Err(Error::domain(format!(
                "integral representation requires 0 < beta < 1, got {}",
                self.beta
            ))),
        }
    }

    /// Rejects anything but `β = 1`.
    pub fn require_unit(&self) -> Result<()> {
        match self.tag {
            DomainTag::Unit => Ok(()),
            _ => Err(Error::domain(format!("closed form requires beta = 1, got {}", self.beta))),
        }
    }
}

/// A point `z = r e^{iθ}` of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint<T> {
    r: T,
    theta: T,
}

impl<T: Real> PolarPoint<T> {
    /// Builds a point, reducing `theta` into `[0, 2π)`.
    pub fn new(r: T, theta: T) -> Result<Self> {
        if !(r >= T::zero() && r < T::one()) {
            return Err(Error::domain(format!("radius must lie in [0, 1), got {r}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain("angle must be finite"));
        }
        Ok(Self {
            r,
            theta: reduce_angle(theta),
        })
    }

    pub fn origin() -> Self {
        Self {
            r: T::zero(),
            theta: T::zero(),
        }
    }

    #[inline]
    pub fn r(&self) -> T {
        self.r
    }

    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle<T: Real>(theta: T) -> T {
    let two_pi = T::TAU();
    let mut t = theta % two_pi;
    if t < T::zero() {
        t = t + two_pi;
    }
    if t >= two_pi {
        t = T::zero();
    }
    t
}

/// `n` unit charges at the vertices of the regular `n`-gon inscribed in the
/// unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeConfiguration<T> {
    n: usize,
    vertex_angles: Vec<T>,
    bisector_angles: Vec<T>,
}

impl<T: Real> ChargeConfiguration<T> {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2πj/n` for `j = 1..n`, reduced into `[0, 2π)` and sorted.
    pub fn vertex_angles(&self) -> &[T] {
        &self.vertex_angles
    }

    /// `πk/n` for odd `k = 1, 3, …, 2n − 1`.
    pub fn bisector_angles(&self) -> &[T] {
        &self.bisector_angles
    }

    /// `(cos, sin)` of the direction from the bisector ray `θ = π/n` to the
    /// charges, i.e. of `θ_j = π(2j − 1)/n`.
    pub fn bisector_offsets(&self) -> impl Iterator<Item = (T, T)> + '_ {
        let n = self.n as i64;
        (1..=n).map(move |j| cos_sin_pi_frac(2 * j - 1, n))
    }

    /// Splits `theta` into the nearest symmetry ray `πk/n` and a remainder.
    ///
    /// A remainder within a few ulps of zero is flushed, so angles that
    /// denote a ray up to rounding are evaluated exactly on it.
    pub fn ray_decomposition(&self, theta: T) -> (i64, T) {
        let n = T::of(self.n);
        let k = (theta * n / T::PI()).round();
        let ray = T::PI() * k / n;
        let mut delta = theta - ray;
        let snap = T::lit(4.0) * T::epsilon() * ray.abs().max(T::one());
        if delta.abs() <= snap {
            delta = T::zero();
        }
        (k.to_i64().expect("ray index fits in i64"), delta)
    }
}

/// Builds the regular `n`-gon configuration.
pub fn regular_polygon<T: Real>(n: usize) -> Result<ChargeConfiguration<T>> {
    check_n(n)?;
    let nf = T::of(n);
    let mut vertex_angles: Vec<T> = (1..=n)
        .map(|j| T::TAU() * T::of(j % n) / nf)
        .collect();
    vertex_angles.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    Ok(ChargeConfiguration {
        n,
        vertex_angles,
        bisector_angles: bisector_angles(n)?,
    })
}

/// The `n` perpendicular-bisector angles `πk/n`, `k = 1, 3, …, 2n − 1`.
pub fn bisector_angles<T: Real>(n: usize) -> Result<Vec<T>> {
    check_n(n)?;
    let nf = T::of(n);
    Ok((0..n).map(|i| T::PI() * T::of(2 * i + 1) / nf).collect())
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("need at least 3 charges, got {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn triangle_angles() {
        let cfg = regular_polygon::<f64>(3).unwrap();
        let v = cfg.vertex_angles();
        // 2π reduces to 0, so the sorted list starts there.
        assert_eq!(v.len(), 3);
        assert!(v[0].abs() < 1e-15);
        assert!((v[1] - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((v[2] - 4.0 * PI / 3.0).abs() < 1e-15);
        let b = cfg.bisector_angles();
        assert!((b[0] - PI / 3.0).abs() < 1e-15);
        assert!((b[1] - PI).abs() < 1e-15);
        assert!((b[2] - 5.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn square_and_hexagon_bisectors() {
        let b = bisector_angles::<f64>(4).unwrap();
        let want = [PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0];
        for (x, y) in b.iter().zip(want) {
            assert!((x - y).abs() < 1e-15);
        }
        let b6 = bisector_angles::<f64>(6).unwrap();
        assert_eq!(b6.len(), 6);
        assert!((b6[0] - PI / 6.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_n() {
        assert!(regular_polygon::<f64>(2).unwrap_err().is_domain());
        assert!(bisector_angles::<f64>(0).is_err());
    }

    #[test]
    fn bisectors_interleave_vertices() {
        for n in 3..20 {
            let cfg = regular_polygon::<f64>(n).unwrap();
            let v = cfg.vertex_angles();
            let b = cfg.bisector_angles();
            for i in 0..n {
                assert!(v[i] < b[i], "n = {n}, i = {i}: {} vs {}", v[i], b[i]);
                let next = if i + 1 < n { v[i + 1] } else { 2.0 * PI };
                assert!(b[i] < next);
                // midpoint of the two adjacent vertices
                assert!((b[i] - 0.5 * (v[i] + next)).abs() < 1e-14);
            }
            for &a in b {
                let rotated = reduce_angle(a + 2.0 * PI / n as f64);
                assert!(b.iter().any(|&c| (c - rotated).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn exponent_tags() {
        assert_eq!(RieszExponent::new(0.5).unwrap().tag(), DomainTag::Fractional);
        assert_eq!(RieszExponent::new(1.0).unwrap().tag(), DomainTag::Unit);
        assert_eq!(RieszExponent::new(2.0).unwrap().tag(), DomainTag::General);
        assert!(RieszExponent::new(0.0).is_err());
        assert!(RieszExponent::new(f64::NAN).is_err());
        assert!(RieszExponent::new(1.5).unwrap().require_fractional().is_err());
        assert!(RieszExponent::new(0.5).unwrap().require_unit().is_err());
    }

    #[test]
    fn polar_point_validation() {
        assert!(PolarPoint::new(1.0, 0.0).is_err());
        assert!(PolarPoint::new(-0.1, 0.0).is_err());
        let p = PolarPoint::new(0.5, -PI / 3.0).unwrap();
        assert!((p.theta() - 5.0 * PI / 3.0).abs() < 1e-15);
        let q = PolarPoint::new(0.5, 7.0 * PI).unwrap();
        assert!((q.theta() - PI).abs() < 1e-14);
    }

    #[test]
    fn ray_decomposition_snaps() {
        let cfg = regular_polygon::<f64>(5).unwrap();
        assert_eq!(cfg.ray_decomposition(PI / 5.0), (1, 0.0));
        assert_eq!(cfg.ray_decomposition(3.0 * (PI / 5.0)), (3, 0.0));
        let (k, d) = cfg.ray_decomposition(0.1);
        assert_eq!(k, 0);
        assert!((d - 0.1).abs() < 1e-16);
    }
}
