//! Finite-sum evaluation of the polygon Riesz potential
//!
//! ```text
//! U_β(r, θ) = Σ_j (1 + r² − 2r cos(2πj/n − θ))^{−β}
//! ```
//!
//! together with its polar derivatives, the restriction `u_β(r) = U_β(r, π/n)`
//! to a bisector ray, and the `β = 1` closed forms.
//!
//! Angles are split as `θ = πk/n + δ` so that the per-charge phase
//! `2πj/n − θ = π(2j − k)/n − δ` is built from an exactly reduced rational
//! multiple of π. On a symmetry ray (`δ = 0`) the contributions of mirror
//! charges are bitwise mirrors of each other and the angular derivative
//! vanishes exactly.

use crate::charges::{ChargeConfiguration, PolarPoint, RieszExponent};
use crate::num::{compensated_sum, cos_sin_pi_frac, CompensatedSum, Real};
use crate::solver::poly::pn_eval;

/// Symmetric 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sym2<T> {
    pub a11: T,
    pub a12: T,
    pub a22: T,
}

impl<T: Real> Sym2<T> {
    pub fn as_array(&self) -> [[T; 2]; 2] {
        [[self.a11, self.a12], [self.a12, self.a22]]
    }

    pub fn trace(&self) -> T {
        self.a11 + self.a22
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (T, T) {
        let half = T::lit(0.5);
        let mean = half * (self.a11 + self.a22);
        let diff = half * (self.a11 - self.a22);
        let rad = diff.hypot(self.a12);
        let hi = mean + rad;
        let lo = mean - rad;
        // The smaller-magnitude root via the determinant avoids cancellation.
        let det = self.a11 * self.a22 - self.a12 * self.a12;
        if mean >= T::zero() {
            let lo = if hi != T::zero() { det / hi } else { lo };
            (lo, hi)
        } else {
            let hi = if lo != T::zero() { det / lo } else { hi };
            (lo, hi)
        }
    }
}

/// Per-charge phase `(cos φ_j, sin φ_j)` with `φ_j = 2πj/n − θ`.
fn phases<T: Real>(cfg: &ChargeConfiguration<T>, theta: T) -> impl Iterator<Item = (T, T)> + '_ {
    let n = cfg.n() as i64;
    let (k, delta) = cfg.ray_decomposition(theta);
    let (sd, cd) = delta.sin_cos();
    (1..=n).map(move |j| {
        let (c0, s0) = cos_sin_pi_frac::<T>(2 * j - k, n);
        if delta == T::zero() {
            (c0, s0)
        } else {
            (c0 * cd + s0 * sd, s0 * cd - c0 * sd)
        }
    })
}

/// Squared distance `1 + r² − 2r cos φ` between `r e^{iθ}` and a charge.
#[inline]
fn dist2<T: Real>(r: T, c: T) -> T {
    let one_minus_r = T::one() - r;
    one_minus_r * one_minus_r + T::two() * r * (T::one() - c)
}

/// `U_β(r, θ)` by direct summation over the charges.
pub fn potential_direct<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, p: PolarPoint<T>) -> T {
    let b = beta.value();
    let r = p.r();
    compensated_sum(phases(cfg, p.theta()).map(|(c, _)| dist2(r, c).powf(-b)))
}

/// `(∂U/∂r, ∂U/∂θ)`.
pub fn potential_gradient<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    p: PolarPoint<T>,
) -> (T, T) {
    let b = beta.value();
    let r = p.r();
    if r == T::zero() {
        // Σ_j cos(2πj/n − θ) = 0 for n ≥ 2.
        return (T::zero(), T::zero());
    }
    let two = T::two();
    let mut du_dr = CompensatedSum::new();
    let mut du_dt = CompensatedSum::new();
    for (c, s) in phases(cfg, p.theta()) {
        let f1 = -b * dist2(r, c).powf(-b - T::one());
        du_dr.add(f1 * two * (r - c));
        du_dt.add(f1 * (-two * r * s));
    }
    (du_dr.value(), du_dt.value())
}

/// Second partials of `U_β` in the polar coordinates `(r, θ)`.
pub fn potential_hessian<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    p: PolarPoint<T>,
) -> Sym2<T> {
    let b = beta.value();
    let r = p.r();
    let two = T::two();
    let (mut hrr, mut hrt, mut htt) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
    for (c, s) in phases(cfg, p.theta()) {
        let d = dist2(r, c);
        let f1 = -b * d.powf(-b - T::one());
        let f2 = b * (b + T::one()) * d.powf(-b - two);
        let d_r = two * (r - c);
        let d_t = -two * r * s;
        hrr.add(f2 * d_r * d_r + f1 * two);
        hrt.add(f2 * d_r * d_t - f1 * two * s);
        htt.add(f2 * d_t * d_t + f1 * two * r * c);
    }
    Sym2 {
        a11: hrr.value(),
        a12: hrt.value(),
        a22: htt.value(),
    }
}

/// Hessian of `U_β` as a function of the planar position, expressed in the
/// orthonormal (radial, tangential) frame at `p`.
///
/// Unlike [`potential_hessian`] this is regular at the origin, where it
/// equals `2β²n·I`.
pub fn frame_hessian<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, p: PolarPoint<T>) -> Sym2<T> {
    let b = beta.value();
    let r = p.r();
    let two = T::two();
    let four = two * two;
    let (mut h11, mut h12, mut h22) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
    for (c, s) in phases(cfg, p.theta()) {
        let d = dist2(r, c);
        let f1 = -b * d.powf(-b - T::one());
        let f2 = b * (b + T::one()) * d.powf(-b - two);
        // offset from the charge, rotated so the field point sits on the x axis
        let dx = r - c;
        let dy = -s;
        h11.add(two * f1 + four * f2 * dx * dx);
        h12.add(four * f2 * dx * dy);
        h22.add(two * f1 + four * f2 * dy * dy);
    }
    Sym2 {
        a11: h11.value(),
        a12: h12.value(),
        a22: h22.value(),
    }
}

/// `u_β(r) = U_β(r, π/n)`, the potential along a perpendicular bisector.
pub fn bisector_potential<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    let b = beta.value();
    compensated_sum(cfg.bisector_offsets().map(|(c, _)| dist2(r, c).powf(-b)))
}

/// `u'_β(r) = −2β Σ_j (r − cos θ_j)(1 + r² − 2r cos θ_j)^{−(β+1)}`.
pub fn bisector_derivative<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    if r == T::zero() {
        return T::zero();
    }
    let b = beta.value();
    let scale = T::two() * b;
    -scale * compensated_sum(cfg.bisector_offsets().map(|(c, _)| (r - c) * dist2(r, c).powf(-b - T::one())))
}

/// Sum of the magnitudes of the terms of [`bisector_derivative`]; the
/// natural scale of its rounding error.
pub fn bisector_derivative_scale<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    let b = beta.value();
    T::two()
        * b
        * cfg
            .bisector_offsets()
            .map(|(c, _)| ((r - c) * dist2(r, c).powf(-b - T::one())).abs())
            .sum::<T>()
}

/// `u''_β(r)`; equals `2β²n` at the origin.
pub fn bisector_second_derivative<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    let b = beta.value();
    let two = T::two();
    if r == T::zero() {
        return two * b * b * T::of(cfg.n());
    }
    compensated_sum(cfg.bisector_offsets().map(|(c, _)| {
        let d = dist2(r, c);
        let x = r - c;
        -two * b * d.powf(-b - T::one()) + two * two * b * (b + T::one()) * x * x * d.powf(-b - two)
    }))
}

/// `sin(nθ/2)`, exact on the symmetry rays.
pub(crate) fn half_angle_sine<T: Real>(cfg: &ChargeConfiguration<T>, theta: T) -> T {
    let (k, delta) = cfg.ray_decomposition(theta);
    // sin(nθ/2) = sin(πk/2 + nδ/2)
    let half = T::of(cfg.n()) * delta * T::lit(0.5);
    let s = if k.rem_euclid(2) == 0 { half.sin() } else { half.cos() };
    if k.rem_euclid(4) >= 2 {
        -s
    } else {
        s
    }
}

/// `(1 − x^{2n}) / |1 − xⁿ e^{inθ}|²` with the denominator written as
/// `(1 − xⁿ)² + 4xⁿ sin²(nθ/2)`.
pub(crate) fn ring_kernel<T: Real>(n: usize, x: T, half_sine: T) -> T {
    let xn = x.powi(n as i32);
    let one_minus = T::one() - xn;
    let denom = one_minus * one_minus + T::lit(4.0) * xn * half_sine * half_sine;
    one_minus * (T::one() + xn) / denom
}

/// `U_1(r, θ) = n/(1 − r²) · (1 − r^{2n}) / |1 − zⁿ|²`.
pub fn closed_form_beta1<T: Real>(cfg: &ChargeConfiguration<T>, p: PolarPoint<T>) -> T {
    let r = p.r();
    let kernel = ring_kernel(cfg.n(), r, half_angle_sine(cfg, p.theta()));
    T::of(cfg.n()) / ((T::one() - r) * (T::one() + r)) * kernel
}

/// `v(r) = U_1(r, π/n) = n(1 − rⁿ)/((1 − r²)(1 + rⁿ))`.
pub fn v_closed_form<T: Real>(cfg: &ChargeConfiguration<T>, r: T) -> T {
    let n = cfg.n();
    let rn = r.powi(n as i32);
    T::of(n) * (T::one() - rn) / ((T::one() - r) * (T::one() + r) * (T::one() + rn))
}

/// `v'(r) = 2n r p_n(r) / ((1 − r²)²(1 + rⁿ)²)`.
pub fn v_derivative<T: Real>(cfg: &ChargeConfiguration<T>, r: T) -> T {
    let n = cfg.n();
    let rn = r.powi(n as i32);
    let a = (T::one() - r) * (T::one() + r) * (T::one() + rn);
    T::two() * T::of(n) * r * pn_eval(n, r) / (a * a)
}

/// `U_β(r, 0)`, the potential along a ray through a charge.
pub fn vertex_ray_potential<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    potential_direct(cfg, beta, PolarPoint::new(r, T::zero()).expect("radius in [0, 1)"))
}

/// `∂U_β(r, 0)/∂r`; strictly positive on `(0, 1)`.
pub fn vertex_ray_derivative<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T) -> T {
    potential_gradient(cfg, beta, PolarPoint::new(r, T::zero()).expect("radius in [0, 1)")).0
}

/// `U_1(r, 0) = n(1 + rⁿ)/((1 − r²)(1 − rⁿ))`.
pub fn vertex_ray_closed_beta1<T: Real>(cfg: &ChargeConfiguration<T>, r: T) -> T {
    let n = cfg.n();
    let rn = r.powi(n as i32);
    T::of(n) * (T::one() + rn) / ((T::one() - r) * (T::one() + r) * (T::one() - rn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charges::regular_polygon;
    use std::f64::consts::PI;

    fn cfg(n: usize) -> ChargeConfiguration<f64> {
        regular_polygon(n).unwrap()
    }

    fn beta(b: f64) -> RieszExponent<f64> {
        RieszExponent::new(b).unwrap()
    }

    fn pt(r: f64, t: f64) -> PolarPoint<f64> {
        PolarPoint::new(r, t).unwrap()
    }

    /// Naive reference sum straight from the definition.
    fn naive(n: usize, b: f64, r: f64, t: f64) -> f64 {
        (1..=n)
            .map(|j| (1.0 + r * r - 2.0 * r * (2.0 * PI * j as f64 / n as f64 - t).cos()).powf(-b))
            .sum()
    }

    #[test]
    fn origin_value_is_n() {
        for b in [0.3, 1.0, 2.5] {
            assert_eq!(potential_direct(&cfg(3), &beta(b), pt(0.0, 1.3)), 3.0);
        }
    }

    #[test]
    fn triangle_beta1_value() {
        let u = potential_direct(&cfg(3), &beta(1.0), pt(0.5, PI / 3.0));
        assert!((u - 28.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn square_coulomb_value() {
        // 4.14402035552976116 from a 30-digit direct summation.
        let u = potential_direct(&cfg(4), &beta(0.5), pt(0.5, PI / 4.0));
        assert!((u - 4.144_020_355_529_761).abs() < 1e-14);
        assert!((u - naive(4, 0.5, 0.5, PI / 4.0)).abs() < 1e-13);
    }

    #[test]
    fn matches_naive_sum() {
        for n in [3, 5, 8] {
            for &(b, r, t) in &[(0.3, 0.2, 0.4), (1.7, 0.7, 2.0), (0.9, 0.85, 5.9)] {
                let u = potential_direct(&cfg(n), &beta(b), pt(r, t));
                assert!((u - naive(n, b, r, t)).abs() < 1e-12 * u);
            }
        }
    }

    #[test]
    fn angular_derivative_vanishes_on_rays() {
        let c = cfg(5);
        let (_, dt) = potential_gradient(&c, &beta(0.7), pt(0.3, PI / 5.0));
        assert!(dt.abs() <= 1e-12);
        for k in 0..10 {
            let (_, dt) = potential_gradient(&c, &beta(2.0), pt(0.8, PI * k as f64 / 5.0));
            assert!(dt.abs() <= 1e-12, "k = {k}: {dt}");
        }
    }

    #[test]
    fn radial_derivative_zero_at_origin() {
        let (dr, dt) = potential_gradient(&cfg(7), &beta(0.4), pt(0.0, 2.0));
        assert_eq!((dr, dt), (0.0, 0.0));
    }

    #[test]
    fn gradient_matches_central_differences() {
        let (c, b) = (cfg(3), beta(0.5));
        let (r, t, h) = (0.4, 1.0, 1e-6);
        let (dr, dt) = potential_gradient(&c, &b, pt(r, t));
        let fr = (potential_direct(&c, &b, pt(r + h, t)) - potential_direct(&c, &b, pt(r - h, t))) / (2.0 * h);
        let ft = (potential_direct(&c, &b, pt(r, t + h)) - potential_direct(&c, &b, pt(r, t - h))) / (2.0 * h);
        assert!((dr - fr).abs() <= 1e-6 * dr.abs());
        assert!((dt - ft).abs() <= 1e-6 * dt.abs());
    }

    #[test]
    fn hessian_symmetric_and_origin_radial_entry() {
        let (c, b) = (cfg(6), beta(0.8));
        let h = potential_hessian(&c, &b, pt(0.0, 0.3));
        assert!((h.a11 - 2.0 * 0.8 * 0.8 * 6.0).abs() < 1e-12);
        let m = h.as_array();
        assert_eq!(m[0][1], m[1][0]);
        let f = frame_hessian(&c, &b, pt(0.0, 0.3));
        assert!((f.a11 - 7.68).abs() < 1e-12 && (f.a22 - 7.68).abs() < 1e-12 && f.a12.abs() < 1e-12);
    }

    #[test]
    fn frame_hessian_agrees_with_polar_radial_entry() {
        let (c, b) = (cfg(5), beta(1.3));
        let p = pt(0.45, 0.77);
        let polar = potential_hessian(&c, &b, p);
        let frame = frame_hessian(&c, &b, p);
        assert!((polar.a11 - frame.a11).abs() < 1e-12 * polar.a11.abs().max(1.0));
        // tangential: (U_θθ + r U_r) / r²
        let (ur, _) = potential_gradient(&c, &b, p);
        let tt = (polar.a22 + p.r() * ur) / (p.r() * p.r());
        assert!((tt - frame.a22).abs() < 1e-11 * tt.abs().max(1.0));
        let rt = (polar.a12 - potential_gradient(&c, &b, p).1 / p.r()) / p.r();
        assert!((rt - frame.a12).abs() < 1e-11 * rt.abs().max(1.0));
    }

    #[test]
    fn eigenvalues_sorted() {
        let m = Sym2 { a11: 2.0f64, a12: 1.0, a22: 2.0 };
        let (lo, hi) = m.eigenvalues();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 3.0).abs() < 1e-15);
        let m = Sym2 { a11: -5.0, a12: 0.0, a22: 1e-20 };
        assert_eq!(m.eigenvalues(), (-5.0, 1e-20));
    }

    #[test]
    fn bisector_restriction() {
        let (c, b) = (cfg(3), beta(1.0));
        assert_eq!(bisector_potential(&c, &b, 0.0), 3.0);
        assert!((bisector_potential(&c, &b, 0.5) - 28.0 / 9.0).abs() < 1e-14);
        for n in 3..9 {
            let c = cfg(n);
            for r in [0.1, 0.5, 0.77] {
                let b = beta(0.6);
                let on_ray = potential_direct(&c, &b, pt(r, PI / n as f64));
                assert_eq!(bisector_potential(&c, &b, r), on_ray);
            }
        }
    }

    #[test]
    fn bisector_derivatives() {
        let c = cfg(3);
        assert_eq!(bisector_derivative(&c, &beta(0.5), 0.0), 0.0);
        assert!(bisector_derivative(&c, &beta(0.5), 0.5) < 0.0);
        assert_eq!(bisector_second_derivative(&c, &beta(1.0), 0.0), 6.0);
        assert_eq!(bisector_second_derivative(&cfg(5), &beta(0.3), 0.0), 2.0 * 0.3 * 0.3 * 5.0);
        // root of p_3
        assert!(bisector_second_derivative(&c, &beta(1.0), 0.392_646_781_702_640_8) < 0.0);
        let (b, r, h) = (beta(0.45), 0.3, 1e-6);
        let fd = (bisector_potential(&c, &b, r + h) - bisector_potential(&c, &b, r - h)) / (2.0 * h);
        assert!((fd - bisector_derivative(&c, &b, r)).abs() < 1e-8);
        let fd2 = (bisector_derivative(&c, &b, r + h) - bisector_derivative(&c, &b, r - h)) / (2.0 * h);
        assert!((fd2 - bisector_second_derivative(&c, &b, r)).abs() < 1e-7);
    }

    #[test]
    fn closed_forms_beta1() {
        let c = cfg(3);
        assert_eq!(closed_form_beta1(&c, pt(0.0, 0.4)), 3.0);
        assert!((closed_form_beta1(&c, pt(0.5, PI / 3.0)) - 28.0 / 9.0).abs() < 1e-14);
        assert!((v_closed_form(&c, 0.5) - 28.0 / 9.0).abs() < 1e-14);
        assert_eq!(v_derivative(&c, 0.0), 0.0);
        assert!(v_derivative(&c, 0.3) > 0.0);
        assert!(v_derivative(&c, 0.45) < 0.0);
        let direct = vertex_ray_potential(&c, &beta(1.0), 0.5);
        assert!((direct - vertex_ray_closed_beta1(&c, 0.5)).abs() < 1e-12);
    }

    #[test]
    fn v_derivative_matches_difference_quotient() {
        let c = cfg(5);
        let (r, h) = (0.6, 1e-6);
        let fd = (v_closed_form(&c, r + h) - v_closed_form(&c, r - h)) / (2.0 * h);
        assert!((fd - v_derivative(&c, r)).abs() < 1e-7);
    }

    #[test]
    fn vertex_ray_derivative_positive() {
        let c = cfg(3);
        assert_eq!(vertex_ray_derivative(&c, &beta(0.5), 0.0), 0.0);
        assert!(vertex_ray_derivative(&c, &beta(0.5), 0.5) > 0.0);
    }

    #[test]
    fn single_precision_instantiation() {
        let c = regular_polygon::<f32>(3).unwrap();
        let b = RieszExponent::new(1.0f32).unwrap();
        let p = PolarPoint::new(0.5f32, std::f32::consts::PI / 3.0).unwrap();
        assert!((potential_direct(&c, &b, p) - 28.0 / 9.0).abs() < 1e-5);
        assert!((closed_form_beta1(&c, p) - 28.0 / 9.0).abs() < 1e-5);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::charges::regular_polygon;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn setup(n: usize, b: f64) -> (ChargeConfiguration<f64>, RieszExponent<f64>) {
        (regular_polygon(n).unwrap(), RieszExponent::new(b).unwrap())
    }

    proptest! {
        #[test]
        fn rotation_and_reflection(n in 3usize..13, b in 0.05f64..4.0, r in 0.0f64..0.95, t in 0.0f64..TAU) {
            let (cfg, beta) = setup(n, b);
            let u = |t: f64| potential_direct(&cfg, &beta, PolarPoint::new(r, t).unwrap());
            let base = u(t);
            prop_assert!(base > 0.0 && base.is_finite());
            prop_assert!((base - u(t + TAU / n as f64)).abs() <= 1e-12 * base.max(1.0));
            prop_assert!((base - u(-t)).abs() <= 1e-12 * base.max(1.0));
        }

        #[test]
        fn rays_are_critical_in_theta(n in 3usize..11, b in 0.1f64..3.0, r in 0.01f64..0.9, k in 0i64..40) {
            let (cfg, beta) = setup(n, b);
            // past 2π the f64 angle itself drifts off the ray by ulp(θ)
            let k = k % (2 * n as i64);
            let p = PolarPoint::new(r, PI * k as f64 / n as f64).unwrap();
            prop_assert!(potential_gradient(&cfg, &beta, p).1.abs() <= 1e-12);
        }

        #[test]
        fn bisector_slice_is_exact(n in 3usize..20, b in 0.1f64..3.0, r in 0.0f64..0.95) {
            let (cfg, beta) = setup(n, b);
            let p = PolarPoint::new(r, PI / n as f64).unwrap();
            prop_assert_eq!(bisector_potential(&cfg, &beta, r), potential_direct(&cfg, &beta, p));
        }

        #[test]
        fn unit_beta_closed_form(n in 3usize..15, r in 0.0f64..0.9, t in 0.0f64..TAU) {
            let (cfg, beta) = setup(n, 1.0);
            let p = PolarPoint::new(r, t).unwrap();
            let d = potential_direct(&cfg, &beta, p);
            prop_assert!((d - closed_form_beta1(&cfg, p)).abs() <= 1e-12 * d.max(1.0));
        }

        #[test]
        fn gradient_against_differences(n in 3usize..10, b in 0.1f64..2.5, r in 0.05f64..0.8, t in 0.0f64..TAU) {
            let (cfg, beta) = setup(n, b);
            let h = 1e-5;
            let u = |r: f64, t: f64| potential_direct(&cfg, &beta, PolarPoint::new(r, t).unwrap());
            let (gr, gt) = potential_gradient(&cfg, &beta, PolarPoint::new(r, t).unwrap());
            let scale = gr.abs().max(gt.abs()).max(1.0);
            prop_assert!((gr - (u(r + h, t) - u(r - h, t)) / (2.0 * h)).abs() <= 1e-5 * scale);
            prop_assert!((gt - (u(r, t + h) - u(r, t - h)) / (2.0 * h)).abs() <= 1e-5 * scale);
        }

        #[test]
        fn vertex_ray_increasing(n in 3usize..12, b in 0.1f64..3.0, r in 0.001f64..0.95) {
            let (cfg, beta) = setup(n, b);
            prop_assert!(vertex_ray_derivative(&cfg, &beta, r) > 0.0);
            prop_assert!(vertex_ray_potential(&cfg, &beta, r) > vertex_ray_potential(&cfg, &beta, r * 0.99));
        }
    }
}
