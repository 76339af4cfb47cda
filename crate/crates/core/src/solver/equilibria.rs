//! Equilibria of the polygon potential.
//!
//! Every non-trivial equilibrium lies on one of the `n` bisector rays
//! `θ = πk/n` (`k` odd), so the search reduces to the roots of `u'_β` on
//! `(0, cos(π/n))`. Each root found on the ray `θ = π/n` is replicated to
//! all bisectors; the origin is always added.

use crate::charges::{ChargeConfiguration, PolarPoint, RieszExponent};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::potential::{
    bisector_derivative, bisector_derivative_scale, bisector_second_derivative, frame_hessian, Sym2,
};

use super::bounds::{apothem_bound, lower_bound};
use super::roots::{roots_in_interval, Root};

/// Residuals below this many ulps of the term magnitude, plus the change of
/// `u'_β` across one ulp of `r`, are accepted even when they exceed the
/// requested tolerance: the root cannot be resolved more finely.
const RESOLUTION_ULPS: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Target for `|u'_β(r*)|`.
    pub tol: f64,
    /// Uniform cells in the sign scan.
    pub cells: usize,
    /// Relative margin below `r_l` where the scan starts.
    pub margin: f64,
    /// An eigenvalue smaller than this times `|λ₁| + |λ₂|` is degenerate.
    pub degeneracy: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            cells: 512,
            margin: 1e-9,
            degeneracy: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Minimum => "minimum",
            Classification::Maximum => "maximum",
            Classification::Saddle => "saddle",
            Classification::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumPoint<T> {
    pub r: T,
    pub theta: T,
    /// `|u'_β(r)|` for bisector points, zero for the origin.
    pub residual: T,
    /// Sign-change bracket of `u'_β` containing the root.
    pub bracket: (T, T),
    pub classification: Classification,
    /// Eigenvalues of the planar Hessian, ascending.
    pub hessian_eigs: (T, T),
}

impl<T: Real> EquilibriumPoint<T> {
    pub fn is_origin(&self) -> bool {
        self.r == T::zero()
    }

    /// True when the bracket certifies that the root lies strictly below `x`.
    pub fn certified_below(&self, x: T) -> bool {
        self.bracket.1 < x || (self.bracket.1 == x && self.bracket.0 < self.bracket.1)
    }
}

/// Point type from the Hessian eigenvalues.
pub fn classify_eigs<T: Real>(eigs: (T, T), degeneracy: T) -> Classification {
    let (lo, hi) = eigs;
    let scale = lo.abs() + hi.abs();
    if lo.abs().min(hi.abs()) <= degeneracy * scale {
        return Classification::Degenerate;
    }
    match (lo > T::zero(), hi > T::zero()) {
        (true, true) => Classification::Minimum,
        (false, false) => Classification::Maximum,
        _ => Classification::Saddle,
    }
}

/// Classifies an equilibrium by the signs of its planar Hessian.
pub fn classify<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    point: &EquilibriumPoint<T>,
    opts: &SolveOptions,
) -> Result<Classification> {
    let eigs = hessian_at(cfg, beta, point.r, point.theta)?.eigenvalues();
    Ok(classify_eigs(eigs, T::lit(opts.degeneracy)))
}

fn hessian_at<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T, theta: T) -> Result<Sym2<T>> {
    Ok(frame_hessian(cfg, beta, PolarPoint::new(r, theta)?))
}

/// Interval scanned for sign changes of `u'_β`.
///
/// The lower bound is only used for `β ≤ 1`; for larger `β` it can exceed
/// the apothem and the scan starts near the origin instead.
pub fn search_interval<T: Real>(n: usize, beta: T, opts: &SolveOptions) -> Result<(T, T)> {
    let floor = T::lit(1e-6);
    let hi = apothem_bound::<T>(n)?;
    let lo = if beta <= T::one() {
        floor.max(lower_bound(n, beta)? * (T::one() - T::lit(opts.margin)))
    } else {
        floor
    };
    Ok((lo.min(hi), hi))
}

/// Accepted residual at a root: the tolerance, or the rounding floor of the
/// sum if that is larger.
pub fn residual_limit<T: Real>(cfg: &ChargeConfiguration<T>, beta: &RieszExponent<T>, r: T, tol: T) -> T {
    let ulp = r.next_up() - r;
    let sum_floor = T::lit(RESOLUTION_ULPS) * T::epsilon() * bisector_derivative_scale(cfg, beta, r);
    let step_floor = T::two() * ulp * bisector_second_derivative(cfg, beta, r).abs();
    tol.max(sum_floor + step_floor)
}

/// Roots of `u'_β` on the bisector `θ = π/n`, ascending in `r`.
pub fn find_bisector_equilibria<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    opts: &SolveOptions,
) -> Result<Vec<EquilibriumPoint<T>>> {
    let n = cfg.n();
    let (lo, hi) = search_interval(n, beta.value(), opts)?;
    let roots: Vec<Root<T>> = roots_in_interval(
        |r| bisector_derivative(cfg, beta, r),
        |r| bisector_second_derivative(cfg, beta, r),
        lo,
        hi,
        opts.cells,
    )?;
    if roots.is_empty() {
        return Err(Error::NoSignChange {
            n,
            beta: beta.value().to_f64().unwrap_or(f64::NAN),
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let theta = cfg.bisector_angles()[0];
    let tol = T::lit(opts.tol);
    roots
        .into_iter()
        .map(|root| {
            let residual = root.fx.abs();
            if residual > residual_limit(cfg, beta, root.x, tol) {
                return Err(Error::Numerical(format!(
                    "residual {residual} at r = {} exceeds tolerance for n = {n}, beta = {}",
                    root.x,
                    beta.value()
                )));
            }
            let eigs = hessian_at(cfg, beta, root.x, theta)?.eigenvalues();
            Ok(EquilibriumPoint {
                r: root.x,
                theta,
                residual,
                bracket: root.bracket,
                classification: classify_eigs(eigs, T::lit(opts.degeneracy)),
                hessian_eigs: eigs,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumSet<T> {
    /// Origin first, then for each root (ascending `r`) its copies on every
    /// bisector in angle order.
    pub points: Vec<EquilibriumPoint<T>>,
    pub count: usize,
    /// `(n − 1)²`.
    pub maxwell_bound: usize,
    pub roots_per_bisector: usize,
}

/// All equilibria of the configuration: the origin and every bisector root
/// on every bisector.
pub fn enumerate_equilibria<T: Real>(
    cfg: &ChargeConfiguration<T>,
    beta: &RieszExponent<T>,
    opts: &SolveOptions,
) -> Result<EquilibriumSet<T>> {
    let n = cfg.n();
    let roots = find_bisector_equilibria(cfg, beta, opts)?;
    let origin_eigs = hessian_at(cfg, beta, T::zero(), T::zero())?.eigenvalues();
    let mut points = Vec::with_capacity(1 + n * roots.len());
    points.push(EquilibriumPoint {
        r: T::zero(),
        theta: T::zero(),
        residual: T::zero(),
        bracket: (T::zero(), T::zero()),
        classification: classify_eigs(origin_eigs, T::lit(opts.degeneracy)),
        hessian_eigs: origin_eigs,
    });
    for root in &roots {
        for &theta in cfg.bisector_angles() {
            let eigs = hessian_at(cfg, beta, root.r, theta)?.eigenvalues();
            points.push(EquilibriumPoint {
                theta,
                classification: classify_eigs(eigs, T::lit(opts.degeneracy)),
                hessian_eigs: eigs,
                ..*root
            });
        }
    }
    let count = points.len();
    let maxwell_bound = (n - 1) * (n - 1);
    if roots.len() == 1 {
        debug_assert!(count <= maxwell_bound);
    }
    Ok(EquilibriumSet {
        points,
        count,
        maxwell_bound,
        roots_per_bisector: roots.len(),
    })
}
