//! Parameter sweeps, β-continuation around `β = 1` and evaluator
//! cross-validation.
//!
//! Sweeps solve each grid point independently on the rayon pool; results
//! come back in grid order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charges::{regular_polygon, PolarPoint, RieszExponent};
use crate::error::{Error, Result};
use crate::potential::{bisector_derivative, bisector_second_derivative, closed_form_beta1, potential_direct};
use crate::solver::{bound_pair, find_bisector_equilibria, SolveOptions};
use crate::specfun::{build_rule, integral_potential};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub beta: f64,
    /// Smallest equilibrium radius on a bisector.
    pub r_star: f64,
    pub roots_per_bisector: usize,
    pub r_lower: f64,
    pub r_upper: f64,
    pub r_small_beta: Option<f64>,
    /// `|u'_β(r_star)|`.
    pub residual: f64,
    /// Every root lies strictly within all applicable bounds.
    pub bounds_hold: bool,
}

/// Solves one `(n, β)` point.
pub fn solve_point(n: usize, beta: f64, opts: &SolveOptions) -> Result<SweepRecord> {
    let cfg = regular_polygon::<f64>(n)?;
    let b = RieszExponent::new(beta)?;
    let roots = find_bisector_equilibria(&cfg, &b, opts)?;
    let bounds = bound_pair(n, beta)?;
    let first = roots[0];
    Ok(SweepRecord {
        n,
        beta,
        r_star: first.r,
        roots_per_bisector: roots.len(),
        r_lower: bounds.r_lower,
        r_upper: bounds.r_upper,
        r_small_beta: bounds.r_small_beta,
        residual: first.residual,
        bounds_hold: roots.iter().all(|p| bounds.contains(p.r)),
    })
}

/// One record per `n` at fixed `β`.
pub fn sweep_n(beta: f64, n_list: &[usize], opts: &SolveOptions) -> Result<Vec<SweepRecord>> {
    if n_list.is_empty() {
        return Err(Error::domain("empty n grid"));
    }
    n_list.par_iter().map(|&n| solve_point(n, beta, opts)).collect()
}

/// One record per `β` at fixed `n`.
pub fn sweep_beta(n: usize, beta_list: &[f64], opts: &SolveOptions) -> Result<Vec<SweepRecord>> {
    if beta_list.is_empty() {
        return Err(Error::domain("empty beta grid"));
    }
    beta_list.par_iter().map(|&b| solve_point(n, b, opts)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationResult {
    pub n: usize,
    /// Smallest and largest `β` reached with one root per bisector,
    /// walking outward from `β = 1` without a break.
    pub beta_lo: f64,
    pub beta_hi: f64,
    pub step: f64,
    /// Ascending in `β`.
    pub records: Vec<SweepRecord>,
    /// One root per bisector at every visited `β` and no failed solve.
    pub uniform_count: bool,
    /// Largest gap between the Newton-tracked branch and the nearest root
    /// of the full scan.
    pub max_tracking_gap: f64,
    /// `β` at which a solve failed, per direction.
    pub failed_below: Option<f64>,
    pub failed_above: Option<f64>,
}

/// Newton on `u'_β` from `seed`, a handful of steps.
fn track(n: usize, beta: f64, seed: f64) -> Result<f64> {
    let cfg = regular_polygon::<f64>(n)?;
    let b = RieszExponent::new(beta)?;
    let mut r = seed;
    for _ in 0..20 {
        let step = bisector_derivative(&cfg, &b, r) / bisector_second_derivative(&cfg, &b, r);
        let next = r - step;
        if !(0.0..1.0).contains(&next) {
            return Err(Error::Numerical(format!("tracked root left the disk at beta = {beta}")));
        }
        r = next;
        if step.abs() <= 1e-15 * r.max(1.0) {
            break;
        }
    }
    Ok(r)
}

/// Walks `β = 1 ± k·step` out to `half_width`, tracking the `β = 1` root by
/// Newton and running a full scan at every `β` to catch new roots.
pub fn continuation_beta1(n: usize, half_width: f64, step: f64, opts: &SolveOptions) -> Result<ContinuationResult> {
    if !(step > 0.0) || !(half_width > 0.0) {
        return Err(Error::domain("step and half-width must be positive"));
    }
    if !(half_width < 1.0) {
        return Err(Error::domain(format!("half-width {half_width} leaves beta > 0")));
    }
    let k_max = (half_width / step + 1e-9).floor() as usize;
    let centre = solve_point(n, 1.0, opts)?;

    let mut records = vec![centre.clone()];
    let mut uniform = centre.roots_per_bisector == 1;
    let mut gap: f64 = 0.0;
    let mut failed = [None, None];
    let mut reach = [1.0, 1.0];
    for (dir, sign) in [-1.0f64, 1.0].into_iter().enumerate() {
        let mut seed = centre.r_star;
        let mut unbroken = centre.roots_per_bisector == 1;
        for k in 1..=k_max {
            let beta = 1.0 + sign * k as f64 * step;
            let outcome = track(n, beta, seed).and_then(|t| Ok((t, solve_point(n, beta, opts)?)));
            match outcome {
                Ok((tracked, rec)) => {
                    let cfg = regular_polygon::<f64>(n)?;
                    let nearest = find_bisector_equilibria(&cfg, &RieszExponent::new(beta)?, opts)?
                        .iter()
                        .map(|p| (p.r - tracked).abs())
                        .fold(f64::INFINITY, f64::min);
                    gap = gap.max(nearest);
                    seed = tracked;
                    if rec.roots_per_bisector != 1 {
                        uniform = false;
                        unbroken = false;
                    }
                    if unbroken {
                        reach[dir] = beta;
                    }
                    records.push(rec);
                }
                Err(_) => {
                    failed[dir] = Some(beta);
                    uniform = false;
                    break;
                }
            }
        }
    }
    records.sort_by(|a, b| a.beta.total_cmp(&b.beta));
    Ok(ContinuationResult {
        n,
        beta_lo: reach[0],
        beta_hi: reach[1],
        step,
        records,
        uniform_count: uniform,
        max_tracking_gap: gap,
        failed_below: failed[0],
        failed_above: failed[1],
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub n: usize,
    pub beta: f64,
    pub samples: usize,
    /// `None` when the integral representation does not apply.
    pub max_direct_vs_integral: Option<f64>,
    /// `None` unless `β = 1`.
    pub max_direct_vs_closed: Option<f64>,
    pub notes: Vec<String>,
}

/// Largest disagreement between the evaluators over `samples` random points
/// with `r < 0.9`, drawn from a seeded generator.
pub fn cross_validate(n: usize, beta: f64, samples: usize, nodes: usize, seed: u64) -> Result<CrossValidation> {
    if samples == 0 {
        return Err(Error::domain("need at least one sample"));
    }
    let cfg = regular_polygon::<f64>(n)?;
    let b = RieszExponent::new(beta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<PolarPoint<f64>> = (0..samples)
        .map(|_| PolarPoint::new(rng.random_range(0.0..0.9), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect::<Result<_>>()?;
    let direct: Vec<f64> = points.iter().map(|&p| potential_direct(&cfg, &b, p)).collect();

    let mut notes = Vec::new();
    let max_direct_vs_integral = if b.require_fractional().is_ok() {
        let rule = build_rule(beta, nodes)?;
        let mut worst: f64 = 0.0;
        for (p, d) in points.iter().zip(&direct) {
            worst = worst.max((integral_potential(&cfg, &b, *p, &rule)? - d).abs());
        }
        Some(worst)
    } else {
        notes.push(format!("integral comparison skipped: beta = {beta} out of domain (0, 1)"));
        None
    };
    let max_direct_vs_closed = if b.require_unit().is_ok() {
        Some(
            points
                .iter()
                .zip(&direct)
                .map(|(p, d)| (closed_form_beta1(&cfg, *p) - d).abs())
                .fold(0.0, f64::max),
        )
    } else {
        notes.push(format!("closed-form comparison skipped: beta = {beta} is not 1"));
        None
    };
    Ok(CrossValidation {
        n,
        beta,
        samples,
        max_direct_vs_integral,
        max_direct_vs_closed,
        notes,
    })
}
