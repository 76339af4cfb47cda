//! Verification suites run by `riesz verify`.
//!
//! Each check reports a measured quantity against a limit. `Warn` marks a
//! known discrepancy in published material that does not affect the
//! computed results.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charges::{regular_polygon, ChargeConfiguration, PolarPoint, RieszExponent};
use crate::error::{Error, Result};
use crate::experiments::{continuation_beta1, cross_validate, sweep_beta, sweep_n};
use crate::num::cos_sin_pi_frac;
use crate::potential::{
    bisector_derivative, bisector_second_derivative, potential_direct, potential_gradient, potential_hessian,
};
use crate::solver::poly::{pn_derivative, pn_second_derivative};
use crate::solver::{
    bound_pair, descartes_sign_changes, enumerate_equilibria, example_polynomials, f_beta_root,
    find_bisector_equilibria, lower_bound, pn_eval, pn_roots_in_unit_interval, Classification, PolynomialSource,
    SolveOptions,
};
use crate::specfun::{beta_function, build_rule, fourier_coefficient, g_n_factor, integral_potential};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub limit: f64,
}

impl Check {
    /// Passes when `measured <= limit`.
    fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        let status = if measured <= limit { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, measured, limit }
    }

    /// Passes when `measured == expected`.
    fn equals(name: impl Into<String>, measured: f64, expected: f64) -> Self {
        let status = if measured == expected { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, measured, limit: expected }
    }

    fn holds(name: impl Into<String>, ok: bool, measured: f64, limit: f64) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, measured, limit }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        };
        write!(f, "{tag} {} {:e} {:e}", self.name, self.measured, self.limit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Evaluators,
    Bounds,
    Examples,
    Beta1,
    Asymptotics,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "evaluators", "bounds", "examples", "beta1", "asymptotics"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "evaluators" => Suite::Evaluators,
            "bounds" => Suite::Bounds,
            "examples" => Suite::Examples,
            "beta1" => Suite::Beta1,
            "asymptotics" => Suite::Asymptotics,
            other => return Err(Error::domain(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Limit on `|u'_β(r*)|` at reported roots.
    pub residual_tol: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { residual_tol: 1e-10, seed: 20_240_601 }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Evaluators {
        evaluators(opts, &mut out)?;
    }
    if all || suite == Suite::Bounds {
        bounds(opts, &mut out)?;
    }
    if all || suite == Suite::Examples {
        examples(opts, &mut out)?;
    }
    if all || suite == Suite::Beta1 {
        beta1(opts, &mut out)?;
    }
    if all || suite == Suite::Asymptotics {
        asymptotics(&mut out)?;
    }
    Ok(out)
}

/// True when no check failed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

fn solve_opts(opts: &VerifyOptions) -> SolveOptions {
    SolveOptions { tol: opts.residual_tol, ..SolveOptions::default() }
}

fn setup(n: usize, beta: f64) -> Result<(ChargeConfiguration<f64>, RieszExponent<f64>)> {
    Ok((regular_polygon(n)?, RieszExponent::new(beta)?))
}

const GRID_N: [usize; 10] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
const GRID_BETA: [f64; 7] = [0.1, 0.25, 0.5, 0.75, 1.0, 2.0, 5.0];

/// Ridders extrapolation of the central difference of `f` at `x`.
pub fn ridders_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h0: f64) -> f64 {
    const STEPS: usize = 10;
    const SHRINK: f64 = 1.4;
    let mut a = [[0.0f64; STEPS]; STEPS];
    let mut h = h0;
    let mut best = f64::NAN;
    let mut err = f64::INFINITY;
    a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    for i in 1..STEPS {
        h /= SHRINK;
        a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut fac = SHRINK * SHRINK;
        for j in 1..=i {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK * SHRINK;
            let e = (a[j][i] - a[j - 1][i]).abs().max((a[j][i] - a[j - 1][i - 1]).abs());
            if e <= err {
                err = e;
                best = a[j][i];
            }
        }
        if (a[i][i] - a[i - 1][i - 1]).abs() >= 2.0 * err {
            break;
        }
    }
    best
}

fn evaluators(opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    // direct sum against the integral representation
    let mut worst: f64 = 0.0;
    for beta in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let rule = build_rule(beta, 128)?;
        for n in 3..=8 {
            let (cfg, b) = setup(n, beta)?;
            let nf = n as f64;
            for r in [0.0, 0.2, 0.4, 0.6, 0.8] {
                for theta in [0.0, PI / nf, PI / (2.0 * nf)] {
                    let p = PolarPoint::new(r, theta)?;
                    worst = worst.max((integral_potential(&cfg, &b, p, &rule)? - potential_direct(&cfg, &b, p)).abs());
                }
            }
        }
    }
    out.push(Check::at_most("direct_vs_integral_grid", worst, 1e-8));

    let cv = cross_validate(3, 1.0, 100, 16, opts.seed)?;
    out.push(Check::at_most("direct_vs_closed_form_random", cv.max_direct_vs_closed.unwrap_or(f64::NAN), 1e-12));

    // origin: u'(0) = 0 and u''(0) = 2β²n
    let mut origin_slope: f64 = 0.0;
    let mut curvature: f64 = 0.0;
    for &n in &GRID_N {
        for &beta in &GRID_BETA {
            let (cfg, b) = setup(n, beta)?;
            origin_slope = origin_slope.max(bisector_derivative(&cfg, &b, 0.0).abs());
            let want = 2.0 * beta * beta * n as f64;
            let fd = ridders_derivative(|r| bisector_derivative(&cfg, &b, r), 0.0, 0.05);
            curvature = curvature.max((fd - want).abs() / want.max(1.0));
            curvature = curvature.max((bisector_second_derivative(&cfg, &b, 0.0) - want).abs());
        }
    }
    out.push(Check::equals("origin_first_derivative", origin_slope, 0.0));
    out.push(Check::at_most("origin_second_derivative_vs_differences", curvature, 1e-10));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    // rotation and reflection symmetry
    let mut sym: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(3..=12usize);
        let beta = rng.random_range(0.1..3.0);
        let (cfg, b) = setup(n, beta)?;
        let (r, t) = (rng.random_range(0.0..0.95), rng.random_range(0.0..2.0 * PI));
        let base = potential_direct(&cfg, &b, PolarPoint::new(r, t)?);
        let rot = potential_direct(&cfg, &b, PolarPoint::new(r, t + 2.0 * PI / n as f64)?);
        let refl = potential_direct(&cfg, &b, PolarPoint::new(r, -t)?);
        sym = sym.max((base - rot).abs().max((base - refl).abs()) / base.max(1.0));
    }
    out.push(Check::at_most("symmetry_rotation_reflection", sym, 1e-12));

    // angular derivative on the symmetry rays
    let mut ray: f64 = 0.0;
    for n in 3..=10usize {
        for beta in [0.25, 0.5, 0.75, 1.0, 2.0] {
            let (cfg, b) = setup(n, beta)?;
            for k in 0..2 * n as i64 {
                for i in 1..=8 {
                    let r = 0.1 * i as f64;
                    let theta = PI * k as f64 / n as f64;
                    ray = ray.max(potential_gradient(&cfg, &b, PolarPoint::new(r, theta)?).1.abs());
                }
            }
        }
    }
    out.push(Check::at_most("angular_derivative_on_rays", ray, 1e-12));

    // gradient and Hessian against central differences
    let h = 1e-5;
    let mut grad: f64 = 0.0;
    let mut hess: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(3..=10usize);
        let beta = rng.random_range(0.1..2.5);
        let (cfg, b) = setup(n, beta)?;
        let r = rng.random_range(0.05..0.8);
        let t = rng.random_range(0.0..2.0 * PI);
        let u = |r: f64, t: f64| potential_direct(&cfg, &b, PolarPoint::new(r, t).expect("interior point"));
        let g = |r: f64, t: f64| potential_gradient(&cfg, &b, PolarPoint::new(r, t).expect("interior point"));
        let (gr, gt) = g(r, t);
        let fr = (u(r + h, t) - u(r - h, t)) / (2.0 * h);
        let ft = (u(r, t + h) - u(r, t - h)) / (2.0 * h);
        let scale = gr.abs().max(gt.abs()).max(1.0);
        grad = grad.max((gr - fr).abs().max((gt - ft).abs()) / scale);
        let hm = potential_hessian(&cfg, &b, PolarPoint::new(r, t)?);
        let (a, _) = g(r + h, t);
        let (c, _) = g(r - h, t);
        let (_, d) = g(r, t + h);
        let (_, e) = g(r, t - h);
        let (_, fpr) = g(r + h, t);
        let (_, fmr) = g(r - h, t);
        let hrr = (a - c) / (2.0 * h);
        let htt = (d - e) / (2.0 * h);
        let hrt = (fpr - fmr) / (2.0 * h);
        let hscale = hm.a11.abs().max(hm.a12.abs()).max(hm.a22.abs()).max(1.0);
        hess = hess.max(
            (hm.a11 - hrr).abs().max((hm.a22 - htt).abs()).max((hm.a12 - hrt).abs()) / hscale,
        );
    }
    out.push(Check::at_most("gradient_vs_differences", grad, 1e-5));
    out.push(Check::at_most("hessian_vs_differences", hess, 1e-5));

    // weight moments and Fourier coefficients
    let mut moments: f64 = 0.0;
    let mut b0: f64 = 0.0;
    let mut bsym: f64 = 0.0;
    for i in 1..=9 {
        let beta = 0.1 * i as f64;
        let rule = build_rule(beta, 96)?;
        for k in 0..=5 {
            let exact = beta_function(beta + k as f64, 1.0 - beta)?;
            moments = moments.max((rule.integrate(|t| t.powi(k)) - exact).abs());
        }
        let b = RieszExponent::new(beta)?;
        b0 = b0.max((fourier_coefficient(0, 0.0, &b, &rule)? - 1.0).abs());
        for m in 1..=20 {
            let d = fourier_coefficient(m, 0.6, &b, &rule)? - fourier_coefficient(-m, 0.6, &b, &rule)?;
            bsym = bsym.max(d.abs());
        }
    }
    out.push(Check::at_most("quadrature_weight_moments", moments, 1e-12));
    out.push(Check::at_most("fourier_b0_at_origin", b0, 1e-13));
    out.push(Check::equals("fourier_bm_symmetry", bsym, 0.0));
    Ok(())
}

fn bounds(opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    let so = solve_opts(opts);
    let mut violations = 0usize;
    let mut worst_residual: f64 = 0.0;
    for &n in &GRID_N {
        for &beta in &GRID_BETA {
            let (cfg, b) = setup(n, beta)?;
            let bp = bound_pair(n, beta)?;
            for p in find_bisector_equilibria(&cfg, &b, &so)? {
                let residual = bisector_derivative(&cfg, &b, p.r).abs();
                worst_residual = worst_residual.max(residual);
                if !(bp.r_lower < p.r) {
                    violations += 1;
                    out.push(Check::holds(format!("lower_bound[n={n},beta={beta}]"), false, p.r, bp.r_lower));
                }
                if !(p.r < bp.r_upper) {
                    violations += 1;
                    out.push(Check::holds(format!("apothem_bound[n={n},beta={beta}]"), false, p.r, bp.r_upper));
                }
                if residual > opts.residual_tol {
                    out.push(Check::at_most(format!("root_residual[n={n},beta={beta}]"), residual, opts.residual_tol));
                }
            }
        }
    }
    out.push(Check::equals("containment_violations", violations as f64, 0.0));
    out.push(Check::at_most("root_residual_max", worst_residual, opts.residual_tol));

    // small-β ceiling
    let betas = [0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45];
    let mut excess = f64::NEG_INFINITY;
    for n in [3, 4, 6, 9] {
        for rec in sweep_beta(n, &betas, &so)? {
            if let Some(ceiling) = rec.r_small_beta {
                excess = excess.max(rec.r_star - ceiling);
            }
        }
    }
    out.push(Check::holds("small_beta_ceiling", excess < 0.0, excess, 0.0));

    // g_n(r, t) > 0 below the lower bound
    let mut g_min = f64::INFINITY;
    for n in 3..=12 {
        for beta in [0.1, 0.5, 0.9] {
            let rl = lower_bound(n, beta)?;
            for i in 0..20 {
                let r = rl * i as f64 / 20.0;
                for j in 0..=1000 {
                    g_min = g_min.min(g_n_factor(n, beta, r, j as f64 / 1000.0));
                }
            }
        }
    }
    out.push(Check::holds("g_positive_below_lower_bound", g_min > 0.0, g_min, 0.0));
    Ok(())
}

fn examples(opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    let so = solve_opts(opts);

    // triangle, β = 1/2
    let (cfg, b) = setup(3, 0.5)?;
    let set = enumerate_equilibria(&cfg, &b, &so)?;
    out.push(Check::equals("triangle_coulomb_roots_per_bisector", set.roots_per_bisector as f64, 1.0));
    out.push(Check::equals("triangle_coulomb_count", set.count as f64, 4.0));
    let quintic = &example_polynomials(3, 0.5)?[0];
    let qroots = quintic.roots_in(1e-9, 0.5)?;
    out.push(Check::equals("triangle_quintic_roots_in_half_interval", qroots.len() as f64, 1.0));
    let gap = qroots.first().map_or(f64::INFINITY, |q| (q.x - set.points[1].r).abs());
    out.push(Check::at_most("triangle_quintic_vs_bisection", gap, 1e-10));
    out.push(Check::equals("triangle_quintic_sign_changes", descartes_sign_changes(&quintic.coeffs)? as f64, 2.0));

    // square, β = 1/2
    let (cfg, b) = setup(4, 0.5)?;
    let set = enumerate_equilibria(&cfg, &b, &so)?;
    out.push(Check::equals("square_coulomb_count", set.count as f64, 5.0));
    let r = set.points[1].r;
    out.push(Check::holds("square_coulomb_root_window", r > 1.0 / 3.0 && r < 0.5f64.sqrt(), r, 0.5f64.sqrt()));
    for poly in example_polynomials(4, 0.5)? {
        let roots = poly.roots_in(1e-9, 0.5f64.sqrt())?;
        match poly.source {
            PolynomialSource::Printed => {
                // A root-free printed polynomial cannot encode the equilibrium.
                let status = if roots.is_empty() { Status::Warn } else { Status::Pass };
                out.push(Check {
                    name: format!("square_printed_polynomial_{}", poly.label),
                    status,
                    measured: poly.grid_min(0.0, 0.5f64.sqrt(), 10_000),
                    limit: 0.0,
                });
            }
            PolynomialSource::Rederived => {
                let gap = roots.first().map_or(f64::INFINITY, |q| (q.x - r).abs());
                out.push(Check::at_most(format!("square_rederived_polynomial_{}", poly.label), gap, 1e-10));
            }
        }
    }

    // triangle, every 0 < β < 1
    let grid: Vec<f64> = (1..=19).map(|i| 0.05 * i as f64).collect();
    let recs = sweep_beta(3, &grid, &so)?;
    let non_uniform = recs.iter().filter(|r| r.roots_per_bisector != 1).count();
    out.push(Check::equals("triangle_single_root_all_fractional_beta", non_uniform as f64, 0.0));
    let mut f_gap: f64 = 0.0;
    for rec in &recs {
        f_gap = f_gap.max((f_beta_root(rec.beta)?.x - rec.r_star).abs());
    }
    out.push(Check::at_most("triangle_f_beta_root_vs_bisection", f_gap, 1e-10));
    Ok(())
}

fn beta1(opts: &VerifyOptions, out: &mut Vec<Check>) -> Result<()> {
    let so = solve_opts(opts);
    let mut count_bad = 0usize;
    let mut gap: f64 = 0.0;
    let mut at_one: f64 = 0.0;
    let mut degenerate = 0usize;
    for n in 3..=10 {
        let (cfg, b) = setup(n, 1.0)?;
        let set = enumerate_equilibria(&cfg, &b, &so)?;
        if set.count != n + 1 {
            count_bad += 1;
        }
        degenerate += set.points.iter().filter(|p| p.classification == Classification::Degenerate).count();
        let pn = pn_roots_in_unit_interval::<f64>(n)?;
        gap = gap.max(if pn.len() == 1 { (pn[0].x - set.points[1].r).abs() } else { f64::INFINITY });
        at_one = at_one
            .max(pn_eval(n, 1.0f64).abs())
            .max(pn_derivative(n, 1.0f64).abs())
            .max((pn_second_derivative(n, 1.0f64) + 4.0 * n as f64).abs());
    }
    out.push(Check::equals("unit_beta_count_n_plus_one", count_bad as f64, 0.0));
    out.push(Check::at_most("unit_beta_pn_root_vs_bisection", gap, 1e-10));
    out.push(Check::at_most("pn_double_zero_at_one", at_one, 1e-9));
    out.push(Check::equals("unit_beta_degenerate_points", degenerate as f64, 0.0));

    for n in [3, 4, 5] {
        let res = continuation_beta1(n, 0.1, 0.01, &so)?;
        out.push(Check::holds(
            format!("continuation_uniform_count[n={n}]"),
            res.uniform_count,
            res.records.len() as f64,
            21.0,
        ));
    }
    Ok(())
}

fn asymptotics(out: &mut Vec<Check>) -> Result<()> {
    let so = SolveOptions::default();

    let ns = [3, 4, 8, 16, 32, 64];
    let recs = sweep_n(0.5, &ns, &so)?;
    let drop = recs.windows(2).map(|w| w[0].r_star - w[1].r_star).fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::holds("radius_nondecreasing_in_n", drop <= 0.0, drop, 0.0));
    let last = recs.last().expect("non-empty sweep");
    out.push(Check::holds("radius_n64_above_lower_bound", last.r_star > last.r_lower, last.r_star, last.r_lower));

    let betas = [0.3, 0.1, 0.05, 0.01];
    let recs = sweep_beta(3, &betas, &so)?;
    let rise = recs.windows(2).map(|w| w[1].r_star - w[0].r_star).fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::holds("radius_decreasing_as_beta_falls", rise < 0.0, rise, 0.0));
    let small = recs.last().expect("non-empty sweep");
    let ceiling = small.r_small_beta.unwrap_or(f64::NAN);
    out.push(Check::holds("radius_beta001_below_ceiling", small.r_star < ceiling, small.r_star, ceiling));

    let betas = [1.0, 2.0, 5.0, 20.0, 100.0];
    let (cfg, _) = setup(3, 1.0)?;
    let apothem = cos_sin_pi_frac::<f64>(1, 3).0;
    let mut radii = Vec::new();
    let mut certified = true;
    for &beta in &betas {
        let p = find_bisector_equilibria(&cfg, &RieszExponent::new(beta)?, &so)?[0];
        certified &= p.certified_below(apothem);
        radii.push(p.r);
    }
    let rise = radii.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    out.push(Check::holds("radius_increasing_in_beta", rise > 0.0, rise, 0.0));
    out.push(Check::holds("radius_below_apothem_large_beta", certified, radii[radii.len() - 1], apothem));
    out.push(Check::holds("radius_beta100_above_045", radii[4] > 0.45, radii[4], 0.45));
    Ok(())
}
