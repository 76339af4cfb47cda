//! Bisection with a Newton finish for scalar roots inside a sign-change
//! bracket.

use crate::error::{Error, Result};
use crate::num::Real;

/// Bracket width at which bisection hands over to Newton.
pub const BISECTION_WIDTH: f64 = 1e-13;

const NEWTON_STEPS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub fx: T,
    /// Endpoints at which `f` has strictly opposite signs (or `lo == hi`
    /// when `f` vanishes exactly there). The true root lies inside.
    pub bracket: (T, T),
}

fn sign<T: Real>(v: T) -> i8 {
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

/// Refines a root of `f` in `[lo, hi]`, where `f(lo)` and `f(hi)` differ in
/// sign. `df` is the derivative, used for at most five Newton steps that are
/// kept only while they stay in the bracket and reduce `|f|`.
pub fn refine_root<T, F, D>(f: F, df: D, lo: T, hi: T) -> Result<Root<T>>
where
    T: Real,
    F: Fn(T) -> T,
    D: Fn(T) -> T,
{
    if !(lo <= hi) {
        return Err(Error::domain(format!("empty bracket [{lo}, {hi}]")));
    }
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    let (sa, sb) = (sign(fa), sign(fb));
    if sa == 0 {
        return Ok(Root { x: a, fx: fa, bracket: (a, a) });
    }
    if sb == 0 {
        return Ok(Root { x: b, fx: fb, bracket: (b, b) });
    }
    if sa == sb {
        return Err(Error::domain(format!("no sign change on [{lo}, {hi}]")));
    }
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Numerical("function is NaN at a bracket end".into()));
    }

    let width = T::lit(BISECTION_WIDTH);
    let half = T::lit(0.5);
    while b - a > width {
        let m = a + half * (b - a);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        match sign(fm) {
            0 => return Ok(Root { x: m, fx: fm, bracket: (m, m) }),
            s if s == sa => a = m,
            _ => b = m,
        }
    }

    let mut x = a + half * (b - a);
    let mut fx = f(x);
    for _ in 0..NEWTON_STEPS {
        if fx == T::zero() {
            return Ok(Root { x, fx, bracket: (x, x) });
        }
        let d = df(x);
        if d == T::zero() || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        if !(next >= a && next <= b) {
            break;
        }
        let fnext = f(next);
        // tighten the bracket with whatever we learned
        match sign(fnext) {
            0 => return Ok(Root { x: next, fx: fnext, bracket: (next, next) }),
            s if s == sa => a = next,
            _ => b = next,
        }
        if fnext.abs() >= fx.abs() {
            break;
        }
        x = next;
        fx = fnext;
    }

    // A rejected step may still have moved a bracket end past `x`.
    if !(x >= a && x <= b) {
        let (fa, fb) = (f(a), f(b));
        (x, fx) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    }

    // Walk to the neighbouring floats while that lowers the residual.
    for step in [T::next_up as fn(T) -> T, T::next_down as fn(T) -> T] {
        loop {
            let y = step(x);
            if !(y >= a && y <= b) {
                break;
            }
            let fy = f(y);
            if fy.abs() < fx.abs() {
                x = y;
                fx = fy;
            } else {
                break;
            }
        }
    }

    // The returned bracket has strict opposite signs at its ends.
    let fa_final = f(a);
    let fb_final = f(b);
    if sign(fa_final) != sa || sign(fb_final) != -sa {
        return Err(Error::Numerical(format!("bracket [{a}, {b}] lost its sign change")));
    }
    Ok(Root { x, fx, bracket: (a, b) })
}

/// All roots of `f` on `[lo, hi]` found by a scan over `cells` uniform
/// subintervals, each refined with [`refine_root`]. Ascending order.
pub fn roots_in_interval<T, F, D>(f: F, df: D, lo: T, hi: T, cells: usize) -> Result<Vec<Root<T>>>
where
    T: Real,
    F: Fn(T) -> T,
    D: Fn(T) -> T,
{
    if cells == 0 || !(lo < hi) {
        return Err(Error::domain(format!("bad scan: [{lo}, {hi}] with {cells} cells")));
    }
    let span = hi - lo;
    let grid: Vec<T> = (0..=cells)
        .map(|i| if i == cells { hi } else { lo + span * T::of(i) / T::of(cells) })
        .collect();
    let values: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    let mut out: Vec<Root<T>> = Vec::new();
    for i in 0..cells {
        let (f0, f1) = (values[i], values[i + 1]);
        if f0 == T::zero() {
            if out.last().is_none_or(|r| r.x != grid[i]) {
                out.push(Root { x: grid[i], fx: f0, bracket: (grid[i], grid[i]) });
            }
            continue;
        }
        if f1 == T::zero() {
            if i + 1 == cells {
                out.push(Root { x: grid[i + 1], fx: f1, bracket: (grid[i + 1], grid[i + 1]) });
            }
            continue;
        }
        if sign(f0) != sign(f1) {
            out.push(refine_root(&f, &df, grid[i], grid[i + 1])?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = refine_root(|x: f64| x * x - 2.0, |x| 2.0 * x, 1.0, 2.0).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() <= f64::EPSILON * 2.0);
        assert!(r.bracket.0 <= 2f64.sqrt() && 2f64.sqrt() <= r.bracket.1);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-13);
    }

    #[test]
    fn newton_rejected_when_escaping() {
        // derivative deliberately wrong: Newton steps leave the bracket
        let r = refine_root(|x: f64| x.powi(3) - 0.001, |_| 1e-30, 0.0, 1.0).unwrap();
        assert!((r.x - 0.1).abs() < 1e-13);
    }

    #[test]
    fn exact_endpoint_root() {
        let r = refine_root(|x: f64| x - 1.0, |_| 1.0, 1.0, 3.0).unwrap();
        assert_eq!(r.x, 1.0);
        assert_eq!(r.bracket, (1.0, 1.0));
    }

    #[test]
    fn no_sign_change_is_an_error() {
        assert!(refine_root(|x: f64| x * x + 1.0, |x| 2.0 * x, -1.0, 1.0).is_err());
    }

    #[test]
    fn scan_finds_all_roots() {
        let f = |x: f64| (x - 0.2) * (x - 0.5) * (x - 0.9);
        let df = |x: f64| (x - 0.5) * (x - 0.9) + (x - 0.2) * (x - 0.9) + (x - 0.2) * (x - 0.5);
        let roots = roots_in_interval(f, df, 0.0, 1.0, 7).unwrap();
        let xs: Vec<f64> = roots.iter().map(|r| r.x).collect();
        assert_eq!(xs.len(), 3);
        for (x, want) in xs.iter().zip([0.2, 0.5, 0.9]) {
            assert!((x - want).abs() < 1e-13);
        }
    }

    #[test]
    fn scan_reports_grid_root_once() {
        let roots = roots_in_interval(|x: f64| x - 0.5, |_| 1.0, 0.0, 1.0, 4).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].x, 0.5);
    }
}
