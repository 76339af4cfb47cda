//! Gauss rule for the weight `t^{β−1}(1 − t)^{−β}` on `(0, 1)`.
//!
//! This is the shifted Jacobi weight with exponents `β − 1` at `t = 0` and
//! `−β` at `t = 1`. Nodes are the eigenvalues of the Jacobi matrix built
//! from the three-term recurrence (Golub–Welsch), polished by Newton steps
//! on the orthonormal polynomial; weights are Christoffel numbers
//! `1 / Σ_k p_k(t_i)²`.

use crate::error::{Error, Result};
use crate::num::{CompensatedSum, Real};

pub const DEFAULT_NODE_COUNT: usize = 96;

const MIN_NODES: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T> {
    beta: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Exponents of the weight at `t = 0` and `t = 1`.
    pub fn endpoint_exponents(&self) -> (T, T) {
        (self.beta - T::one(), -self.beta)
    }

    /// `∫₀¹ t^{β−1}(1−t)^{−β} q(t) dt ≈ Σ w_i q(t_i)`.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut q: F) -> T {
        let mut acc = CompensatedSum::new();
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * q(t));
        }
        acc.value()
    }
}

/// Recurrence coefficients of the monic orthogonal polynomials.
struct Recurrence<T> {
    beta: T,
}

impl<T: Real> Recurrence<T> {
    /// Diagonal entry `a_k`.
    fn a(&self, k: usize) -> T {
        let b = self.beta;
        let half = T::lit(0.5);
        if k == 0 {
            return b;
        }
        let kf = T::of(k);
        let two = T::two();
        let num = T::one() - two * b;
        let den = (two * kf - T::one()) * (two * kf + T::one());
        half * (T::one() + num / den)
    }

    /// Squared off-diagonal entry `b_k`, `k ≥ 1`.
    fn b(&self, k: usize) -> T {
        let b = self.beta;
        if k == 1 {
            return b * (T::one() - b) * T::lit(0.5);
        }
        let kf = T::of(k);
        let m = T::two() * kf - T::one();
        (kf - b) * (kf + b - T::one()) / (T::lit(4.0) * m * m)
    }

    /// Zeroth moment `∫ w = B(β, 1 − β) = π / sin πβ`.
    fn mu0(&self) -> T {
        T::PI() / (T::PI() * self.beta).sin()
    }
}

/// Builds the `node_count`-point Gauss rule for `t^{β−1}(1−t)^{−β}`.
pub fn build_rule<T: Real>(beta: T, node_count: usize) -> Result<QuadratureRule<T>> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::domain(format!("quadrature weight needs 0 < beta < 1, got {beta}")));
    }
    if node_count < MIN_NODES {
        return Err(Error::domain(format!(
            "need at least {MIN_NODES} quadrature nodes, got {node_count}"
        )));
    }
    let rec = Recurrence { beta };
    let mut diag: Vec<T> = (0..node_count).map(|k| rec.a(k)).collect();
    let mut off: Vec<T> = (1..node_count).map(|k| rec.b(k).sqrt()).collect();
    off.push(T::zero());
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));

    let mut nodes = Vec::with_capacity(node_count);
    let mut weights = Vec::with_capacity(node_count);
    for &guess in &diag {
        let t = newton_polish(&rec, node_count, guess);
        nodes.push(t);
        weights.push(christoffel(&rec, node_count, t));
    }
    let ordered = nodes.windows(2).all(|w| w[0] < w[1]);
    let inside = nodes.first().is_some_and(|&t| t > T::zero()) && nodes.last().is_some_and(|&t| t < T::one());
    if !ordered || !inside || weights.iter().any(|w| !(*w > T::zero())) {
        return Err(Error::Numerical(format!(
            "quadrature construction failed for beta = {beta}, {node_count} nodes"
        )));
    }
    Ok(QuadratureRule { beta, nodes, weights })
}

/// Orthonormal polynomials `p_{N−1}(t)`, `p_N(t)` and `p_N'(t)` scaled by
/// `√b_N`; only their ratio matters for Newton.
fn orthonormal_top<T: Real>(rec: &Recurrence<T>, count: usize, t: T) -> (T, T) {
    let mut p_prev = T::zero();
    let mut p = T::one();
    let mut dp_prev = T::zero();
    let mut dp = T::zero();
    let mut sb_prev = T::zero();
    for k in 0..count {
        let a = rec.a(k);
        let sb = rec.b(k + 1).sqrt();
        let p_next = ((t - a) * p - sb_prev * p_prev) / sb;
        let dp_next = (p + (t - a) * dp - sb_prev * dp_prev) / sb;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        sb_prev = sb;
    }
    (p, dp)
}

fn newton_polish<T: Real>(rec: &Recurrence<T>, count: usize, guess: T) -> T {
    let mut t = guess;
    for _ in 0..3 {
        let (p, dp) = orthonormal_top(rec, count, t);
        if dp == T::zero() {
            break;
        }
        let step = p / dp;
        let next = t - step;
        // eigenvalues are already close; reject anything that wanders
        if !(next.abs() < T::one() + T::one()) || step.abs() > T::lit(1e-6) * (T::one() + t.abs()) {
            break;
        }
        t = next;
        if step == T::zero() {
            break;
        }
    }
    t
}

/// Christoffel number `1 / Σ_{k<N} p_k(t)²` with orthonormal `p_k`.
fn christoffel<T: Real>(rec: &Recurrence<T>, count: usize, t: T) -> T {
    let mut p_prev = T::zero();
    let mut p = T::one() / rec.mu0().sqrt();
    let mut sum = CompensatedSum::new();
    let mut sb_prev = T::zero();
    for k in 0..count {
        sum.add(p * p);
        if k + 1 == count {
            break;
        }
        let sb = rec.b(k + 1).sqrt();
        let p_next = ((t - rec.a(k)) * p - sb_prev * p_prev) / sb;
        p_prev = p;
        p = p_next;
        sb_prev = sb;
    }
    T::one() / sum.value()
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `diag` is overwritten with the eigenvalues; `off[i]`
/// couples rows `i` and `i + 1` and `off[n − 1]` must be zero.
fn tridiagonal_eigenvalues<T: Real>(diag: &mut [T], off: &mut [T]) -> Result<()> {
    let n = diag.len();
    let eps = T::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numerical("tridiagonal QL iteration did not converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (T::two() * off[l]);
            let mut r = g.hypot(T::one());
            let signed = if g >= T::zero() { r.abs() } else { -r.abs() };
            g = diag[m] - diag[l] + off[l] / (g + signed);
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == T::zero() {
                    diag[i + 1] = diag[i + 1] - p;
                    off[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + T::two() * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            diag[l] = diag[l] - p;
            off[l] = g;
            off[m] = T::zero();
        }
    }
    Ok(())
}
