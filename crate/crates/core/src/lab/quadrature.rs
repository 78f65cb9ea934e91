//! Gauss–Legendre rules, composite panels and a small adaptive integrator.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on `P_n` from Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: Complex64 = self.nodes.iter().zip(&self.weights).map(|(x, w)| f(mid + half * x) * *w).sum();
        sum * half
    }

    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// The 16-point rule used throughout the lab.
pub fn gl16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

/// Sum of `rule` over consecutive panels `[b_i, b_{i+1}]`.
pub fn composite<F: Fn(f64) -> Complex64>(rule: &GaussLegendre, f: &F, breakpoints: &[f64]) -> Complex64 {
    breakpoints.windows(2).map(|w| rule.integrate(f, w[0], w[1])).sum()
}

/// `n` equal panels on `[a, b]`.
pub fn uniform_breakpoints(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

/// Panel layout for distances `x ∈ [lo, hi]` from a singular point.
///
/// Breakpoints sit at `reference · ratio^i`, so each panel spans a fixed
/// ratio of distances, then any panel wider than `max_width` is split evenly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grading {
    pub reference: f64,
    pub ratio: f64,
    pub max_panels: usize,
    pub max_width: f64,
}

impl Default for Grading {
    fn default() -> Self {
        Self { reference: std::f64::consts::PI, ratio: 0.5, max_panels: 24, max_width: 0.25 }
    }
}

impl Grading {
    /// Ascending breakpoints covering `[lo, hi]`; empty when the range is empty.
    pub fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        if lo.is_nan() || hi.is_nan() || hi <= lo {
            return Vec::new();
        }
        let mut pts = vec![lo, hi];
        let mut d = self.reference;
        for _ in 0..self.max_panels {
            if d > lo && d < hi {
                pts.push(d);
            }
            d *= self.ratio;
            if d <= lo {
                break;
            }
        }
        pts.sort_by(f64::total_cmp);
        let mut out = vec![pts[0]];
        for w in pts.windows(2) {
            let pieces = ((w[1] - w[0]) / self.max_width).ceil().max(1.0) as usize;
            for j in 1..=pieces {
                out.push(w[0] + (w[1] - w[0]) * j as f64 / pieces as f64);
            }
        }
        out
    }
}

/// Adaptive bisection with a 16-point rule against its two halves.
pub fn adaptive_real<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn step<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> Result<f64> {
        let rule = gl16();
        let mid = 0.5 * (a + b);
        let left = rule.integrate_real(f, a, mid);
        let right = rule.integrate_real(f, mid, b);
        if (left + right - whole).abs() <= tol {
            return Ok(left + right);
        }
        if depth == 0 {
            return Err(Error::Convergence(format!("adaptive quadrature stalled on [{a}, {b}]")));
        }
        Ok(step(f, a, mid, left, 0.5 * tol, depth - 1)? + step(f, mid, b, right, 0.5 * tol, depth - 1)?)
    }
    let whole = gl16().integrate_real(f, a, b);
    step(f, a, b, whole, tol, 40)
}
