//! All-roots polynomial solver (Aberth–Ehrlich simultaneous iteration) plus
//! recognition of exact Gaussian-rational roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{ComplexQ, Poly, Rational};

pub const MAX_ITERATIONS: usize = 200;
pub const RESIDUAL_THRESHOLD: f64 = 1e-12;

/// Largest denominator tried when snapping a float root to a rational.
const SNAP_MAX_DENOM: i64 = 100_000;

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `|p(z)| / Σ |c_j| |z|^j`, the backward-error residual.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = eval_with_derivative(coeffs, z);
    let r = z.norm();
    let scale: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Finds all complex roots of the polynomial with the given ascending coefficients.
///
/// Fails with [`Error::RootFinder`] when the worst relative residual is still
/// above [`RESIDUAL_THRESHOLD`] after [`MAX_ITERATIONS`] sweeps.
pub fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
        coeffs.pop();
    }
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }

    // Initial guesses on a circle whose radius bounds the root moduli (Cauchy bound).
    let lead = coeffs[n].norm();
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm() / lead).fold(0.0, f64::max);
    let start = radius.clamp(0.5, 2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(start, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();

    let mut converged = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(&coeffs, z[i]);
            if p.norm() == 0.0 {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() { ratio } else { ratio / denom };
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
                if step.norm() <= 1e-15 * z[i].norm().max(1.0) {
                    converged[i] = true;
                }
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    let worst = z.iter().map(|&r| relative_residual(&coeffs, r)).fold(0.0, f64::max);
    if worst.is_nan() || worst >= RESIDUAL_THRESHOLD {
        return Err(Error::RootFinder { residual: worst });
    }
    Ok(z)
}

/// Best rational approximation with denominator at most `max_denom` (continued fractions).
fn rational_approx(x: f64, max_denom: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rem = x;
    for _ in 0..64 {
        let a = rem.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_denom as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rem - a;
        if frac.abs() < 1e-13 {
            break;
        }
        rem = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Rational::ratio(BigInt::from(h1), BigInt::from(k1)).ok()
}

/// Tries to recognise `approx` as an exact root of `p` in ℚ(i).
pub fn snap_exact_root(p: &Poly, approx: Complex64) -> Option<ComplexQ> {
    let re = rational_approx(approx.re, SNAP_MAX_DENOM)?;
    let im = rational_approx(approx.im, SNAP_MAX_DENOM)?;
    let candidate = ComplexQ::new(re, im);
    // Sanity: the snapped value must be close to the float root before paying for exact evaluation.
    let dist = (candidate.to_c64() - approx).norm();
    if dist > 1e-6 * approx.norm().max(1.0) {
        return None;
    }
    p.eval(&candidate).is_zero().then_some(candidate)
}
