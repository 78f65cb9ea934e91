//! Fourier coefficients `c_n` of the boundary distribution `f′(e^{it}) e^{it}`,
//! which should equal `n a_n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::{composite, gl16, Grading};
use super::{default_eps_schedule, last_change, richardson, TraceKey, TracePoint};
use crate::error::{Error, Result};
use crate::exact::ComplexQ;
use crate::genfun::{LaurentData, RationalGF};
use crate::jet::Jet;

/// Exponents of the excision error `v(ε) - v(0) = c₁ ε + c₃ ε³ + …`.
pub(super) const EPS_EXPONENTS: [i32; 2] = [1, 3];

/// `n a_n` as the coefficient of `z^{n-1}` in the series of `f′` at 0 (exact).
pub fn fourier_coeff_residue(f: &RationalGF, n: usize) -> Result<ComplexQ> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (num, den) = f.reduced();
    let z = Jet::variable(n);
    let numer = num.derivative().mul(den).sub(&num.mul(&den.derivative()));
    let fprime = Jet::div_formal(&Jet::compose_poly(&numer, &z), &Jet::compose_poly(&den.mul(den), &z))?;
    Ok(fprime.coeff(n - 1).clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// No pole on the circle: periodic trapezoid rule.
    Trapezoid,
    /// Simple pole on the circle: excised integral, counterterm and `δ′` term.
    FinitePart,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    #[serde(serialize_with = "ser_c64")]
    pub value: Complex64,
    pub error: f64,
    pub branch: Branch,
    pub trace: Vec<TracePoint>,
}

pub(crate) fn ser_c64<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// `c_n` by quadrature: trapezoid rule when `f` is analytic on the closed
/// disc, otherwise the finite-part construction extrapolated in `ε`.
pub fn fourier_coeff_quadrature(f: &RationalGF, n: i64) -> Result<QuadratureEstimate> {
    let report = f.classify_poles()?;
    match f.circle_laurent(&report)? {
        None => trapezoid(f, n),
        Some(l) => finite_part(f, &l, n, &default_eps_schedule()),
    }
}

fn trapezoid(f: &RationalGF, n: i64) -> Result<QuadratureEstimate> {
    let fl = f.float();
    let sample = |points: usize| -> Complex64 {
        let sum: Complex64 = (0..points)
            .map(|j| {
                let t = TAU * j as f64 / points as f64;
                fl.circle_density(t) * Complex64::from_polar(1.0, -(n as f64) * t)
            })
            .sum();
        sum / points as f64
    };
    let mut points = (4 * (n.unsigned_abs() as usize + 1)).max(32).next_power_of_two();
    let mut prev = sample(points);
    while points < 1 << 22 {
        points *= 2;
        let next = sample(points);
        let change = (next - prev).norm();
        if change <= 1e-14 * next.norm().max(1.0) {
            return Ok(QuadratureEstimate { value: next, error: change, branch: Branch::Trapezoid, trace: Vec::new() });
        }
        prev = next;
    }
    Err(Error::Convergence(format!("trapezoid rule did not settle for n = {n}")))
}

/// `∫_{ε ≤ |t - t0| ≤ π} g(t) dt`, optionally clipped to `[a, b]`, on panels graded toward `t0`.
pub(super) fn excised_integral<G: Fn(f64) -> Complex64>(
    g: &G,
    t0: f64,
    eps: f64,
    clip: Option<(f64, f64)>,
    grading: &Grading,
) -> Complex64 {
    let (a, b) = clip.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
    // right side t = t0 + x, left side t = t0 - x, with x ∈ [ε, π]
    let right = grading.breakpoints(eps.max(a - t0), PI.min(b - t0));
    let left = grading.breakpoints(eps.max(t0 - b), PI.min(t0 - a));
    composite(gl16(), &|x: f64| g(t0 + x), &right) + composite(gl16(), &|x: f64| g(t0 - x), &left)
}

fn finite_part(f: &RationalGF, l: &LaurentData, n: i64, schedule: &[f64]) -> Result<QuadratureEstimate> {
    let fl = f.float();
    let (t0, d) = (l.t0, l.d_minus1.to_c64());
    let nf = n as f64;
    let grading = Grading { max_width: 0.25f64.min(2.0 / (1.0 + nf.abs())), ..Grading::default() };
    let g = |t: f64| fl.circle_density(t) * Complex64::from_polar(1.0, -nf * t);
    let delta_term = d * nf * PI * Complex64::from_polar(1.0, -(nf + 1.0) * t0);
    let values: Vec<Complex64> = schedule
        .iter()
        .map(|&eps| {
            let counter =
                d * Complex64::from_polar(1.0, -nf * t0) / (Complex64::from_polar(1.0, t0) * (eps / 2.0).tan());
            excised_integral(&g, t0, eps, None, &grading) + counter
        })
        .collect();
    let extrapolants = richardson(schedule, &values, &EPS_EXPONENTS);
    let limit = *extrapolants.last().expect("non-empty schedule");
    let value = (limit + delta_term) / TAU;
    let error = last_change(&extrapolants) / TAU;
    let trace: Vec<TracePoint> = schedule
        .iter()
        .zip(&values)
        .map(|(&eps, v)| TracePoint { key: TraceKey::Eps, x: eps, value: (v + delta_term) / TAU })
        .collect();
    if !value.is_finite() || error.is_nan() || error > 1e-3 * (1.0 + value.norm()) {
        return Err(Error::Convergence(format!(
            "ε-extrapolation did not settle for n = {n}; trace: {}",
            serde_json::to_string(&trace).unwrap_or_default()
        )));
    }
    Ok(QuadratureEstimate { value, error, branch: Branch::FinitePart, trace })
}
