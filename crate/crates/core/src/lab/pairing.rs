//! Pairings of the boundary distribution with bump test functions.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::fourier::{excised_integral, ser_c64, EPS_EXPONENTS};
use super::mollifier::{Mollifier, MAX_DERIVATIVE};
use super::quadrature::{composite, gl16, uniform_breakpoints, Grading};
use super::{check_eps_schedule, default_eps_schedule, last_change, richardson, TraceKey, TracePoint};
use crate::error::{Error, Result};
use crate::genfun::RationalGF;

/// Panels across a bump's support.
const SUPPORT_PANELS: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct PfOptions {
    /// Add `d₋₁ e^{-it₀} φ(t₀) / tan(ε/2)`; without it the pairing diverges as `ε → 0`.
    pub counterterm: bool,
    pub schedule: Vec<f64>,
}

impl Default for PfOptions {
    fn default() -> Self {
        Self { counterterm: true, schedule: default_eps_schedule() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PfResult {
    /// Extrapolated limit with the counterterm; the smallest-`ε` value without it.
    #[serde(serialize_with = "ser_c64")]
    pub value: Complex64,
    /// Last change between extrapolants (infinite without the counterterm).
    pub error: f64,
    pub trace: Vec<TracePoint>,
    #[serde(skip)]
    pub extrapolants: Vec<Complex64>,
    /// Pole angle (the representative nearest the bump center), when there is one.
    pub t0: Option<f64>,
    /// `Σ_k φ(t₀ + 2πk)`, the weight of the counterterm.
    pub phi_t0: Option<f64>,
    /// `d₋₁`.
    #[serde(skip)]
    pub d_minus1: Option<Complex64>,
}

/// Finite-part pairing `⟨Pf f′(e^{it}) e^{it}, φ⟩`.
///
/// The boundary distribution is 2π-periodic, so every comb point `t₀ + 2πk`
/// inside the support is excised and carries its own counterterm; for a
/// support inside `(t₀ - π, t₀ + π)` this is the single-window construction.
pub fn pf_pairing(f: &RationalGF, phi: &Mollifier, opts: &PfOptions) -> Result<PfResult> {
    check_eps_schedule(&opts.schedule)?;
    let report = f.classify_poles()?;
    let laurent = f.circle_laurent(&report)?;
    let fl = f.float();
    let (a, b) = phi.support();
    let g = |t: f64| fl.circle_density(t) * phi.value(t, 0).expect("order 0");

    let Some(l) = laurent else {
        let value = composite(gl16(), &g, &uniform_breakpoints(a, b, SUPPORT_PANELS));
        return Ok(PfResult {
            value,
            error: 0.0,
            trace: Vec::new(),
            extrapolants: vec![value],
            t0: None,
            phi_t0: None,
            d_minus1: None,
        });
    };

    // The distribution is 2π-periodic: split the support into the windows
    // [p - π, p + π] around each comb point p = t₀ + 2πk and excise each p.
    let t0 = l.t0 + ((phi.center - l.t0) / TAU).round() * TAU;
    let first = ((a - l.t0) / TAU).floor() as i64 - 1;
    let last = ((b - l.t0) / TAU).ceil() as i64 + 1;
    let windows: Vec<(f64, (f64, f64))> = (first..=last)
        .map(|k| l.t0 + TAU * k as f64)
        .map(|p| (p, (a.max(p - PI), b.min(p + PI))))
        .filter(|(_, (lo, hi))| hi > lo)
        .collect();
    let d = l.d_minus1.to_c64();
    let mut phi_t0 = 0.0;
    for &(p, _) in &windows {
        phi_t0 += phi.value(p, 0)?;
    }
    let counter_coeff = d * Complex64::from_polar(1.0, -l.t0) * phi_t0;
    let grading = Grading { max_width: 0.25f64.min((b - a) / SUPPORT_PANELS as f64), ..Grading::default() };
    let values: Vec<Complex64> = opts
        .schedule
        .iter()
        .map(|&eps| {
            let integral: Complex64 =
                windows.iter().map(|&(p, clip)| excised_integral(&g, p, eps, Some(clip), &grading)).sum();
            if opts.counterterm {
                integral + counter_coeff / (eps / 2.0).tan()
            } else {
                integral
            }
        })
        .collect();
    let trace = opts
        .schedule
        .iter()
        .zip(&values)
        .map(|(&eps, &value)| TracePoint { key: TraceKey::Eps, x: eps, value })
        .collect();
    let (value, error, extrapolants) = if opts.counterterm {
        let ex = richardson(&opts.schedule, &values, &EPS_EXPONENTS);
        (*ex.last().expect("non-empty"), last_change(&ex), ex)
    } else {
        (*values.last().expect("non-empty"), f64::INFINITY, Vec::new())
    };
    if opts.counterterm && !value.is_finite() {
        return Err(Error::Convergence("finite-part pairing produced a non-finite value".into()));
    }
    Ok(PfResult { value, error, trace, extrapolants, t0: Some(t0), phi_t0: Some(phi_t0), d_minus1: Some(d) })
}

/// Least-squares fit `v(ε) ≈ α/ε + β` over a trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceFit {
    #[serde(serialize_with = "ser_c64")]
    pub alpha: Complex64,
    #[serde(serialize_with = "ser_c64")]
    pub beta: Complex64,
}

pub fn fit_divergence(trace: &[TracePoint]) -> Result<DivergenceFit> {
    if trace.len() < 2 {
        return Err(Error::InvalidArgument("need at least two trace points to fit".into()));
    }
    let n = trace.len() as f64;
    let (mut su, mut suu) = (0.0, 0.0);
    let (mut sv, mut suv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for p in trace {
        let u = 1.0 / p.x;
        su += u;
        suu += u * u;
        sv += p.value;
        suv += p.value * u;
    }
    let det = suu * n - su * su;
    if det == 0.0 {
        return Err(Error::InvalidArgument("trace points must have distinct ε".into()));
    }
    Ok(DivergenceFit { alpha: (suv * n - sv * su) / det, beta: (sv * suu - suv * su) / det })
}

/// `⟨Σ_n δ′_{t₀+2nπ}, φ⟩ = -Σ φ′(t₀ + 2nπ)` over comb points inside the support.
pub fn delta_prime_comb(phi: &Mollifier, t0: f64) -> Result<f64> {
    let (a, b) = phi.support();
    let first = ((a - t0) / TAU).floor() as i64;
    let last = ((b - t0) / TAU).ceil() as i64;
    let mut sum = 0.0;
    for n in first..=last {
        let t = t0 + TAU * n as f64;
        if t > a && t < b {
            sum -= phi.value(t, 1)?;
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxIdentity {
    pub k: usize,
    /// `(-1)^{k-1} ∫ f′(e^{it}) e^{it} φ_m^{(k-1)}(t) dt` for each `m`.
    #[serde(skip)]
    pub raw: Vec<Complex64>,
    /// The same values divided by `i^{k-1}`, so they approach the regularized sum.
    pub trace: Vec<TracePoint>,
    #[serde(skip)]
    pub extrapolants: Vec<Complex64>,
    #[serde(serialize_with = "ser_c64")]
    pub limit: Complex64,
    pub error: f64,
}

/// Pairs the boundary distribution's `(k-1)`-th derivative with `φ_m` and
/// extrapolates `m → ∞` (the error is even in `1/m` since `φ` is even).
pub fn approx_identity_limit(f: &RationalGF, k: usize, m_schedule: &[u32]) -> Result<ApproxIdentity> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if k - 1 > MAX_DERIVATIVE {
        return Err(Error::InvalidArgument(format!("k must be at most {}", MAX_DERIVATIVE + 1)));
    }
    if m_schedule.is_empty() || m_schedule.windows(2).any(|w| w[1] <= w[0]) || m_schedule[0] == 0 {
        return Err(Error::InvalidArgument("m schedule must be positive and strictly increasing".into()));
    }
    let report = f.classify_poles()?;
    if let Some(l) = f.circle_laurent(&report)? {
        let distance = l.t0.min(TAU - l.t0);
        if distance <= 1.0 / m_schedule[0] as f64 {
            return Err(Error::SupportOverlap);
        }
    }
    let fl = f.float();
    let sign = if (k - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = Complex64::i().powi(k as i32 - 1);
    let mut raw = Vec::with_capacity(m_schedule.len());
    for &m in m_schedule {
        let mol = Mollifier::new(m)?;
        let (a, b) = mol.support();
        let integrand = |t: f64| fl.circle_density(t) * mol.value(t, k - 1).expect("order checked");
        raw.push(composite(gl16(), &integrand, &uniform_breakpoints(a, b, SUPPORT_PANELS)) * sign);
    }
    let normalized: Vec<Complex64> = raw.iter().map(|v| v / norm).collect();
    let h: Vec<f64> = m_schedule.iter().map(|&m| 1.0 / m as f64).collect();
    let extrapolants = richardson(&h, &normalized, &[2, 4, 6]);
    let limit = *extrapolants.last().expect("non-empty");
    let trace = m_schedule
        .iter()
        .zip(&normalized)
        .map(|(&m, &value)| TracePoint { key: TraceKey::M, x: m as f64, value })
        .collect();
    Ok(ApproxIdentity { k, raw, trace, error: last_change(&extrapolants), extrapolants, limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn monomial() -> RationalGF {
        RationalGF::new(Poly::z(), Poly::from_integers(&[1])).unwrap()
    }

    #[test]
    fn pairing_away_from_the_pole_is_a_plain_integral() {
        let f = RationalGF::alternating();
        let phi = Mollifier::normalized_at(0.0, 1.0).unwrap();
        let r = pf_pairing(&f, &phi, &PfOptions::default()).unwrap();
        let fl = f.float();
        let plain = composite(
            gl16(),
            &|t: f64| fl.circle_density(t) * phi.value(t, 0).unwrap(),
            &uniform_breakpoints(-1.0, 1.0, 64),
        );
        assert_eq!(r.phi_t0, Some(0.0));
        assert!((r.value - plain).norm() < 1e-12);
    }

    #[test]
    fn pairing_at_the_pole_converges_and_self_agrees() {
        let f = RationalGF::alternating();
        let phi = Mollifier::normalized_at(PI, 1.0).unwrap();
        let r = pf_pairing(&f, &phi, &PfOptions::default()).unwrap();
        assert!(r.error < 1e-6, "{r:?}");
        // a schedule ten times finer, as an independent reference
        let fine: Vec<f64> = default_eps_schedule().iter().map(|e| e / 10.0).collect();
        let reference = pf_pairing(&f, &phi, &PfOptions { counterterm: true, schedule: fine }).unwrap();
        assert!((r.value - reference.value).norm() < 1e-6);
    }

    #[test]
    fn omitting_the_counterterm_diverges_like_two_over_eps() {
        let f = RationalGF::alternating();
        let phi = Mollifier::normalized_at(PI, 1.0).unwrap();
        let r = pf_pairing(&f, &phi, &PfOptions { counterterm: false, ..PfOptions::default() }).unwrap();
        let fit = fit_divergence(&r.trace).unwrap();
        let expected = 2.0 * (r.d_minus1.unwrap() * r.phi_t0.unwrap()).norm();
        assert!((fit.alpha.norm() - expected).abs() < 0.1 * expected, "{} vs {expected}", fit.alpha.norm());
    }

    #[test]
    fn pairing_is_periodic_and_handles_wide_supports() {
        let f = RationalGF::alternating();
        let wide = Mollifier::normalized_at(0.5, 0.3).unwrap(); // covers both -π and π
        let shifted = Mollifier::normalized_at(0.5 + TAU, 0.3).unwrap();
        let r = pf_pairing(&f, &wide, &PfOptions::default()).unwrap();
        let s = pf_pairing(&f, &shifted, &PfOptions::default()).unwrap();
        assert!(r.error < 1e-6, "{r:?}");
        assert!((r.value - s.value).norm() < 1e-9);
        let both = wide.value(PI, 0).unwrap() + wide.value(-PI, 0).unwrap();
        assert!((r.phi_t0.unwrap() - both).abs() < 1e-15);
    }

    #[test]
    fn delta_comb_examples() {
        let at_zero = Mollifier::new(1).unwrap();
        assert_eq!(delta_prime_comb(&at_zero, PI).unwrap(), 0.0);
        let centered = Mollifier::bump(PI, 1.0, 1.0).unwrap();
        assert_eq!(delta_prime_comb(&centered, PI).unwrap(), 0.0);
        let shifted = Mollifier::bump(PI + 0.25, 2.0, 1.0).unwrap();
        let h = 1e-5;
        let fd = (shifted.value(PI + h, 0).unwrap() - shifted.value(PI - h, 0).unwrap()) / (2.0 * h);
        let got = delta_prime_comb(&shifted, PI).unwrap();
        assert!(got != 0.0 && (got + fd).abs() < 1e-8 * fd.abs().max(1.0));
        // comb points repeat every 2π
        assert_eq!(delta_prime_comb(&shifted, PI - TAU).unwrap(), got);
    }

    #[test]
    fn approximate_identity_examples() {
        let alt = RationalGF::alternating();
        let r = approx_identity_limit(&alt, 1, &[8, 16, 32, 64]).unwrap();
        assert!((r.limit - Complex64::new(0.25, 0.0)).norm() < 1e-4, "{r:?}");
        let r = approx_identity_limit(&alt, 2, &[16, 32, 64, 128]).unwrap();
        assert!(r.limit.norm() < 1e-3, "{r:?}");
        let r = approx_identity_limit(&monomial(), 1, &[4, 8, 16, 32]).unwrap();
        assert!((r.limit - Complex64::new(1.0, 0.0)).norm() < 1e-8, "{r:?}");
    }

    #[test]
    fn approximate_identity_deltas_shrink() {
        let alt = RationalGF::alternating();
        let half = RationalGF::geometric(&crate::exact::ComplexQ::ratio(1, 2));
        for f in [alt, half] {
            let r = approx_identity_limit(&f, 1, &[4, 8, 16, 32, 64]).unwrap();
            let deltas: Vec<f64> = r.trace.windows(2).map(|w| (w[1].value - w[0].value).norm()).collect();
            assert!(deltas.windows(2).all(|d| d[1] < d[0]), "{deltas:?}");
        }
    }

    #[test]
    fn approximate_identity_rejects_overlap_and_bad_input() {
        let alt = RationalGF::alternating();
        // pole at angle -0.927..., inside the support [-1, 1] of φ_1
        let near = RationalGF::geometric(&"3/5+4/5i".parse().unwrap());
        assert_eq!(approx_identity_limit(&near, 1, &[1, 2]).unwrap_err(), Error::SupportOverlap);
        assert!(approx_identity_limit(&near, 1, &[2, 4]).is_ok());
        assert_eq!(approx_identity_limit(&alt, 0, &[8]).unwrap_err(), Error::ZeroOrder);
        assert!(approx_identity_limit(&alt, 1, &[16, 8]).is_err());
        assert!(approx_identity_limit(&alt, 14, &[8]).is_err());
    }
}
