//! Floating-point instruments that check the distributional picture behind
//! the exact engine: Fourier coefficients of the boundary distribution, the
//! finite-part pairing with its `tan(ε/2)` counterterm, the `δ′` comb, and the
//! approximate-identity limit. Nothing here feeds back into exact results.

mod fourier;
pub mod mollifier;
mod pairing;
pub mod quadrature;

pub use fourier::{fourier_coeff_quadrature, fourier_coeff_residue, Branch, QuadratureEstimate};
pub use mollifier::{mollifier_value, Mollifier};
pub use pairing::{
    approx_identity_limit, delta_prime_comb, fit_divergence, pf_pairing, ApproxIdentity, DivergenceFit, PfOptions,
    PfResult,
};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default excision radii `ε_j = (π/8)·4^{-j}`, `j = 0..6`.
pub fn default_eps_schedule() -> Vec<f64> {
    (0..7).map(|j| std::f64::consts::FRAC_PI_8 / 4f64.powi(j)).collect()
}

/// Default mollifier scales for the approximate-identity limit.
pub fn default_m_schedule() -> Vec<u32> {
    vec![8, 16, 32, 64]
}

/// One step of a convergence trace; serialises as `{"<key>": x, "value": [re, im]}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub key: TraceKey,
    pub x: f64,
    pub value: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKey {
    Eps,
    M,
}

impl Serialize for TracePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TracePoint", 2)?;
        match self.key {
            TraceKey::Eps => st.serialize_field("eps", &self.x)?,
            TraceKey::M => st.serialize_field("m", &(self.x as u64))?,
        }
        st.serialize_field("value", &[self.value.re, self.value.im])?;
        st.end()
    }
}

/// Richardson extrapolation toward `h → 0` for `v(h) = L + Σ c_l h^{p_l}`.
///
/// Returns the extrapolant available after each point (the last entry is the
/// best estimate). Elimination is exact when the step sizes form a geometric
/// sequence, which every schedule in this module does.
pub fn richardson(h: &[f64], v: &[Complex64], exponents: &[i32]) -> Vec<Complex64> {
    assert_eq!(h.len(), v.len());
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(v.len());
    let mut best = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let mut row = vec![v[i]];
        for (l, &p) in exponents.iter().enumerate().take(i) {
            let q = (h[i - 1] / h[i]).powi(p);
            let prev = rows[i - 1][l];
            row.push((row[l] * q - prev) / (q - 1.0));
        }
        best.push(*row.last().expect("non-empty row"));
        rows.push(row);
    }
    best
}

fn check_eps_schedule(schedule: &[f64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("empty ε schedule".into()));
    }
    if schedule.iter().any(|&e| !(e > 0.0 && e < std::f64::consts::FRAC_PI_2)) {
        return Err(Error::InvalidArgument("ε values must lie in (0, π/2)".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("ε schedule must decrease strictly".into()));
    }
    Ok(())
}

/// `|E_last - E_prev|`, or infinity when only one extrapolant exists.
fn last_change(extrapolants: &[Complex64]) -> f64 {
    match extrapolants {
        [.., a, b] => (b - a).norm(),
        _ => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_listed_powers() {
        let h: Vec<f64> = (0..5).map(|j| 0.5f64.powi(j)).collect();
        let v: Vec<Complex64> = h.iter().map(|&x| Complex64::new(2.0 + 3.0 * x - x.powi(3), 0.0)).collect();
        let e = richardson(&h, &v, &[1, 3]);
        assert!((e[2].re - 2.0).abs() < 1e-13);
        assert!((e[4].re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn trace_point_json_shape() {
        let p = TracePoint { key: TraceKey::Eps, x: 0.5, value: Complex64::new(1.0, -2.0) };
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"eps":0.5,"value":[1.0,-2.0]}"#);
        let p = TracePoint { key: TraceKey::M, x: 64.0, value: Complex64::new(0.25, 0.0) };
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"m":64,"value":[0.25,0.0]}"#);
    }

    #[test]
    fn eps_schedule_validation() {
        assert!(check_eps_schedule(&default_eps_schedule()).is_ok());
        assert!(check_eps_schedule(&[]).is_err());
        assert!(check_eps_schedule(&[0.1, 0.2]).is_err());
        assert!(check_eps_schedule(&[2.0, 0.1]).is_err());
    }
}
