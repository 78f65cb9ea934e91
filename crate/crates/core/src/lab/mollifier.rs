//! The bump `ψ(u) = C exp(-1/(1 - u²))` on `(-1, 1)` and its derivatives.
//!
//! `ψ^{(j)} = P_j(u) / (1 - u²)^{2j} · ψ(u)` where the polynomials obey
//! `P_{j+1} = P_j' (1 - u²)² + (4 j u (1 - u²) - 2u) P_j`, `P_0 = 1`.
//! They are built exactly once and evaluated in double precision.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{ComplexQ, Poly};

use super::quadrature::adaptive_real;

/// Highest derivative order supported.
pub const MAX_DERIVATIVE: usize = 12;

fn profile_polys() -> &'static [Vec<f64>] {
    static POLYS: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    POLYS.get_or_init(|| {
        let u = Poly::z();
        let s = Poly::from_integers(&[1, 0, -1]);
        let s2 = s.mul(&s);
        let mut p = Poly::from_integers(&[1]);
        let mut out = Vec::with_capacity(MAX_DERIVATIVE + 1);
        for j in 0..=MAX_DERIVATIVE {
            out.push(p.to_c64().iter().map(|c| c.re).collect());
            let four_j = ComplexQ::integer(4 * j as i64);
            let factor = u.mul(&s).scale(&four_j).sub(&u.scale(&ComplexQ::integer(2)));
            p = p.derivative().mul(&s2).add(&factor.mul(&p));
        }
        out
    })
}

fn unnormalized(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - u * u)).exp()
    }
}

/// `C` with `∫ ψ = 1`, computed once by adaptive quadrature.
pub fn normalization() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let mass = adaptive_real(&unnormalized, -1.0, 1.0, 1e-15).expect("smooth integrand");
        1.0 / mass
    })
}

/// `ψ^{(j)}(u)`, zero outside `(-1, 1)`.
pub fn base_derivative(u: f64, j: usize) -> Result<f64> {
    if j > MAX_DERIVATIVE {
        return Err(Error::InvalidArgument(format!("derivative order {j} exceeds {MAX_DERIVATIVE}")));
    }
    if u.abs() >= 1.0 {
        return Ok(0.0);
    }
    let p = profile_polys()[j].iter().rev().fold(0.0, |acc, c| acc * u + c);
    if p == 0.0 {
        return Ok(0.0);
    }
    let s = 1.0 - u * u;
    // log form keeps (1-u²)^{-2j} from overflowing where exp(-1/s) underflows
    let log_mag = p.abs().ln() - 2.0 * j as f64 * s.ln() - 1.0 / s;
    Ok(normalization() * p.signum() * log_mag.exp())
}

/// `t ↦ amplitude · ψ(scale · (t - center))`.
///
/// [`Mollifier::new`] gives the approximate identity `φ_m(t) = m ψ(m t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mollifier {
    pub center: f64,
    pub scale: f64,
    pub amplitude: f64,
}

impl Mollifier {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("mollifier scale m must be at least 1".into()));
        }
        Ok(Self { center: 0.0, scale: m as f64, amplitude: m as f64 })
    }

    pub fn bump(center: f64, scale: f64, amplitude: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) || !center.is_finite() || !amplitude.is_finite() {
            return Err(Error::InvalidArgument("bump needs finite center/amplitude and positive scale".into()));
        }
        Ok(Self { center, scale, amplitude })
    }

    /// Mass-one bump of half-width `1/scale` centered at `center`.
    pub fn normalized_at(center: f64, scale: f64) -> Result<Self> {
        Self::bump(center, scale, scale)
    }

    /// Closed support `[center - 1/scale, center + 1/scale]`.
    pub fn support(&self) -> (f64, f64) {
        (self.center - 1.0 / self.scale, self.center + 1.0 / self.scale)
    }

    /// `φ^{(j)}(t)`.
    pub fn value(&self, t: f64, j: usize) -> Result<f64> {
        let u = self.scale * (t - self.center);
        Ok(self.amplitude * self.scale.powi(j as i32) * base_derivative(u, j)?)
    }
}

pub fn mollifier_value(mol: &Mollifier, t: f64, j: usize) -> Result<f64> {
    mol.value(t, j)
}
