//! Exact scalars and polynomials: [`Rational`], [`ComplexQ`] and [`Poly`].

mod complex;
mod poly;
mod rational;
pub mod text;

pub use complex::ComplexQ;
pub use poly::Poly;
pub use rational::Rational;
pub use text::{parse_poly, parse_roots};

use num_complex::Complex64;

/// A value that is exact when every input was exact, and a double otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(ComplexQ),
    Float(Complex64),
}

impl Scalar {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => z.to_c64(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&ComplexQ> {
        match self {
            Scalar::Exact(z) => Some(z),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Exact(z) => write!(f, "{z}"),
            Scalar::Float(z) => write!(f, "{}", format_c64(*z)),
        }
    }
}

/// Fixed 17-significant-digit rendering of a double.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re+imi` / `re-imi` with both parts in [`format_f64`] form.
pub fn format_c64(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_f64(z.re), sign, format_f64(z.im.abs()))
}
