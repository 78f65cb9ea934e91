use std::fmt;

use num_complex::Complex64;

use super::{ComplexQ, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over [`ComplexQ`], coefficients in ascending degree.
///
/// The zero polynomial is the empty coefficient list; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ComplexQ>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ComplexQ>) -> Self {
        while coeffs.last().is_some_and(ComplexQ::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: ComplexQ) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly::new(vec![ComplexQ::zero(), ComplexQ::one()])
    }

    /// `z - root`
    pub fn linear_factor(root: &ComplexQ) -> Self {
        Poly::new(vec![-root, ComplexQ::one()])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| ComplexQ::integer(c)).collect())
    }

    pub fn coeffs(&self) -> &[ComplexQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> ComplexQ {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&ComplexQ> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &ComplexQ) -> ComplexQ {
        self.coeffs.iter().rev().fold(ComplexQ::zero(), |acc, c| &(&acc * z) + c)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(ComplexQ::to_c64).collect()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c.scale(&Rational::integer(j as i64))).collect())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(ComplexQ::zero());
        for (j, c) in self.coeffs.iter().enumerate() {
            let inv = Rational::ratio(1, j as i64 + 1).expect("positive");
            out.push(c.scale(&inv));
        }
        Poly::new(out)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ComplexQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &ComplexQ) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Poly {
        (0..exp).fold(Poly::constant(ComplexQ::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead.recip()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![ComplexQ::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Number of times `z - root` divides `self` (0 when `root` is not a root).
    pub fn root_multiplicity(&self, root: &ComplexQ) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let factor = Poly::linear_factor(root);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&factor).expect("monic factor");
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Comma-separated coefficient list in ascending degree, as accepted by the CLI.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> ComplexQ {
        ComplexQ::integer(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::from_integers(&[0, 1]).eval(&c(5)), c(5));
        assert_eq!(Poly::from_integers(&[1, 1]).eval(&c(-1)), c(0));
        assert_eq!(Poly::from_integers(&[0, 0, 1]).eval(&c(2)), c(4));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Poly::from_integers(&[0, 1]).derivative(), Poly::from_integers(&[1]));
        assert_eq!(Poly::from_integers(&[1, 1]).derivative(), Poly::from_integers(&[1]));
        assert_eq!(Poly::from_integers(&[0, 0, 0, 1]).derivative(), Poly::from_integers(&[0, 0, 3]));
        assert!(Poly::from_integers(&[7]).derivative().is_zero());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Poly::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Poly::from_integers(&[0, 0]).is_zero());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (z+1)(z-2) and (z+1)(z+3)
        let a = Poly::from_integers(&[-2, -1, 1]);
        let b = Poly::from_integers(&[3, 4, 1]);
        assert_eq!(a.gcd(&b), Poly::from_integers(&[1, 1]));
        let (q, r) = a.div_rem(&Poly::from_integers(&[1, 1])).unwrap();
        assert_eq!(q, Poly::from_integers(&[-2, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn multiplicity_counts_repeated_factors() {
        let p = Poly::from_integers(&[1, 1]).pow(3).mul(&Poly::from_integers(&[-2, 1]));
        assert_eq!(p.root_multiplicity(&c(-1)), 3);
        assert_eq!(p.root_multiplicity(&c(2)), 1);
        assert_eq!(p.root_multiplicity(&c(5)), 0);
    }
}
