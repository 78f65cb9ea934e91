use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::rational::{forward_binop, Rational};
use crate::error::{Error, Result};

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexQ {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexQ {
    pub fn new(re: Rational, im: Rational) -> Self {
        ComplexQ { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ComplexQ { re, im: Rational::zero() }
    }

    pub fn integer(n: i64) -> Self {
        ComplexQ::real(Rational::integer(n))
    }

    /// Shorthand for `numer/denom + 0i`; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        ComplexQ::real(Rational::ratio(numer, denom).expect("nonzero denominator"))
    }

    pub fn zero() -> Self {
        ComplexQ::default()
    }

    pub fn one() -> Self {
        ComplexQ::integer(1)
    }

    pub fn i() -> Self {
        ComplexQ { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexQ { re: self.re.clone(), im: -&self.im }
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ComplexQ { re: &self.re * r, im: &self.im * r }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = n.recip()?;
        Ok(ComplexQ { re: &self.re * &inv, im: -(&self.im * &inv) })
    }

    pub fn checked_div(&self, rhs: &ComplexQ) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexQ::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// i^k without multiplication.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => ComplexQ::integer(1),
            1 => ComplexQ::i(),
            2 => ComplexQ::integer(-1),
            _ => -ComplexQ::i(),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<Rational> for ComplexQ {
    fn from(r: Rational) -> Self {
        ComplexQ::real(r)
    }
}

impl From<i64> for ComplexQ {
    fn from(n: i64) -> Self {
        ComplexQ::integer(n)
    }
}

/// Canonical text: `a/b`, `c/di`, `a/b+c/di` or `a/b-c/di`.
impl fmt::Display for ComplexQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add<&ComplexQ> for &ComplexQ {
    type Output = ComplexQ;
    fn add(self, rhs: &ComplexQ) -> ComplexQ {
        ComplexQ { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&ComplexQ> for &ComplexQ {
    type Output = ComplexQ;
    fn sub(self, rhs: &ComplexQ) -> ComplexQ {
        ComplexQ { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&ComplexQ> for &ComplexQ {
    type Output = ComplexQ;
    fn mul(self, rhs: &ComplexQ) -> ComplexQ {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ComplexQ::real(&self.re * &rhs.re);
        }
        ComplexQ { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

forward_binop!(ComplexQ, Add, add);
forward_binop!(ComplexQ, Sub, sub);
forward_binop!(ComplexQ, Mul, mul);

impl Neg for ComplexQ {
    type Output = ComplexQ;
    fn neg(self) -> ComplexQ {
        ComplexQ { re: -self.re, im: -self.im }
    }
}

impl Neg for &ComplexQ {
    type Output = ComplexQ;
    fn neg(self) -> ComplexQ {
        ComplexQ { re: -&self.re, im: -&self.im }
    }
}

impl std::iter::Sum for ComplexQ {
    fn sum<I: Iterator<Item = ComplexQ>>(iter: I) -> ComplexQ {
        iter.fold(ComplexQ::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(ComplexQ::i() * ComplexQ::i(), ComplexQ::integer(-1));
        assert_eq!(ComplexQ::i().pow(5), ComplexQ::i());
        for k in 0..9 {
            assert_eq!(ComplexQ::i_pow(k), ComplexQ::i().pow(k as u32));
        }
    }

    #[test]
    fn unit_circle_point_inverse_is_conjugate() {
        let eps = ComplexQ::new(Rational::ratio(3, 5).unwrap(), Rational::ratio(4, 5).unwrap());
        assert!(eps.norm_sqr().is_one());
        assert_eq!(eps.recip().unwrap(), eps.conj());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(ComplexQ::zero().recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        let half = Rational::ratio(1, 2).unwrap();
        let tq = Rational::ratio(3, 4).unwrap();
        assert_eq!(ComplexQ::real(half.clone()).to_string(), "1/2");
        assert_eq!(ComplexQ::new(Rational::zero(), -tq.clone()).to_string(), "-3/4i");
        assert_eq!(ComplexQ::new(-half.clone(), -tq.clone()).to_string(), "-1/2-3/4i");
        assert_eq!(ComplexQ::new(half, tq).to_string(), "1/2+3/4i");
        assert_eq!(ComplexQ::zero().to_string(), "0");
    }
}
