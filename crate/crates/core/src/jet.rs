//! Truncated Taylor series ("jets") over [`ComplexQ`].
//!
//! A jet of order `K` stores `c_0, ..., c_K` and stands for
//! `c_0 + c_1 t + ... + c_K t^K + O(t^{K+1})`. The `k`-th derivative at the
//! expansion point is `k! c_k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{ComplexQ, Poly, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<ComplexQ>,
}

impl Jet {
    /// Builds a jet of order `coeffs.len() - 1`. Fails on an empty list.
    pub fn new(coeffs: Vec<ComplexQ>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a jet needs at least one coefficient".into()));
        }
        Ok(Jet { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Jet::new(coeffs.iter().map(|&c| ComplexQ::integer(c)).collect())
    }

    pub fn constant(c: ComplexQ, order: usize) -> Self {
        let mut coeffs = vec![ComplexQ::zero(); order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// The expansion variable `t` itself.
    pub fn variable(order: usize) -> Self {
        let mut coeffs = vec![ComplexQ::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = ComplexQ::one();
        }
        Jet { coeffs }
    }

    /// `a * t^j / j!` summed for `j = 0..=order`: the jet of `exp(a t)`.
    pub fn exp_scaled(a: &ComplexQ, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = ComplexQ::one();
        coeffs.push(term.clone());
        for j in 1..=order {
            let inv_j = Rational::ratio(1, j as i64).expect("j > 0");
            term = (&term * a).scale(&inv_j);
            coeffs.push(term.clone());
        }
        Jet { coeffs }
    }

    /// Jet of `exp(t)`.
    pub fn exp_real(order: usize) -> Self {
        Jet::exp_scaled(&ComplexQ::one(), order)
    }

    /// Jet of `exp(i t)`: coefficients `i^j / j!`.
    pub fn exp_circle(order: usize) -> Self {
        Jet::exp_scaled(&ComplexQ::i(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexQ] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &ComplexQ {
        &self.coeffs[j]
    }

    /// Index of the first nonzero coefficient, `None` if the jet is zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, rhs: &Jet) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: rhs.order() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        Ok(Jet { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        Ok(Jet { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, rhs: &Jet) -> Result<Jet> {
        self.check_order(rhs)?;
        let k = self.order();
        let mut out = vec![ComplexQ::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=k - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Jet { coeffs: out })
    }

    pub fn scale(&self, c: &ComplexQ) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Jet> {
        let inv0 = self.coeffs[0].recip().map_err(|_| Error::NonInvertibleJet)?;
        let k = self.order();
        let mut out: Vec<ComplexQ> = Vec::with_capacity(k + 1);
        out.push(inv0.clone());
        for n in 1..=k {
            let acc: ComplexQ =
                (1..=n).filter(|&j| !self.coeffs[j].is_zero()).map(|j| &self.coeffs[j] * &out[n - j]).sum();
            out.push(-(&acc * &inv0));
        }
        Ok(Jet { coeffs: out })
    }

    /// Quotient `num / den` with formal cancellation of a common `t^r`.
    ///
    /// `r` is the valuation of `den`; `num` must vanish to at least the same
    /// order. Both operands must have the same order `K`, and the quotient has
    /// order `K - r`: the top `r` coefficients are not determined by the inputs.
    pub fn div_formal(num: &Jet, den: &Jet) -> Result<Jet> {
        num.check_order(den)?;
        let r = den.valuation().ok_or(Error::DivisionByZero)?;
        if num.coeffs[..r].iter().any(|c| !c.is_zero()) {
            return Err(Error::PoleAtExpansionPoint);
        }
        let shifted_num = Jet { coeffs: num.coeffs[r..].to_vec() };
        let shifted_den = Jet { coeffs: den.coeffs[r..].to_vec() };
        shifted_num.mul(&shifted_den.reciprocal()?)
    }

    /// `k! c_k`, the `k`-th derivative at the expansion point.
    pub fn derivative_at_point(&self, k: usize) -> Result<ComplexQ> {
        if k > self.order() {
            return Err(Error::DerivativeBeyondOrder { k, order: self.order() });
        }
        Ok(self.coeffs[k].scale(&factorial(k)))
    }

    /// Horner evaluation of `p` at the jet `x`; the result has `x`'s order.
    pub fn compose_poly(p: &Poly, x: &Jet) -> Jet {
        let k = x.order();
        p.coeffs().iter().rev().fold(Jet::constant(ComplexQ::zero(), k), |acc, c| {
            let mut next = acc.mul(x).expect("same order");
            next.coeffs[0] = &next.coeffs[0] + c;
            next
        })
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        Jet { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }
}

pub fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, j| acc * Rational::integer(j))
}

/// Free-function form of [`Jet::derivative_at_point`].
pub fn derivative_at_point(jet: &Jet, k: usize) -> Result<ComplexQ> {
    jet.derivative_at_point(k)
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
