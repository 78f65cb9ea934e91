//! Bernoulli numbers, Euler polynomial values at zero, and Apostol–Bernoulli numbers.
//!
//! Convention: `t / (e^t - 1) = Σ B_m t^m / m!`, so `B_1 = -1/2`. The
//! `B_1 = +1/2` convention is *not* used anywhere in this crate.
//!
//! Every family is available through two routes: an exact recurrence (the
//! primary entry points) and a coefficient extraction from the generating
//! function using [`Jet`] arithmetic (the `*_via_jet` functions). The two are
//! independent and tests compare them.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ComplexQ, Rational};
use crate::jet::{factorial, Jet};

/// Rows of Pascal's triangle as exact integers.
fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::from(1);
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli table `B_0..=B_n`, memoized across calls.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernoulliTable {
    pub values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn up_to(n: usize) -> Self {
        let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= n {
            // Σ_{j=0}^{m} C(m+1, j) B_j = 0
            let m = cache.len();
            let row = binomial_row(m + 1);
            let acc: Rational = cache
                .iter()
                .zip(&row)
                .filter(|(b, _)| !b.is_zero())
                .map(|(b, c)| b * &Rational::integer(c.clone()))
                .sum();
            let next = -(acc * Rational::ratio(1, m as i64 + 1).expect("m + 1 > 0"));
            cache.push(next);
        }
        BernoulliTable { values: cache[..=n].to_vec() }
    }
}

/// `B_m` with `B_1 = -1/2`.
pub fn bernoulli(m: usize) -> Rational {
    BernoulliTable::up_to(m).values.pop().expect("nonempty")
}

/// `E_k(0) = 2 (1 - 2^{k+1}) B_{k+1} / (k + 1)`.
pub fn euler_at_zero(k: usize) -> Rational {
    let b = bernoulli(k + 1);
    let factor = Rational::integer(1) - Rational::integer(BigInt::from(1) << (k + 1));
    Rational::integer(2) * factor * b * Rational::ratio(1, k as i64 + 1).expect("k + 1 > 0")
}

pub fn euler_at_zero_table(n: usize) -> Vec<Rational> {
    (0..=n).map(euler_at_zero).collect()
}

/// Apostol–Bernoulli numbers `B_0(ε)..=B_n(ε)` for one parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApostolTable {
    pub eps: ComplexQ,
    pub values: Vec<ComplexQ>,
}

impl ApostolTable {
    /// Solves `ε Σ_{j=0}^{m} C(m, j) B_j(ε) - B_m(ε) = [m = 1]` for each `m`.
    pub fn up_to(n: usize, eps: &ComplexQ) -> Result<Self> {
        if eps.is_one() {
            return Err(Error::DegenerateApostol);
        }
        let inv = (eps - &ComplexQ::one()).recip()?;
        let mut values: Vec<ComplexQ> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let row = binomial_row(m);
            let partial: ComplexQ = values
                .iter()
                .zip(&row)
                .filter(|(b, _)| !b.is_zero())
                .map(|(b, c)| b.scale(&Rational::integer(c.clone())))
                .sum();
            let rhs = if m == 1 { ComplexQ::one() } else { ComplexQ::zero() };
            values.push(&(&rhs - &(eps * &partial)) * &inv);
        }
        Ok(ApostolTable { eps: eps.clone(), values })
    }
}

/// `B_m(ε)` for any exact `ε ≠ 1`.
pub fn apostol_bernoulli(m: usize, eps: &ComplexQ) -> Result<ComplexQ> {
    Ok(ApostolTable::up_to(m, eps)?.values.pop().expect("nonempty"))
}

fn coeffs_times_factorial(jet: &Jet) -> Vec<ComplexQ> {
    jet.coeffs().iter().enumerate().map(|(m, c)| c.scale(&factorial(m))).collect()
}

/// `B_0..=B_n` as `m!` times the coefficients of the jet quotient `t / (e^t - 1)`.
pub fn bernoulli_via_jet(n: usize) -> Vec<Rational> {
    let order = n + 1;
    let den = Jet::exp_real(order).sub(&Jet::constant(ComplexQ::one(), order)).expect("same order");
    let quot = Jet::div_formal(&Jet::variable(order), &den).expect("removable singularity");
    coeffs_times_factorial(&quot).into_iter().map(|c| c.re).collect()
}

/// `E_0(0)..=E_n(0)` from the jet of `2 / (e^t + 1)`.
pub fn euler_at_zero_via_jet(n: usize) -> Vec<Rational> {
    let den = Jet::exp_real(n).add(&Jet::constant(ComplexQ::one(), n)).expect("same order");
    let quot = den.reciprocal().expect("e^0 + 1 = 2").scale(&ComplexQ::integer(2));
    coeffs_times_factorial(&quot).into_iter().map(|c| c.re).collect()
}

/// `B_0(ε)..=B_n(ε)` from the jet of `t / (ε e^t - 1)`.
pub fn apostol_via_jet(n: usize, eps: &ComplexQ) -> Result<Vec<ComplexQ>> {
    if eps.is_one() {
        return Err(Error::DegenerateApostol);
    }
    let den = Jet::exp_real(n).scale(eps).sub(&Jet::constant(ComplexQ::one(), n)).expect("same order");
    let quot = Jet::variable(n).mul(&den.reciprocal()?)?;
    Ok(coeffs_times_factorial(&quot))
}
