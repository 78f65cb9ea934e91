//! Rational generating functions `f(z) = P(z) / Q(z)` with `f(0) = 0`.
//!
//! The series being summed is `Σ a_n z^n` (from `n = 1`). This module checks
//! the standing assumptions on `f` (no pole in the open unit disc, no pole at
//! `z = 1`, at most one simple pole on the circle), extracts coefficients,
//! and computes the simple-pole Laurent data used by the distribution checks.

mod poles;
pub mod roots;

use num_complex::Complex64;

pub use poles::{Location, Pole, PoleReport, Root, Violation, CIRCLE_TOLERANCE};

use crate::error::{Error, Result};
use crate::exact::{parse_poly, parse_roots, ComplexQ, Poly, Scalar};
use crate::jet::Jet;

#[derive(Debug, Clone, PartialEq)]
pub struct RationalGF {
    num: Poly,
    den: Poly,
    den_roots_hint: Option<Vec<(ComplexQ, usize)>>,
    /// `num / gcd(num, den)` and `den / gcd(num, den)`.
    reduced: (Poly, Poly),
    common: Poly,
}

impl RationalGF {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        Self::build(num, den, None)
    }

    /// Like [`RationalGF::new`], with the denominator given in factored form.
    /// The factors must reproduce `den` exactly (up to its leading coefficient).
    pub fn with_roots(num: Poly, den: Poly, roots: Vec<(ComplexQ, usize)>) -> Result<Self> {
        let lead = den.leading().ok_or(Error::ZeroDenominator)?.clone();
        let product =
            roots.iter().fold(Poly::constant(lead), |acc, (r, m)| acc.mul(&Poly::linear_factor(r).pow(*m as u32)));
        if product != den {
            return Err(Error::BadRootHint);
        }
        Self::build(num, den, Some(roots))
    }

    /// Parses the CLI form: coefficient lists plus an optional `root^mult;...` hint.
    pub fn parse(num: &str, den: &str, den_roots: Option<&str>) -> Result<Self> {
        let num = parse_poly(num)?;
        let den = parse_poly(den)?;
        match den_roots {
            Some(r) => Self::with_roots(num, den, parse_roots(r)?),
            None => Self::new(num, den),
        }
    }

    fn build(num: Poly, den: Poly, den_roots_hint: Option<Vec<(ComplexQ, usize)>>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let common = num.gcd(&den);
        let reduced = if num.is_zero() {
            (Poly::zero(), Poly::constant(ComplexQ::one()))
        } else {
            (num.div_rem(&common)?.0, den.div_rem(&common)?.0)
        };
        if reduced.1.coeff(0).is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        if !reduced.0.coeff(0).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(RationalGF { num, den, den_roots_hint, reduced, common })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn den_roots_hint(&self) -> Option<&[(ComplexQ, usize)]> {
        self.den_roots_hint.as_deref()
    }

    /// Numerator and denominator with common factors cancelled.
    pub fn reduced(&self) -> (&Poly, &Poly) {
        (&self.reduced.0, &self.reduced.1)
    }

    /// `z / (1 + z)`: the alternating series `1 - 2^k + 3^k - ...`.
    pub fn alternating() -> Self {
        Self::with_roots(Poly::z(), Poly::from_integers(&[1, 1]), vec![(ComplexQ::integer(-1), 1)]).expect("valid")
    }

    /// `z / (1 - z)`: the plain series `1 + 2^k + 3^k + ...` (pole at `z = 1`).
    pub fn natural() -> Self {
        Self::with_roots(Poly::z(), Poly::from_integers(&[1, -1]), vec![(ComplexQ::integer(1), 1)]).expect("valid")
    }

    /// `ε z / (1 - ε z)`: coefficients `a_n = ε^n`.
    pub fn geometric(eps: &ComplexQ) -> Self {
        let num = Poly::new(vec![ComplexQ::zero(), eps.clone()]);
        let den = Poly::new(vec![ComplexQ::one(), -eps]);
        match eps.recip() {
            Ok(root) => Self::with_roots(num, den, vec![(root, 1)]).expect("valid"),
            Err(_) => Self::new(num, den).expect("valid"),
        }
    }

    /// `α f + β h` over the common denominator `f.den * h.den`.
    pub fn linear_combination(alpha: &ComplexQ, f: &Self, beta: &ComplexQ, h: &Self) -> Result<Self> {
        let num = f.num.mul(&h.den).scale(alpha).add(&h.num.mul(&f.den).scale(beta));
        Self::new(num, f.den.mul(&h.den))
    }

    pub fn eval(&self, z: &ComplexQ) -> Result<ComplexQ> {
        let (n, d) = self.reduced();
        let dz = d.eval(z);
        if dz.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        n.eval(z).checked_div(&dz)
    }

    /// `a_1..=a_n`, exact.
    pub fn taylor_coeffs(&self, n: usize) -> Result<Vec<ComplexQ>> {
        let (num, den) = self.reduced();
        if den.coeff(0).is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let z = Jet::variable(n);
        let series = Jet::compose_poly(num, &z).mul(&Jet::compose_poly(den, &z).reciprocal()?)?;
        Ok(series.coeffs()[1..].to_vec())
    }

    /// `f'(z) = (P' Q - P Q') / Q²`, exact.
    pub fn eval_f_prime(&self, z: &ComplexQ) -> Result<ComplexQ> {
        let (n, d) = self.reduced();
        let dz = d.eval(z);
        if dz.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        let top = &(&n.derivative().eval(z) * &dz) - &(&n.eval(z) * &d.derivative().eval(z));
        top.checked_div(&(&dz * &dz))
    }

    /// Double-precision evaluator for quadrature.
    pub fn float(&self) -> FloatGf {
        let (n, d) = self.reduced();
        FloatGf { num: n.to_c64(), den: d.to_c64(), dnum: n.derivative().to_c64(), dden: d.derivative().to_c64() }
    }

    /// Jet of `t ↦ f(e^{it})` at `t = 0`, exact to the given order.
    pub fn circle_jet(&self, order: usize) -> Result<Jet> {
        let (n, d) = self.reduced();
        if d.eval(&ComplexQ::one()).is_zero() {
            return Err(Error::Inadmissible(Violation::PoleAtOne));
        }
        let x = Jet::exp_circle(order);
        Jet::div_formal(&Jet::compose_poly(n, &x), &Jet::compose_poly(d, &x))
    }

    /// `(z d/dz)^k f` as `numer / base^power`, exact.
    pub fn theta_power(&self, k: usize) -> ThetaForm {
        let (n, d) = self.reduced();
        let dd = d.derivative();
        let mut numer = n.clone();
        let mut power = 1u32;
        for _ in 0..k {
            // θ(P / Q^m) = z (P' Q - m P Q') / Q^{m+1}
            let m = ComplexQ::integer(power as i64);
            numer = Poly::z().mul(&numer.derivative().mul(d).sub(&numer.mul(&dd).scale(&m)));
            power += 1;
        }
        ThetaForm { numer, base: d.clone(), power }
    }

    /// Buckets the (reduced) denominator roots relative to the unit circle.
    ///
    /// Exact when a root hint is present; otherwise roots come from the
    /// numeric solver, and any that are verified Gaussian rationals are
    /// promoted to exact.
    pub fn classify_poles(&self) -> Result<PoleReport> {
        match &self.den_roots_hint {
            Some(roots) => Ok(poles::classify_exact(roots, &self.common)),
            None => {
                let mut removable = Vec::new();
                let mut g = self.common.clone();
                while g.degree().unwrap_or(0) >= 1 {
                    let approx = roots::find_roots(&g.to_c64())?;
                    let Some(root) = approx.iter().find_map(|&r| roots::snap_exact_root(&g, r)) else {
                        for r in approx {
                            removable.push(Pole {
                                root: Root::Numeric { value: r, tol: CIRCLE_TOLERANCE },
                                multiplicity: 1,
                            });
                        }
                        break;
                    };
                    let m = g.root_multiplicity(&root);
                    g = g.div_rem(&Poly::linear_factor(&root).pow(m as u32))?.0;
                    removable.push(Pole { root: Root::Exact(root), multiplicity: m });
                }
                poles::classify_numeric(&self.reduced.1, removable)
            }
        }
    }

    /// Simple-pole Laurent data at an exact pole `z0`.
    pub fn laurent_at(&self, z0: &ComplexQ) -> Result<LaurentData> {
        let (n, d) = self.reduced();
        if !d.eval(z0).is_zero() {
            return Err(Error::NotAPole);
        }
        let dprime = d.derivative().eval(z0);
        if dprime.is_zero() {
            return Err(Error::HigherOrderPole);
        }
        let c = n.eval(z0).checked_div(&dprime)?;
        Ok(LaurentData {
            z0: Scalar::Exact(z0.clone()),
            t0: angle_in_open_period(z0.to_c64()),
            d_minus1: Scalar::Exact(-&c),
            c_minus1: Scalar::Exact(c),
        })
    }

    /// Laurent data at a pole known only numerically (caller vouches it is simple).
    pub fn laurent_at_numeric(&self, z0: Complex64) -> Result<LaurentData> {
        let fl = self.float();
        let dprime = horner(&fl.dden, z0);
        if dprime.norm() == 0.0 {
            return Err(Error::HigherOrderPole);
        }
        let c = horner(&fl.num, z0) / dprime;
        Ok(LaurentData {
            z0: Scalar::Float(z0),
            t0: angle_in_open_period(z0),
            c_minus1: Scalar::Float(c),
            d_minus1: Scalar::Float(-c),
        })
    }

    /// Laurent data of the unique simple on-circle pole, `None` when `f` is analytic on the closed disc.
    pub fn circle_laurent(&self, report: &PoleReport) -> Result<Option<LaurentData>> {
        report.check_admissible(false).map_err(Error::Inadmissible)?;
        match report.on_circle.first() {
            None => Ok(None),
            Some(Pole { root: Root::Exact(z0), .. }) => self.laurent_at(z0).map(Some),
            Some(Pole { root: Root::Numeric { value, .. }, .. }) => self.laurent_at_numeric(*value).map(Some),
        }
    }
}

/// `arg z` mapped into `(0, 2π]`.
fn angle_in_open_period(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Residue data of a simple pole `z0 = e^{i t0}` on the unit circle:
/// `f(z) = c₋₁ / (z - z0) + g(z)` with `g` analytic near `z0`, and `d₋₁ = -c₋₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentData {
    pub z0: Scalar,
    pub t0: f64,
    pub c_minus1: Scalar,
    pub d_minus1: Scalar,
}

/// `numer(z) / base(z)^power`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaForm {
    pub numer: Poly,
    pub base: Poly,
    pub power: u32,
}

impl ThetaForm {
    pub fn eval(&self, z: &ComplexQ) -> Result<ComplexQ> {
        let b = self.base.eval(z);
        if b.is_zero() {
            return Err(Error::EvaluationAtPole);
        }
        self.numer.eval(z).checked_div(&b.pow(self.power))
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Double-precision copy of a reduced [`RationalGF`].
#[derive(Debug, Clone)]
pub struct FloatGf {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    dnum: Vec<Complex64>,
    dden: Vec<Complex64>,
}

impl FloatGf {
    pub fn f(&self, z: Complex64) -> Complex64 {
        horner(&self.num, z) / horner(&self.den, z)
    }

    pub fn f_prime(&self, z: Complex64) -> Complex64 {
        let d = horner(&self.den, z);
        (horner(&self.dnum, z) * d - horner(&self.num, z) * horner(&self.dden, z)) / (d * d)
    }

    /// `f'(e^{it}) e^{it}`, the density paired against test functions.
    pub fn circle_density(&self, t: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, t);
        self.f_prime(z) * z
    }
}
