//! Regularized sums `Σ n^k a_n` of a rational generating function.
//!
//! The engine value is `(1/i^k) (d/dt)^k f(e^{it})` at `t = 0`, computed
//! exactly from the jet of `f ∘ e^{it}`. The three closed-form families
//! (alternating, natural and Apostol) and an Abel-limit oracle sit beside it.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{ComplexQ, Rational, Scalar};
use crate::genfun::{PoleReport, RationalGF, Violation};
use crate::special::{apostol_bernoulli, bernoulli, euler_at_zero};

/// Extra jet coefficients carried beyond the one that is read.
pub const JET_MARGIN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Exact jet of `f(e^{it})` at `t = 0`.
    Distributional,
    EulerClosedForm,
    BernoulliClosedForm,
    ApostolClosedForm,
    Homothetic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Distributional => "distributional",
            Method::EulerClosedForm => "euler_closed_form",
            Method::BernoulliClosedForm => "bernoulli_closed_form",
            Method::ApostolClosedForm => "apostol_closed_form",
            Method::Homothetic => "homothetic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub poles: PoleReport,
    pub admissible: bool,
    pub jet_order: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummationResult {
    pub value: Scalar,
    pub k: usize,
    pub method: Method,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SumOptions {
    /// Experimental: accept several simple on-circle poles and sum by linearity.
    pub allow_multi_pole: bool,
}

fn inv_i_pow(k: usize) -> ComplexQ {
    ComplexQ::i_pow((4 - k % 4) % 4)
}

fn pole_notes(report: &PoleReport) -> Vec<String> {
    let mut notes = Vec::new();
    for p in &report.on_circle {
        notes.push(format!("pole z0 = {} on the unit circle (order {})", p.root, p.multiplicity));
    }
    if report.on_circle.is_empty() && report.inside.is_empty() {
        notes.push("no poles on the closed unit disc: the series converges".to_string());
    }
    notes
}

/// `Σ n^k a_n` for an admissible `f`, with `k ≥ 1`.
pub fn regularized_sum(f: &RationalGF, k: usize) -> Result<SummationResult> {
    regularized_sum_with(f, k, &SumOptions::default())
}

pub fn regularized_sum_with(f: &RationalGF, k: usize, opts: &SumOptions) -> Result<SummationResult> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let poles = f.classify_poles()?;
    poles.check_admissible(opts.allow_multi_pole).map_err(Error::Inadmissible)?;

    let order = k + JET_MARGIN;
    let jet = f.circle_jet(order)?;
    #[cfg(debug_assertions)]
    {
        let wide = f.circle_jet(k + 2 * JET_MARGIN)?;
        debug_assert_eq!(wide.truncate(order), jet, "jet coefficients depend on truncation order");
    }
    let exact = &jet.derivative_at_point(k)? * &inv_i_pow(k);

    let mut notes = pole_notes(&poles);
    if poles.on_circle.len() > 1 {
        notes.push(
            "experimental: several on-circle poles, summed by linearity (outside the single-pole hypothesis)".into(),
        );
    }
    let value = if poles.all_exact() {
        Scalar::Exact(exact)
    } else {
        notes.push(format!(
            "pole positions decided numerically (tolerance {:e}); value reported as float",
            crate::genfun::CIRCLE_TOLERANCE
        ));
        Scalar::Float(exact.to_c64())
    };
    Ok(SummationResult {
        value,
        k,
        method: Method::Distributional,
        diagnostics: Diagnostics { poles, admissible: true, jet_order: Some(order), notes },
    })
}

/// Evaluates several `k` concurrently; results keep the input order.
pub fn regularized_sum_batch(f: &RationalGF, ks: &[usize], opts: &SumOptions) -> Vec<Result<SummationResult>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = ks.iter().map(|&k| s.spawn(move || regularized_sum_with(f, k, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn require_positive(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn closed_form(value: Rational, k: usize, method: Method, gf: &RationalGF, extra: Option<String>) -> SummationResult {
    let poles = gf.classify_poles().expect("exact root hint");
    let admissible = poles.admissible();
    let mut notes = pole_notes(&poles);
    notes.extend(extra);
    SummationResult {
        value: Scalar::Exact(ComplexQ::real(value)),
        k,
        method,
        diagnostics: Diagnostics { poles, admissible, jet_order: None, notes },
    }
}

/// `A_k = 1^k - 2^k + 3^k - ... = -E_k(0) / 2`.
pub fn alternating_sum(k: usize) -> Result<SummationResult> {
    require_positive(k)?;
    let value = -euler_at_zero(k) * Rational::ratio(1, 2)?;
    Ok(closed_form(value, k, Method::EulerClosedForm, &RationalGF::alternating(), None))
}

/// `N_k = 1^k + 2^k + 3^k + ... = -B_{k+1} / (k + 1)`.
///
/// `z / (1 - z)` has its pole at `z = 1`, so the engine does not apply; the
/// value is fixed by the homothetic relation `A_k = (1 - 2^{k+1}) N_k`.
pub fn natural_sum(k: usize) -> Result<SummationResult> {
    require_positive(k)?;
    let value = -bernoulli(k + 1) * Rational::ratio(1, k as i64 + 1)?;
    let note = "not computed by the distributional engine (pole at z = 1); \
                defined through the homothetic relation A_k = (1 - 2^(k+1)) N_k"
        .to_string();
    Ok(closed_form(value, k, Method::BernoulliClosedForm, &RationalGF::natural(), Some(note)))
}

/// `Σ ε^n n^k = -B_{k+1}(ε) / (k + 1)` for `|ε| ≤ 1`, `ε ≠ 1`.
pub fn apostol_sum(k: usize, eps: &ComplexQ) -> Result<SummationResult> {
    require_positive(k)?;
    if eps.is_one() {
        return Err(Error::UseNaturalSum);
    }
    if eps.norm_sqr() > 1 {
        return Err(Error::ParameterOutsideDisc);
    }
    let b = apostol_bernoulli(k + 1, eps)?;
    let exact = (-b).scale(&Rational::ratio(1, k as i64 + 1)?);
    let gf = RationalGF::geometric(eps);
    let poles = gf.classify_poles()?;
    let admissible = poles.admissible();
    Ok(SummationResult {
        value: Scalar::Exact(exact),
        k,
        method: Method::ApostolClosedForm,
        diagnostics: Diagnostics { notes: pole_notes(&poles), poles, admissible, jet_order: None },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotheticCheck {
    pub k: usize,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
}

/// Compares `A_k` with `(1 - 2^{k+1}) N_k`, both from their closed forms.
pub fn homothetic_check(k: usize) -> Result<HomotheticCheck> {
    let lhs = alternating_sum(k)?.value.exact().expect("exact").re.clone();
    let n_k = natural_sum(k)?.value.exact().expect("exact").re.clone();
    let factor = Rational::one() - Rational::integer(2).pow(k as u32 + 1);
    let rhs = factor * n_k;
    Ok(HomotheticCheck { k, equal: lhs == rhs, lhs, rhs })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbelEstimate {
    pub value: Complex64,
    /// Change in the extrapolant when the last radius is dropped.
    pub error: f64,
    /// `(r, (z d/dz)^k f (r))` for each radius.
    pub trace: Vec<(f64, Complex64)>,
}

/// Extrapolates `(z d/dz)^k f (r)` as `r → 1⁻`, an independent numeric oracle.
///
/// Values at each radius are exact (the radius is converted to its exact
/// binary value); polynomial extrapolation in `1 - r` is also exact, and only
/// the final result is rounded. `k = 0` is accepted here as an explicit
/// extension (`f(r → 1⁻)`).
pub fn abel_value(f: &RationalGF, k: usize, r_schedule: &[f64]) -> Result<AbelEstimate> {
    if r_schedule.is_empty() {
        return Err(Error::InvalidArgument("empty radius schedule".into()));
    }
    if r_schedule.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::InvalidArgument("radii must lie in (0, 1)".into()));
    }
    if r_schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("radii must increase toward 1".into()));
    }
    if f.reduced().1.eval(&ComplexQ::one()).is_zero() {
        return Err(Error::Inadmissible(Violation::PoleAtOne));
    }
    let theta = f.theta_power(k);
    let mut hs = Vec::with_capacity(r_schedule.len());
    let mut vals = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let rq = Rational::from_f64(r).expect("finite");
        vals.push(theta.eval(&ComplexQ::real(rq.clone()))?);
        hs.push(Rational::one() - rq);
    }
    let trace = r_schedule.iter().zip(&vals).map(|(&r, v)| (r, v.to_c64())).collect();
    let full = neville_at_zero(&hs, &vals)?;
    let error = if vals.len() > 1 {
        let n = vals.len() - 1;
        (full.to_c64() - neville_at_zero(&hs[..n], &vals[..n])?.to_c64()).norm()
    } else {
        f64::INFINITY
    };
    Ok(AbelEstimate { value: full.to_c64(), error, trace })
}

/// Value at 0 of the interpolating polynomial through `(h_i, v_i)`.
fn neville_at_zero(hs: &[Rational], vals: &[ComplexQ]) -> Result<ComplexQ> {
    let mut p = vals.to_vec();
    let n = p.len();
    for width in 1..n {
        for i in 0..n - width {
            let (hi, hj) = (&hs[i], &hs[i + width]);
            let denom = (hi - hj).recip()?;
            // ((0 - h_j) p_i - (0 - h_i) p_{i+1}) / (h_i - h_j)
            p[i] = (&p[i + 1].scale(hi) - &p[i].scale(hj)).scale(&denom);
        }
    }
    Ok(p[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn cq(n: i64, d: i64) -> ComplexQ {
        ComplexQ::ratio(n, d)
    }

    fn exact(r: &SummationResult) -> ComplexQ {
        r.value.exact().cloned().expect("exact value")
    }

    fn half_geometric() -> RationalGF {
        RationalGF::geometric(&cq(1, 2))
    }

    #[test]
    fn engine_examples() {
        let alt = RationalGF::alternating();
        assert_eq!(exact(&regularized_sum(&alt, 1).unwrap()), cq(1, 4));
        assert_eq!(exact(&regularized_sum(&alt, 2).unwrap()), cq(0, 1));
        assert_eq!(exact(&regularized_sum(&half_geometric(), 1).unwrap()), cq(2, 1));
        let r = regularized_sum(&alt, 1).unwrap();
        assert_eq!(r.method, Method::Distributional);
        assert!(r.diagnostics.admissible);
        assert_eq!(r.diagnostics.jet_order, Some(5));
    }

    #[test]
    fn engine_rejects_bad_input() {
        assert_eq!(regularized_sum(&RationalGF::alternating(), 0), Err(Error::ZeroOrder));
        assert_eq!(regularized_sum(&RationalGF::natural(), 1), Err(Error::Inadmissible(Violation::PoleAtOne)));
        let inside = RationalGF::parse("0,1", "1,-3", None).unwrap();
        assert!(matches!(regularized_sum(&inside, 1), Err(Error::Inadmissible(Violation::PoleInsideDisc { .. }))));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(exact(&alternating_sum(1).unwrap()), cq(1, 4));
        assert_eq!(exact(&alternating_sum(2).unwrap()), cq(0, 1));
        assert_eq!(exact(&alternating_sum(3).unwrap()), cq(-1, 8));
        assert_eq!(exact(&natural_sum(1).unwrap()), cq(-1, 12));
        assert_eq!(exact(&natural_sum(2).unwrap()), cq(0, 1));
        assert_eq!(exact(&natural_sum(3).unwrap()), cq(1, 120));
        assert!(!natural_sum(1).unwrap().diagnostics.admissible);
        assert_eq!(exact(&apostol_sum(1, &cq(-1, 1)).unwrap()), cq(-1, 4));
        assert_eq!(exact(&apostol_sum(1, &cq(1, 2)).unwrap()), cq(2, 1));
        assert_eq!(exact(&apostol_sum(2, &cq(-1, 1)).unwrap()), cq(0, 1));
        assert_eq!(apostol_sum(1, &cq(1, 1)), Err(Error::UseNaturalSum));
        assert_eq!(apostol_sum(1, &cq(3, 2)), Err(Error::ParameterOutsideDisc));
        assert!(alternating_sum(0).is_err());
    }

    #[test]
    fn homothetic_examples() {
        let h = homothetic_check(1).unwrap();
        assert_eq!(
            (h.lhs.clone(), h.rhs.clone(), h.equal),
            (Rational::ratio(1, 4).unwrap(), Rational::ratio(1, 4).unwrap(), true)
        );
        let h = homothetic_check(2).unwrap();
        assert!(h.equal && h.lhs.is_zero());
        let h = homothetic_check(3).unwrap();
        assert_eq!(h.rhs, Rational::ratio(-15, 120).unwrap());
        assert!(h.equal);
    }

    #[test]
    fn abel_examples() {
        let alt = RationalGF::alternating();
        let est = abel_value(&alt, 1, &[0.9, 0.99, 0.999]).unwrap();
        assert!((est.value - Complex64::new(0.25, 0.0)).norm() < 1e-5, "{est:?}");

        let z = RationalGF::new(Poly::z(), Poly::from_integers(&[1])).unwrap();
        let est = abel_value(&z, 1, &[0.5, 0.9]).unwrap();
        assert_eq!(est.value, Complex64::new(1.0, 0.0));

        let est = abel_value(&half_geometric(), 1, &[0.9, 0.95, 0.99, 0.999]).unwrap();
        assert!((est.value - Complex64::new(2.0, 0.0)).norm() < 1e-6, "{est:?}");

        // k = 0 extension: f(1⁻) = 1/2 for z / (1 + z)
        let est = abel_value(&alt, 0, &[0.9, 0.95, 0.99, 0.999]).unwrap();
        assert!((est.value.re - 0.5).abs() < 1e-8, "{est:?}");

        assert!(abel_value(&RationalGF::natural(), 1, &[0.9]).is_err());
        assert!(abel_value(&alt, 1, &[0.99, 0.9]).is_err());
        assert!(abel_value(&alt, 1, &[1.0]).is_err());
        assert!(abel_value(&alt, 1, &[]).is_err());
    }

    #[test]
    fn numeric_poles_demote_to_float() {
        // z / (1 + z + z^2) has two irrational on-circle poles; allow them explicitly.
        let f = RationalGF::parse("0,1", "1,1,1", None).unwrap();
        let r = regularized_sum_with(&f, 1, &SumOptions { allow_multi_pole: true }).unwrap();
        assert!(!r.value.is_exact());
        // a_n is periodic 1, -1, 0; (z d/dz) f at z = 1 is (1 - z^2) z / (1+z+z^2)^2 = 0
        assert!(r.value.to_c64().norm() < 1e-15);
        assert!(r.diagnostics.notes.iter().any(|n| n.contains("experimental")));
    }

    #[test]
    fn batch_keeps_order() {
        let alt = RationalGF::alternating();
        let out = regularized_sum_batch(&alt, &[1, 2, 3], &SumOptions::default());
        let vals: Vec<ComplexQ> = out.iter().map(|r| exact(r.as_ref().unwrap())).collect();
        assert_eq!(vals, vec![cq(1, 4), cq(0, 1), cq(-1, 8)]);
    }
}
