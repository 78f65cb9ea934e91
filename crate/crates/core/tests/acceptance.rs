//! Acceptance suite: one PASS/FAIL line per criterion, each with its tolerance
//! and wall-clock limit. Exits non-zero if any criterion fails.
//!
//! Oracles (the Euler recurrence, the Akiyama–Tanigawa Bernoulli numbers and
//! floating partial sums) are computed here, independently of the library.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use divsum::exact::{ComplexQ, Rational};
use divsum::genfun::RationalGF;
use divsum::lab::{
    approx_identity_limit, fit_divergence, fourier_coeff_quadrature, fourier_coeff_residue, pf_pairing, Branch,
    Mollifier, PfOptions,
};
use divsum::special::apostol_bernoulli;
use divsum::summation::{alternating_sum, apostol_sum, homothetic_check, natural_sum, regularized_sum};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d).unwrap()
}

fn cq(n: i64, d: i64) -> ComplexQ {
    ComplexQ::ratio(n, d)
}

fn unit_eps() -> ComplexQ {
    ComplexQ::new(q(3, 5), q(4, 5))
}

/// `E_k(0)` from `E_k(1) + E_k(0) = 2·0^k` with `E_k(1) = Σ_j C(k, j) E_j(0)`.
fn euler_oracle(n: usize) -> Vec<Rational> {
    let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut binom = Rational::one();
        let mut acc = Rational::zero();
        for (j, ej) in e.iter().enumerate() {
            acc = acc + &binom * ej;
            binom = binom * q((k - j) as i64, j as i64 + 1);
        }
        let rhs = if k == 0 { Rational::integer(2) } else { Rational::zero() };
        e.push((rhs - acc) * q(1, 2));
    }
    e
}

/// `B_m` (with `B_1 = -1/2`) by the Akiyama–Tanigawa algorithm.
fn bernoulli_oracle(m: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::new();
    for j in 0..=m {
        a.push(q(1, j as i64 + 1));
        for i in (1..=j).rev() {
            a[i - 1] = Rational::integer(i as i64) * (&a[i - 1] - &a[i]);
        }
    }
    if m == 1 {
        -a[0].clone()
    } else {
        a[0].clone()
    }
}

fn exact_value(r: &divsum::SummationResult) -> Option<ComplexQ> {
    r.value.exact().cloned()
}

fn criterion_1() -> Outcome {
    let n = natural_sum(1).unwrap().value.to_string();
    let a = alternating_sum(1).unwrap().value.to_string();
    let engine = regularized_sum(&RationalGF::alternating(), 1).unwrap().value.to_string();
    if n == "-1/12" && a == "1/4" && engine == "1/4" {
        pass(format!("N = {n}, A = {a}, engine A = {engine}"))
    } else {
        fail(format!("N = {n}, A = {a}, engine A = {engine}"))
    }
}

fn criterion_2() -> Outcome {
    let f = RationalGF::alternating();
    let euler = euler_oracle(30);
    for (k, ek) in euler.iter().enumerate().skip(1) {
        let got = exact_value(&regularized_sum(&f, k).unwrap());
        let want = ComplexQ::real(-ek.clone() * q(1, 2));
        if got.as_ref() != Some(&want) {
            return fail(format!("k = {k}: engine {got:?} vs -E_k(0)/2 = {want}"));
        }
    }
    pass("engine = -E_k(0)/2 exactly for k = 1..30")
}

fn criterion_3() -> Outcome {
    for k in 1..=30 {
        let got = exact_value(&natural_sum(k).unwrap());
        let want = ComplexQ::real(-bernoulli_oracle(k + 1) * q(1, k as i64 + 1));
        if got.as_ref() != Some(&want) {
            return fail(format!("k = {k}: N_k {got:?} vs {want}"));
        }
        let h = homothetic_check(k).unwrap();
        if !h.equal {
            return fail(format!("k = {k}: homothetic {} vs {}", h.lhs, h.rhs));
        }
    }
    pass("N_k = -B_(k+1)/(k+1) and A_k = (1 - 2^(k+1)) N_k for k = 1..30")
}

fn criterion_4() -> Outcome {
    for eps in [cq(-1, 1), cq(1, 2), cq(-1, 2), unit_eps()] {
        let f = RationalGF::geometric(&eps);
        for k in 1..=15 {
            let got = exact_value(&regularized_sum(&f, k).unwrap());
            let b = apostol_bernoulli(k + 1, &eps).unwrap();
            let want = (-b).scale(&q(1, k as i64 + 1));
            if got.as_ref() != Some(&want) {
                return fail(format!("eps = {eps}, k = {k}: engine {got:?} vs {want}"));
            }
            if exact_value(&apostol_sum(k, &eps).unwrap()).as_ref() != Some(&want) {
                return fail(format!("eps = {eps}, k = {k}: closed form disagrees"));
            }
        }
    }
    let euler = euler_oracle(20);
    for (k, ek) in euler.iter().enumerate() {
        let lhs = apostol_bernoulli(k + 1, &cq(-1, 1)).unwrap();
        let rhs = ComplexQ::real(-(Rational::integer(k as i64 + 1) * ek.clone()) * q(1, 2));
        if lhs != rhs {
            return fail(format!("bridge k = {k}: {lhs} vs {rhs}"));
        }
    }
    pass("engine = -B_(k+1)(eps)/(k+1) on 4 parameters, k = 1..15; bridge k = 0..20")
}

fn criterion_5() -> Outcome {
    let fixtures = [
        ("z/(1+z)", RationalGF::alternating()),
        ("(z/2)/(1-z/2)", RationalGF::geometric(&cq(1, 2))),
        ("eps z/(1-eps z), eps = 3/5+4/5i", RationalGF::geometric(&unit_eps())),
    ];
    let mut worst = (0.0f64, 0.0f64);
    for (name, f) in &fixtures {
        let a = f.taylor_coeffs(64).unwrap();
        for n in 1..=64usize {
            let r = fourier_coeff_residue(f, n).unwrap();
            if r != a[n - 1].scale(&(n as i64).into()) {
                return fail(format!("{name}, n = {n}: residue {r} != n a_n"));
            }
        }
        for n in 1..=16usize {
            let exact = fourier_coeff_residue(f, n).unwrap().to_c64();
            let est = match fourier_coeff_quadrature(f, n as i64) {
                Ok(e) => e,
                Err(e) => return fail(format!("{name}, n = {n}: {e}")),
            };
            let diff = (est.value - exact).norm();
            let (tol, slot) = match est.branch {
                Branch::Trapezoid => (1e-6, &mut worst.0),
                Branch::FinitePart => (1e-4, &mut worst.1),
            };
            *slot = slot.max(diff);
            if diff > tol {
                return fail(format!("{name}, n = {n}: quadrature off by {diff:.3e} (tolerance {tol:e})"));
            }
        }
    }
    pass(format!(
        "residue = n a_n for n <= 64; quadrature max error {:.1e} (R > 1, tol 1e-6), {:.1e} (R = 1, tol 1e-4)",
        worst.0, worst.1
    ))
}

fn criterion_6() -> Outcome {
    let f = RationalGF::alternating();
    let k1 = approx_identity_limit(&f, 1, &[8, 16, 32, 64]).unwrap();
    let k2 = approx_identity_limit(&f, 2, &[16, 32, 64, 128]).unwrap();
    let d1 = (k1.limit - Complex64::new(0.25, 0.0)).norm();
    let d2 = k2.limit.norm();
    let detail = format!("k = 1: |limit - 1/4| = {d1:.1e} (tol 1e-4); k = 2: |limit| = {d2:.1e} (tol 1e-3)");
    if d1 <= 1e-4 && d2 <= 1e-3 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_7() -> Outcome {
    let f = RationalGF::alternating();
    let phi = Mollifier::normalized_at(PI, 1.0).unwrap();
    let without = pf_pairing(&f, &phi, &PfOptions { counterterm: false, ..PfOptions::default() }).unwrap();
    let fit = fit_divergence(&without.trace).unwrap();
    let expected = 2.0 * (without.d_minus1.unwrap() * without.phi_t0.unwrap()).norm();
    let rel = (fit.alpha.norm() - expected).abs() / expected;
    let with = pf_pairing(&f, &phi, &PfOptions::default()).unwrap();
    let detail = format!(
        "|alpha| = {:.6} vs 2|d φ(t0)| = {expected:.6} (relative {rel:.1e}, tol 0.1); extrapolant change {:.1e} (tol 1e-6)",
        fit.alpha.norm(),
        with.error
    );
    if rel <= 0.1 && with.error < 1e-6 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_8() -> Outcome {
    let f = RationalGF::geometric(&cq(1, 2));
    let mut worst = 0.0f64;
    for k in 1..=4 {
        let engine = regularized_sum(&f, k).unwrap().value.to_c64();
        let partial: f64 = (1..=10_000).map(|n| (n as f64).powi(k as i32) * 0.5f64.powi(n)).sum();
        let diff = (engine - Complex64::new(partial, 0.0)).norm();
        worst = worst.max(diff);
        if diff > 1e-9 {
            return fail(format!("k = {k}: engine {engine} vs partial sum {partial} (diff {diff:.1e})"));
        }
    }
    pass(format!("max |engine - partial sum| = {worst:.1e} for k <= 4 (tol 1e-9)"))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "headline values exact", Duration::from_millis(10), criterion_1),
        (2, "alternating family vs Euler recurrence", Duration::from_secs(2), criterion_2),
        (3, "natural family and homothetic relation", Duration::from_secs(1), criterion_3),
        (4, "Apostol family and Euler bridge", Duration::from_secs(5), criterion_4),
        (5, "Fourier coefficients: residue and quadrature", Duration::from_secs(30), criterion_5),
        (6, "approximate-identity limit", Duration::from_secs(60), criterion_6),
        (7, "counterterm structure of the finite part", Duration::from_secs(60), criterion_7),
        (8, "convergent series vs partial sums", Duration::from_secs(60), criterion_8),
    ];
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {id}: {name} — {} [{:.3} ms, limit {} ms{}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64() * 1e3,
            limit.as_millis(),
            if in_time { "" } else { ", TIME LIMIT EXCEEDED" }
        );
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
