use divsum::exact::{ComplexQ, Rational};
use divsum::genfun::RationalGF;
use divsum::special::{apostol_bernoulli, bernoulli, euler_at_zero};
use divsum::summation::{abel_value, alternating_sum, apostol_sum, natural_sum, regularized_sum, Method};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d).unwrap()
}

fn fixtures() -> Vec<(&'static str, RationalGF)> {
    vec![
        ("alternating", RationalGF::alternating()),
        ("geometric(-1/2)", RationalGF::geometric(&ComplexQ::ratio(-1, 2))),
        ("geometric(3/5+4/5i)", RationalGF::geometric(&ComplexQ::new(q(3, 5), q(4, 5)))),
        ("z/(2+z-z^2)", RationalGF::parse("0,1", "2,1,-1", None).unwrap()),
    ]
}

#[test]
fn engine_matches_theta_power_at_one() {
    for (name, f) in fixtures() {
        for k in 1..=6 {
            let engine = regularized_sum(&f, k).unwrap();
            let theta = f.theta_power(k).eval(&ComplexQ::one()).unwrap();
            assert_eq!(engine.value.exact(), Some(&theta), "{name}, k = {k}");
        }
    }
}

#[test]
fn engine_matches_abel_limit() {
    let radii = [0.9, 0.95, 0.975, 0.9875, 0.99375, 0.996875];
    for (name, f) in fixtures() {
        for k in 1..=4 {
            let exact = regularized_sum(&f, k).unwrap().value.to_c64();
            let abel = abel_value(&f, k, &radii).unwrap();
            let diff = (abel.value - exact).norm();
            assert!(diff <= 1e-6 * (1.0 + exact.norm()), "{name}, k = {k}: diff {diff:e}");
        }
    }
}

#[test]
fn closed_forms_agree_with_engine() {
    for k in 1..=12 {
        let engine = regularized_sum(&RationalGF::alternating(), k).unwrap();
        let closed = alternating_sum(k).unwrap();
        assert_eq!(closed.method, Method::EulerClosedForm);
        assert_eq!(engine.value, closed.value);
        let want = ComplexQ::real(-euler_at_zero(k) * q(1, 2));
        assert_eq!(closed.value.exact(), Some(&want));
    }
    for k in 1..=12 {
        let want = ComplexQ::real(-bernoulli(k + 1) * q(1, k as i64 + 1));
        assert_eq!(natural_sum(k).unwrap().value.exact(), Some(&want));
    }
    let eps = ComplexQ::new(q(3, 5), q(4, 5));
    for k in 1..=8 {
        let engine = regularized_sum(&RationalGF::geometric(&eps), k).unwrap();
        let closed = apostol_sum(k, &eps).unwrap();
        assert_eq!(engine.value, closed.value);
        let want = (-apostol_bernoulli(k + 1, &eps).unwrap()).scale(&q(1, k as i64 + 1));
        assert_eq!(closed.value.exact(), Some(&want));
    }
}

#[test]
fn convergent_series_reproduce_ordinary_sums() {
    // Σ n (-1/2)^n = (-1/2) / (1 + 1/2)^2 = -2/9
    let f = RationalGF::geometric(&ComplexQ::ratio(-1, 2));
    let r = regularized_sum(&f, 1).unwrap();
    assert_eq!(r.value.to_string(), "-2/9");
}

#[test]
fn inadmissible_inputs_are_rejected() {
    let inside = RationalGF::geometric(&ComplexQ::integer(2));
    assert!(regularized_sum(&inside, 1).is_err());
    assert!(regularized_sum(&RationalGF::natural(), 1).is_err());
    let double = RationalGF::parse("0,1", "1,2,1", None).unwrap();
    assert!(regularized_sum(&double, 1).is_err());
    assert!(regularized_sum(&RationalGF::alternating(), 0).is_err());
}
