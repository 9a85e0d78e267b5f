use isocs::quadrature::{gauss_gen_laguerre, integrate_semi_infinite, PanelConfig};
use isocs::specfun::*;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[test]
fn terminating_1f1_matches_laguerre_connection() {
    for b in [1.6_f64, 2.5, 4.0] {
        for m in 0..=30usize {
            // m! / (b)_m
            let ratio: f64 = (0..m).map(|k| (k + 1) as f64 / (b + k as f64)).product();
            for i in 0..=50 {
                let x = 0.5 * i as f64;
                let t = hyp1f1_terminating(m, b, x).unwrap();
                let lag = ratio * laguerre(m, &(b - 1.0), &x);
                let tol = if t.cancellation { 1e-6 } else { 1e-9 };
                assert!(rel(t.value, lag) <= tol, "m={m} b={b} x={x}: {} vs {lag}", t.value);
            }
        }
    }
}

#[test]
fn hermite_reductions() {
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    for n in 0..=10usize {
        for x in [0.1_f64, 0.7, 1.3, 2.2, 3.5] {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let even = sign * fact(n) / fact(2 * n) * hermite(2 * n, &x);
            let odd = sign * fact(n) / fact(2 * n + 1) * hermite(2 * n + 1, &x) / (2.0 * x);
            let e = hyp1f1_terminating(n, 0.5, x * x).unwrap().value;
            let o = hyp1f1_terminating(n, 1.5, x * x).unwrap().value;
            assert!((e - even).abs() <= 1e-9 * even.abs().max(1e-300), "n={n} x={x}: {e} vs {even}");
            assert!((o - odd).abs() <= 1e-9 * odd.abs().max(1e-300), "n={n} x={x}: {o} vs {odd}");
        }
    }
}

#[test]
fn bessel_wronskian_grid() {
    for nu in [0.0_f64, 0.5, 1.0, 1.7] {
        for x in [0.3_f64, 1.0, 5.0] {
            let w = bessel_i(nu, x).unwrap().value * bessel_k(nu + 1.0, x).unwrap().value
                + bessel_i(nu + 1.0, x).unwrap().value * bessel_k(nu, x).unwrap().value;
            assert!((w * x - 1.0).abs() <= 1e-8, "nu={nu} x={x}: {w}");
        }
    }
}

#[test]
fn cancellation_flag_is_honest_against_exact_arithmetic() {
    let mut flagged = 0;
    for m in [10usize, 20, 40, 60] {
        for x in [5.0_f64, 20.0, 40.0, 80.0] {
            let b = 2.5_f64;
            let t = hyp1f1_terminating(m, b, x).unwrap();
            let exact = hyp1f1_terminating_exact(m, &BigRational::from_float(b).unwrap(), &BigRational::from_float(x).unwrap())
                .to_f64()
                .unwrap();
            let tol = if t.cancellation { 1e-6 } else { 1e-9 };
            flagged += t.cancellation as usize;
            assert!((t.value - exact).abs() <= tol * exact.abs(), "m={m} x={x}: {} vs {exact}", t.value);
        }
    }
    assert!(flagged > 0, "grid should reach the cancellation regime");
}

#[test]
fn laguerre_rule_moments_are_exact() {
    for n in [1usize, 2, 5, 10, 20, 40] {
        for alpha in [-0.5_f64, 0.0, 0.5, 1.5, 3.0] {
            let rule = gauss_gen_laguerre(n, alpha).unwrap();
            for k in 0..2 * n {
                let got = rule.integrate(|t| t.powi(k as i32));
                let expect = (ln_gamma(k as f64 + alpha + 1.0)).exp();
                assert!(
                    (got - expect).abs() <= 1e-11 * expect,
                    "n={n} alpha={alpha} k={k}: {got} vs {expect}"
                );
            }
        }
    }
}

#[test]
fn laguerre_nodes_positive_and_interlacing() {
    for alpha in [-0.5_f64, 0.0, 1.5, 3.0] {
        for n in 1..40usize {
            let a = gauss_gen_laguerre(n, alpha).unwrap();
            let b = gauss_gen_laguerre(n + 1, alpha).unwrap();
            assert!(a.nodes().iter().all(|&x| x > 0.0));
            assert!(a.weights().iter().all(|&w| w > 0.0));
            for i in 0..n {
                assert!(b.nodes()[i] < a.nodes()[i] && a.nodes()[i] < b.nodes()[i + 1], "n={n} alpha={alpha} i={i}");
            }
        }
    }
}

#[test]
fn adaptive_integration_reproduces_laguerre_rule() {
    for alpha in [0.0_f64, 0.5, 2.0] {
        let n = 6;
        let rule = gauss_gen_laguerre(n, alpha).unwrap();
        let p = |t: f64| 1.0 - 2.0 * t + 0.25 * t.powi(3) + 0.01 * t.powi(2 * n as i32 - 1);
        let by_rule = rule.integrate(p);
        let adaptive = integrate_semi_infinite(|t: f64| p(t) * t.powf(alpha) * (-t).exp(), &PanelConfig::default()).unwrap();
        assert!(rel(adaptive.value, by_rule) <= 1e-10, "alpha={alpha}: {} vs {by_rule}", adaptive.value);
    }
}

proptest! {
    #[test]
    fn pochhammer_recurrence(a in 0.05_f64..20.0, m in 0usize..120) {
        let lhs = pochhammer(a, m + 1).unwrap();
        let rhs = pochhammer(a, m).unwrap() * (a + m as f64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pochhammer_log_route_consistent(a in 0.5_f64..5.0, m in 0usize..120) {
        let p = pochhammer(a, m).unwrap();
        let l = ln_pochhammer(a, m);
        prop_assert!((p.ln() - l).abs() <= 1e-12 * l.abs().max(1.0));
    }

    #[test]
    fn mittag_leffler_exponential(x in -5.0_f64..20.0) {
        // for x < 0 the alternating series loses about e^{2|x|} ulps relative to e^x
        let e = mittag_leffler(1.0, 1.0, x).unwrap().value;
        prop_assert!((e - x.exp()).abs() <= 1e-13 * x.abs().exp());
    }

    #[test]
    fn mittag_leffler_cosh(y in 0.0_f64..6.0) {
        let e = mittag_leffler(2.0, 1.0, y * y).unwrap().value;
        prop_assert!((e - y.cosh()).abs() <= 1e-13 * y.cosh());
    }

    #[test]
    fn mittag_leffler_kummer(omega in 1.01_f64..6.0, x in 0.0_f64..15.0) {
        let lhs = gamma(omega) * mittag_leffler(1.0, omega, x).unwrap().value;
        let rhs = hyp1f1_one(omega, x).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn terminating_1f1_sequence_agrees_with_direct(m in 0usize..40, b in 1.5_f64..6.0, x in 0.0_f64..10.0) {
        let seq = hyp1f1_neg_int_sequence(m, b, x).unwrap();
        let direct = hyp1f1_terminating(m, b, x).unwrap();
        let tol = if direct.cancellation { 1e-6 } else { 1e-9 };
        prop_assert!(rel(seq[m], direct.value) <= tol);
    }
}
