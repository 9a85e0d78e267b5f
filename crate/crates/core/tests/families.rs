use approx::assert_relative_eq;
use isocs::families::*;
use isocs::specfun::{gamma, hyp1f1_one, mittag_leffler};
use num_complex::Complex64;

const T: Truncation = Truncation::Adaptive { max: 100_000 };

#[test]
fn gk_ground_state_at_zero_action() {
    let s = gk_state(0.0, 0.3, 2.5, T).unwrap();
    assert_relative_eq!(s.coeffs[0].norm(), 1.0, max_relative = 1e-15);
    assert_relative_eq!(s.coeffs[0].arg(), -2.0 * 2.5 * 0.3, max_relative = 1e-14);
    assert!(s.coeffs[1..].iter().all(|c| c.norm() == 0.0));
}

#[test]
fn gk_normalization_matches_direct_series() {
    // Σ J^m / (4^m (2.5)_m) at J = 4 is Σ 1/(2.5)_m.
    let mut direct = 0.0;
    let mut t = 1.0;
    for m in 0..200 {
        if m > 0 {
            t /= 2.5 + m as f64 - 1.0;
        }
        direct += t;
    }
    let s = gk_state(4.0, 0.0, 3.0, T).unwrap();
    assert_relative_eq!(s.norm_series, direct, max_relative = 1e-13);
    assert_relative_eq!(gk_normalization_closed(4.0, 3.0, Variant::Corrected).unwrap(), direct, max_relative = 1e-13);
    assert!((gk_normalization_closed(4.0, 3.0, Variant::AsPrinted).unwrap() / direct - 1.0).abs() > 1e-3);
    assert_relative_eq!(s.norm_squared(), 1.0, max_relative = 1e-13);
    let p: f64 = (0..=s.m).map(|m| probability(&s, m)).sum();
    assert_relative_eq!(p, 1.0, max_relative = 1e-13);
}

#[test]
fn gk_argmax_grows_with_action() {
    let mut prev = 0;
    for j in [1.0, 5.0, 20.0, 60.0, 150.0] {
        let s = gk_state(j, 0.0, 3.0, T).unwrap();
        let argmax = (0..=s.m).max_by(|&a, &b| probability::<f64>(&s, a).total_cmp(&probability::<f64>(&s, b))).unwrap();
        assert!(argmax >= prev);
        prev = argmax;
    }
    assert!(prev > 0);
}

#[test]
fn temporal_stability_of_action_families() {
    for (j, t) in [(0.5, 0.1), (3.0, 1.0), (10.0, 7.0)] {
        let s = gk_state(j, 0.2, 2.5, T).unwrap();
        let e = evolve(&s, t).unwrap();
        let r = build_state(Family::GkIsotonic, relabel_after(Family::GkIsotonic, &s.label, t).unwrap(), Truncation::Fixed { m: s.m }).unwrap();
        for (a, b) in e.coeffs.iter().zip(&r.coeffs) {
            assert!((a - b).norm() <= 1e-13);
        }
        for phase in [PhaseSign::Printed, PhaseSign::Conjugate] {
            let s = general_spectrum_state(j, 0.2, 1.5, 3.7, phase, T).unwrap();
            let e = evolve(&s, t).unwrap();
            let r = build_state(Family::GeneralSpectrum, relabel_after(Family::GeneralSpectrum, &s.label, t).unwrap(), Truncation::Fixed { m: s.m })
                .unwrap();
            for (a, b) in e.coeffs.iter().zip(&r.coeffs) {
                assert!((a - b).norm() <= 1e-13);
            }
        }
    }
}

#[test]
fn general_spectrum_reduces_to_gk() {
    let g = 3.0;
    let gk = gk_state(4.0, 0.7, g, Truncation::Fixed { m: 60 }).unwrap();
    let conj = general_spectrum_state(4.0, 0.7, 4.0, 2.0 * g, PhaseSign::Conjugate, Truncation::Fixed { m: 60 }).unwrap();
    let printed = general_spectrum_state(4.0, 0.7, 4.0, 2.0 * g, PhaseSign::Printed, Truncation::Fixed { m: 60 }).unwrap();
    for m in 0..=60 {
        assert!((gk.coeffs[m] - conj.coeffs[m]).norm() <= 1e-14);
        assert!((gk.coeffs[m] - printed.coeffs[m].conj()).norm() <= 1e-14);
    }
}

#[test]
fn general_spectrum_is_mittag_leffler_times_phase() {
    let (j, alpha, c, d) = (3.0_f64, 0.4, 2.0, 1.5);
    let omega = 1.0 + d / c;
    let z = Complex64::from_polar((j / c).sqrt(), c * alpha);
    let gs = general_spectrum_state(j, alpha, c, d, PhaseSign::Printed, Truncation::Fixed { m: 50 }).unwrap();
    let ml = mittag_leffler_state(z, 1.0, omega, Truncation::Fixed { m: 50 }).unwrap();
    let phase = Complex64::from_polar(1.0, d * alpha);
    for m in 0..=50 {
        assert!((gs.coeffs[m] - phase * ml.coeffs[m]).norm() <= 1e-13);
    }
}

#[test]
fn mittag_leffler_canonical_reduction() {
    let z = Complex64::new(0.8, -1.1);
    let s = mittag_leffler_state(z, 1.0, 1.0, T).unwrap();
    assert_relative_eq!(s.norm_series, z.norm_sqr().exp(), max_relative = 1e-13);
    let mut fact = 1.0_f64;
    for m in 0..=s.m.min(40) {
        if m > 0 {
            fact *= m as f64;
        }
        let expect = z.powi(m as i32) / fact.sqrt() / z.norm_sqr().exp().sqrt();
        assert!((s.coeffs[m] - expect).norm() <= 1e-13 * expect.norm().max(1e-300) + 1e-300);
    }
    for omega in [1.5, 2.5] {
        for x in [0.3, 4.0] {
            assert_relative_eq!(
                gamma(omega) * mittag_leffler(1.0, omega, x).unwrap().value,
                hyp1f1_one(omega, x).unwrap().value,
                max_relative = 1e-12
            );
        }
    }
}

#[test]
fn class1_state_and_kernel() {
    let s = class1_state(0.8, 0.3, 3.0, Truncation::Fixed { m: 2000 }).unwrap();
    assert_relative_eq!(s.norm_squared(), 1.0, max_relative = 1e-12);
    assert!(!s.converged);
    assert!(!s.warnings.is_empty());
    let l = s.label;
    let k = reproducing_kernel(Family::ClassI, &l, &l, 2000).unwrap();
    assert_relative_eq!(k.re, s.norm_series, max_relative = 1e-13);
    assert_eq!(k.im, 0.0);
    assert!(class1_state(0.8, 0.0, 2.0, T).is_err());
}

#[test]
fn class1_zero_label_coefficients() {
    let s = class1_state(0.0, 0.0, 3.0, Truncation::Fixed { m: 5 }).unwrap();
    let raw: Vec<f64> = (0..=5)
        .map(|m| {
            let poch: f64 = (0..m).map(|k| 3.0 + k as f64).product();
            let fact: f64 = (1..=m).map(|k| k as f64).product();
            (poch / (fact * (1.5 + m as f64))).sqrt()
        })
        .collect();
    let scale = s.coeffs[0].re / raw[0];
    for m in 0..=5 {
        assert_relative_eq!(s.coeffs[m].re, raw[m] * scale, max_relative = 1e-14);
    }
}

#[test]
fn class2_positivity_and_signed_norm() {
    let s = class2_state(0.1, 0.0, 3.0, Truncation::Fixed { m: 20 }).unwrap();
    assert!(s.positivity_ok);
    assert_relative_eq!(s.norm_squared(), 1.0, max_relative = 1e-10);
    let s = class2_state(2.0_f64, 0.0, 4.0, Truncation::Fixed { m: 200 }).unwrap();
    assert!(!s.positivity_ok);
    assert!((s.norm_squared() - 1.0).abs() > 1e-3);
    // m = 1 radicand vanishes at x = γ + 1
    let r = raw_coefficients(Family::ClassII, &CsLabel::Point { x: 4.0, theta: 0.0, gamma: 3.0 }, Truncation::Fixed { m: 1 }).unwrap();
    assert!(r.phi[1].norm() < 1e-15);
}

#[test]
fn class2_accelerated_norm_and_buchholz() {
    for x in [0.5, 1.0, 2.0, 5.0] {
        let s = class2_norm_sums::<f64>(x, 4.0, 100_000);
        let expect = class2_normalization_closed::<f64>(x, 4.0);
        assert!(((s.cesaro2_richardson - expect) / expect).abs() <= 1e-6, "x = {x}");
        assert!(((s.smooth - expect) / expect).abs() <= 1e-9, "x = {x}");
    }
    for nu in [-1, -2] {
        let t = buchholz_terms::<f64>(nu, 4.0, 2.0, 100_000).unwrap();
        let s = slow_sums(&t);
        let expect = 2.0_f64.powi(nu);
        assert!(((s.cesaro2_richardson - expect) / expect).abs() <= 1e-6, "nu = {nu}");
    }
    let t = buchholz_terms(-3, 4.0, 2.0, 1_000_000).unwrap();
    assert_relative_eq!(slow_sums(&t).smooth, 0.125, max_relative = 1e-8);
}

#[test]
fn class2_energy_closed_form() {
    for x in [0.7, 1.0, 1.5] {
        let e = class2_energy::<f64>(x, 4.0, Class2Argument::Squared, 1_000_000).unwrap();
        assert_relative_eq!(e.series, e.closed_as_printed, max_relative = 1e-8);
        let lin = class2_energy::<f64>(x, 4.0, Class2Argument::Linear, 1_000_000).unwrap();
        assert_relative_eq!(lin.series, lin.closed, max_relative = 1e-8);
        if x != 1.0 {
            assert!((lin.series / lin.closed_as_printed - 1.0).abs() > 1e-3);
        }
    }
    let e = class2_energy(1.0, 4.0, Class2Argument::Squared, 1_000_000).unwrap();
    assert_relative_eq!(e.closed, 16.0, max_relative = 1e-14);
}

#[test]
fn overlap_closed_form_and_bounds() {
    for (j1, j2, d) in [(1.0, 2.0, 0.3), (4.0, 4.0, 1.1), (0.5, 9.0, -0.7)] {
        let o = gk_overlap::<f64>(j2, 0.2, j1, 0.2 + d, 3.0).unwrap();
        assert!((o.series - o.closed).norm() <= 1e-12);
        assert!((o.series - o.closed_as_printed).norm() > 1e-6);
        assert!(o.series.norm() <= 1.0 + 1e-14);
    }
    let same = gk_overlap::<f64>(3.0, 0.4, 3.0, 0.4, 2.5).unwrap();
    assert!((same.series - 1.0).norm() <= 1e-14);
    let o = gk_overlap::<f64>(1.0, 0.5, 4.0, 0.5, 3.0).unwrap();
    assert!(o.series.im.abs() < 1e-15);
    let expect = hyp1f1_one(2.5, 0.5).unwrap().value
        / (hyp1f1_one(2.5_f64, 0.25).unwrap().value * hyp1f1_one(2.5, 1.0).unwrap().value).sqrt();
    assert_relative_eq!(o.series.re, expect, max_relative = 1e-13);
}

#[test]
fn action_identity() {
    for j in [0.0, 1.0, 4.0, 10.0] {
        let a = action_identity_check::<f64>(j, 3.0, true, T).unwrap();
        assert!(a.gap.abs() <= 1e-12 * j.max(1.0));
    }
    let u = action_identity_check::<f64>(4.0, 3.0, false, T).unwrap();
    assert!(u.gap.abs() > 1.0);
}

#[test]
fn energies_bounded_below_by_ground_level() {
    let s = gk_state(2.0, 0.0, 2.5, T).unwrap();
    assert!(expected_energy(&s).unwrap() >= 5.0);
    let s = class1_state(1.0, 0.0, 3.0, Truncation::Fixed { m: 500 }).unwrap();
    assert!(expected_energy(&s).unwrap() >= 6.0);
}

#[test]
fn class1_is_not_temporally_stable() {
    let (x, theta, g, t) = (0.8, 0.3, 3.0, 0.3);
    let m = 400;
    let s = class1_state(x, theta, g, Truncation::Fixed { m }).unwrap();
    let e = evolve(&s, t).unwrap();
    let mut best = f64::INFINITY;
    for k in 0..720 {
        let th = k as f64 * std::f64::consts::TAU / 720.0;
        let r = class1_state(x, th, g, Truncation::Fixed { m }).unwrap();
        let d: f64 = e.coeffs.iter().zip(&r.coeffs).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        best = best.min(d);
    }
    assert!(best > 0.01);
}

#[test]
fn kernel_hermitian_and_cauchy_schwarz() {
    let labels: Vec<CsLabel<f64>> =
        (0..10).map(|i| CsLabel::ActionAngle { j: 0.3 + i as f64, alpha: 0.17 * i as f64, gamma: 2.5 }).collect();
    for a in &labels {
        for b in &labels {
            let k = reproducing_kernel(Family::GkIsotonic, a, b, 80).unwrap();
            let kt = reproducing_kernel(Family::GkIsotonic, b, a, 80).unwrap();
            assert!((k - kt.conj()).norm() <= 1e-14 * k.norm().max(1.0));
            let ka = reproducing_kernel(Family::GkIsotonic, a, a, 80).unwrap().re;
            let kb = reproducing_kernel(Family::GkIsotonic, b, b, 80).unwrap().re;
            assert!(k.norm_sqr() <= ka * kb * (1.0 + 1e-13));
        }
    }
}
