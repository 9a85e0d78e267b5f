//! The check catalogue. Each group returns its records in construction order; the
//! runner sorts by `check_id`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{record, Builder, Mode, VerificationReport};
use super::VerifyConfig;
use super::tolerances::Tolerances;
use crate::error::Result;
use crate::families::*;
use crate::isotonic::{
    apply_hamiltonian_fd, gram_matrix, gram_rule, max_deviation_from_identity, BasisIndex, FdGrid, OscillatorParams,
};
use crate::specfun::{gamma, gauss2f1_unit, gauss2f1_unit_series, hyp1f1_one, mittag_leffler};

pub(crate) struct Ctx<'a> {
    pub config: &'a VerifyConfig,
    pub tol: &'a Tolerances,
}

impl Ctx<'_> {
    fn tol(&self, name: &str) -> f64 {
        self.tol.get(name)
    }

    /// `base` plus the user-supplied γ when it satisfies `ok`.
    fn gammas(&self, base: &[f64], ok: impl Fn(f64) -> bool) -> Vec<f64> {
        let mut out = base.to_vec();
        if let Some(g) = self.config.gamma {
            if ok(g) && !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }

    fn truncation(&self) -> Truncation {
        self.config.truncation.unwrap_or_default()
    }
}

fn eval(b: Builder, f: impl FnOnce(Builder) -> Result<VerificationReport>) -> VerificationReport {
    let fallback = b.clone();
    f(b).unwrap_or_else(|e| fallback.error(e))
}

fn max_coeff_diff(a: &TruncatedState<f64>, b: &TruncatedState<f64>) -> f64 {
    a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite")
}

// ---------------------------------------------------------------- orthonormality

pub(crate) fn orthonormality(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let m_max = 15;
    for g in ctx.gammas(&[1.75, 2.5, 3.5, 4.7], |g| g >= 1.5) {
        out.push(eval(record("orthonormality.gram").param("gamma", g).param("M", m_max), |b| {
            let p = OscillatorParams::from_gamma(g)?;
            let rule = gram_rule(&p, m_max)?;
            let gm = gram_matrix(&p, m_max, &rule)?;
            Ok(b.param("rule_order", rule.order())
                .note("generalized Gauss-Laguerre in t = x², alpha = gamma - 1")
                .finish(Mode::Within, max_deviation_from_identity(&gm), 0.0, ctx.tol("gram")))
        }));
    }
    let g = 2.5;
    let length = 10.0;
    let h = 1e-3;
    for m in 0..=5 {
        let base = record("orthonormality.fd-residual").param("gamma", g).param("m", m).param("h", h).param("L", length);
        out.push(eval(base, |b| {
            let p = OscillatorParams::from_gamma(g)?;
            let r = apply_hamiltonian_fd(BasisIndex(m), &p, FdGrid { length, h })?;
            Ok(b.param("points_skipped", r.points_skipped)
                .note(r.warning.unwrap_or_default())
                .finish(Mode::Within, r.residual, 0.0, ctx.tol("fd-residual")))
        }));
        let base = record("orthonormality.fd-order").param("gamma", g).param("m", m).param("h", h).param("L", length);
        out.push(eval(base, |b| {
            let p = OscillatorParams::from_gamma(g)?;
            let fine = apply_hamiltonian_fd(BasisIndex(m), &p, FdGrid { length, h })?;
            let coarse = apply_hamiltonian_fd(BasisIndex(m), &p, FdGrid { length, h: 2.0 * h })?;
            Ok(b.note("residual(2h) / residual(h); 4 for a second-order scheme")
                .finish(Mode::Within, coarse.residual / fine.residual, 4.0, ctx.tol("fd-order")))
        }));
    }
    out
}

// ---------------------------------------------------------------- resolution

fn moment_records(
    id: &str,
    density: Result<MeasureDensity<f64>>,
    params: &[(&str, f64)],
    m_max: usize,
    tol: f64,
    mode: Mode,
) -> Vec<VerificationReport> {
    let mut head = record(id);
    for (k, v) in params {
        head = head.param(k, *v);
    }
    let d = match density {
        Ok(d) => d,
        Err(e) => return vec![head.error(e)],
    };
    (0..=m_max)
        .map(|m| {
            eval(head.clone().param("m", m), |b| {
                let got = d.moment(m)?;
                let target = d.moment_target(m)?;
                Ok(b.param("method", serde_json::to_value(got.method).unwrap_or_default())
                    .finish(mode, got.value, target, tol))
            })
        })
        .collect()
}

/// Diagonal resolution matrix `S_mm = moment(m) / target(m)`. The angular average is
/// taken analytically, so off-diagonal entries are exactly zero.
fn resolution_matrix(
    id: &str,
    density: Result<MeasureDensity<f64>>,
    params: &[(&str, f64)],
    m_max: usize,
    tol: f64,
    mode: Mode,
) -> VerificationReport {
    let mut b = record(id).param("M", m_max);
    for (k, v) in params {
        b = b.param(k, *v);
    }
    eval(b, |b| {
        let d = density?;
        let mut worst = 0.0_f64;
        for m in 0..=m_max {
            let s = d.moment(m)?.value / d.moment_target(m)?;
            worst = worst.max((s - 1.0).abs());
        }
        Ok(b.note("max |S - I| with S_mn = 0 for m != n by exact angular selection").finish(mode, worst, 0.0, tol))
    })
}

pub(crate) fn resolution(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for g in ctx.gammas(&[2.6, 3.0, 4.0], |g| g > 2.0) {
        out.extend(moment_records(
            "resolution.class1.moment",
            class1_density(g, Variant::Corrected),
            &[("gamma", g)],
            12,
            ctx.tol("class1-moment"),
            Mode::Within,
        ));
    }
    for g in ctx.gammas(&[2.5, 4.0], |g| g > 1.0) {
        out.extend(moment_records(
            "resolution.class2.moment",
            class2_density(g),
            &[("gamma", g)],
            15,
            ctx.tol("class2-moment"),
            Mode::Within,
        ));
        for m in 0..=15 {
            out.push(eval(record("resolution.class2.chu-vandermonde").param("gamma", g).param("m", m), |b| {
                let closed = gauss2f1_unit(m, g + 1.0)?;
                let series = gauss2f1_unit_series(m, &1.0, &(g + 1.0));
                Ok(b.note("2F1(-m, 1; gamma + 1; 1) closed form vs termwise sum")
                    .finish(Mode::Within, series, closed, ctx.tol("chu-vandermonde")))
            }));
        }
    }
    for g in ctx.gammas(&[2.5, 3.0], |g| g > 0.0) {
        out.extend(moment_records(
            "resolution.gk.moment",
            gk_density(g, Variant::Corrected),
            &[("gamma", g)],
            12,
            ctx.tol("density-moment"),
            Mode::Within,
        ));
    }
    for (c, d) in [(4.0, 6.0), (2.0, 1.0), (1.5, 3.7)] {
        out.extend(moment_records(
            "resolution.general.moment",
            general_density(c, d, Variant::Corrected),
            &[("c", c), ("d", d)],
            12,
            ctx.tol("density-moment"),
            Mode::Within,
        ));
    }
    for (a, b) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (0.5, 1.5)] {
        out.extend(moment_records(
            "resolution.ml.moment",
            ml_weight(a, b),
            &[("a", a), ("b", b)],
            8,
            ctx.tol("density-moment"),
            Mode::Within,
        ));
    }
    let tol = ctx.tol("resolution");
    out.push(resolution_matrix("resolution.matrix.class1", class1_density(3.2, Variant::Corrected), &[("gamma", 3.2)], 10, tol, Mode::Within));
    out.push(resolution_matrix("resolution.matrix.class2", class2_density(2.5), &[("gamma", 2.5)], 12, tol, Mode::Within));
    out.push(resolution_matrix("resolution.matrix.gk", gk_density(2.5, Variant::Corrected), &[("gamma", 2.5)], 12, tol, Mode::Within));
    out.push(resolution_matrix(
        "resolution.matrix.general",
        general_density(4.0, 6.0, Variant::Corrected),
        &[("c", 4.0), ("d", 6.0)],
        12,
        tol,
        Mode::Within,
    ));
    out.push(resolution_matrix("resolution.matrix.mittag-leffler", ml_weight(1.0, 2.0), &[("a", 1.0), ("b", 2.0)], 12, tol, Mode::Within));
    out
}

// ---------------------------------------------------------------- normalization

pub(crate) fn normalization(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let g1 = 3.0_f64;
    for x in [0.5, 0.8, 1.2] {
        let terms = 50_000;
        out.push(eval(record("normalization.class1").param("gamma", g1).param("x", x).param("terms", terms), |b| {
            let closed = class1_normalization_closed(x, g1)?;
            let s = class1_norm_sums(x, g1, terms);
            let raw_rel = ((s.raw - closed) / closed).abs();
            Ok(b.note(format!(
                "Richardson 2 S(M) - S(M/4) for the M^(-1/2) tail; raw partial sum rel err {raw_rel:.3e}"
            ))
            .finish(Mode::Within, s.richardson, closed, ctx.tol("class1-norm")))
        }));
        let terms = 4_000_000;
        out.push(eval(record("normalization.class1.raw").param("gamma", g1).param("x", x).param("terms", terms), |b| {
            let closed = class1_normalization_closed(x, g1)?;
            let s = class1_norm_sums(x, g1, terms);
            Ok(b.note("unaccelerated partial sum").finish(Mode::Within, s.raw, closed, ctx.tol("class1-norm")))
        }));
    }

    let g2 = 4.0;
    let terms = 100_000;
    for x in [0.5, 1.0, 2.0, 5.0] {
        let exact = class2_normalization_exact(&rational(x), &rational(g2)).to_f64().unwrap_or(f64::NAN);
        let base = record("normalization.class2.raw").param("gamma", g2).param("x", x).param("terms", terms);
        let sums = class2_norm_sums(x, g2, terms);
        out.push(base.note("exact rational closed form; unaccelerated partial sum").finish(
            Mode::Within,
            sums.raw,
            exact,
            ctx.tol("class2-norm-raw"),
        ));
        let c1_rel = ((sums.cesaro1 - exact) / exact).abs();
        let sm_rel = ((sums.smooth - exact) / exact).abs();
        out.push(
            record("normalization.class2.accelerated")
                .param("gamma", g2)
                .param("x", x)
                .param("terms", terms)
                .note(format!(
                    "(C,2) mean with Richardson on the 1/n bias; (C,1) rel err {c1_rel:.3e}; smooth cutoff rel err {sm_rel:.3e}"
                ))
                .finish(Mode::Within, sums.cesaro2_richardson, exact, ctx.tol("class2-norm-accelerated")),
        );
    }

    let fast = ctx.tol("fast-norm");
    for g in ctx.gammas(&[3.0], |g| g > 0.0) {
        for j in [0.0, 1.0, 4.0, 10.0] {
            out.push(eval(record("normalization.gk").param("gamma", g).param("J", j), |b| {
                let s = gk_state(j, 0.0, g, ctx.truncation())?;
                let closed = gk_normalization_closed(j, g, Variant::Corrected)?;
                Ok(b.param("truncation", s.m).finish(Mode::Within, s.norm_series, closed, fast))
            }));
        }
    }
    for j in [0.0, 1.0, 4.0, 10.0] {
        out.push(eval(record("normalization.gk-shifted").param("gamma", 3.0).param("J", j), |b| {
            let s = shifted_gk_state(j, 0.0, 3.0, ctx.truncation())?;
            Ok(b.param("truncation", s.m)
                .note("squared normalization e^(J/4)")
                .finish(Mode::Within, s.norm_series, shifted_gk_normalization_closed(j), fast))
        }));
    }
    for (c, d) in [(4.0, 6.0), (2.0, 1.0), (1.5, 3.7)] {
        for j in [0.0, 1.0, 4.0, 10.0] {
            out.push(eval(record("normalization.general").param("c", c).param("d", d).param("J", j), |b| {
                let s = general_spectrum_state(j, 0.0, c, d, PhaseSign::Printed, ctx.truncation())?;
                let closed = s.norm_closed.unwrap_or(f64::NAN);
                Ok(b.param("truncation", s.m).finish(Mode::Within, s.norm_series, closed, fast))
            }));
        }
    }
    for (a, bb) in [(1.0, 1.0), (1.0, 2.5), (2.0, 1.0), (0.5, 1.5)] {
        for z in [Complex64::new(0.3, 0.4), Complex64::new(1.2, -0.7)] {
            let base = record("normalization.mittag-leffler").param("a", a).param("b", bb).param("z_re", z.re).param("z_im", z.im);
            out.push(eval(base, |b| {
                let s = mittag_leffler_state(z, a, bb, ctx.truncation())?;
                let closed = mittag_leffler_normalization_closed(z, a, bb)?;
                Ok(b.param("truncation", s.m).finish(Mode::Within, s.norm_series, closed, fast))
            }));
        }
    }

    // canonical reduction a = b = 1
    let red = ctx.tol("ml-reduction");
    for z in [Complex64::new(0.8, -1.1), Complex64::new(2.0, 0.5)] {
        out.push(eval(record("normalization.mittag-leffler.canonical-norm").param("z_re", z.re).param("z_im", z.im), |b| {
            let s = mittag_leffler_state(z, 1.0, 1.0, ctx.truncation())?;
            Ok(b.finish(Mode::Within, s.norm_series, z.norm_sqr().exp(), red))
        }));
        out.push(eval(
            record("normalization.mittag-leffler.canonical-coefficients").param("z_re", z.re).param("z_im", z.im),
            |b| {
                let s = mittag_leffler_state(z, 1.0, 1.0, ctx.truncation())?;
                let scale = (-z.norm_sqr() / 2.0).exp();
                let mut worst = 0.0_f64;
                let mut term = Complex64::new(scale, 0.0);
                for (m, c) in s.coeffs.iter().enumerate() {
                    if m > 0 {
                        term = term * z / (m as f64).sqrt();
                    }
                    worst = worst.max((c - term).norm());
                }
                Ok(b.param("truncation", s.m)
                    .note("max_m |c_m - e^(-|z|²/2) z^m / sqrt(m!)|")
                    .finish(Mode::Within, worst, 0.0, red))
            },
        ));
    }
    for omega in [1.5, 2.5, 4.0] {
        for x in [0.3, 4.0, 12.0] {
            out.push(eval(record("normalization.mittag-leffler.kummer").param("omega", omega).param("x", x), |b| {
                let lhs = gamma(omega) * mittag_leffler(1.0, omega, x)?.value;
                let rhs = hyp1f1_one(omega, x)?.value;
                Ok(b.note("Gamma(omega) E_(1,omega)(x) vs 1F1(1; omega; x)").finish(
                    Mode::Within,
                    lhs,
                    rhs,
                    ctx.tol("ml-identity"),
                ))
            }));
        }
    }

    // Σ|c_m|² = 1 for normalized truncated states
    let self_tol = ctx.tol("self-norm");
    let states: Vec<(&str, Box<dyn Fn() -> Result<TruncatedState<f64>> + Sync>)> = vec![
        ("gk", Box::new(move || gk_state(4.0, 0.3, 3.0, Truncation::default()))),
        ("gk-shifted", Box::new(move || shifted_gk_state(4.0, 0.3, 3.0, Truncation::default()))),
        ("general", Box::new(move || general_spectrum_state(4.0, 0.3, 1.5, 3.7, PhaseSign::Printed, Truncation::default()))),
        ("mittag-leffler", Box::new(move || mittag_leffler_state(Complex64::new(1.0, 0.5), 0.5, 1.5, Truncation::default()))),
        ("class1", Box::new(move || class1_state(0.8, 0.3, 3.0, Truncation::Fixed { m: 400 }))),
        ("class2", Box::new(move || class2_state(0.1, 0.0, 3.0, Truncation::Fixed { m: 20 }))),
    ];
    for (name, make) in states {
        out.push(eval(record("normalization.self").param("family", name), |b| {
            let s = make()?;
            Ok(b.param("truncation", s.m).finish(Mode::Within, s.norm_squared(), 1.0, self_tol))
        }));
    }
    out
}

// ---------------------------------------------------------------- buchholz

pub(crate) fn buchholz(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let (g, y) = (4.0_f64, 2.0_f64);
    let terms = 100_000;
    for nu in [-1, -2] {
        let expect = y.powi(nu);
        let base = record("buchholz.raw").param("nu", nu).param("gamma", g).param("y", y).param("terms", terms);
        out.push(eval(base, |b| {
            let t = buchholz_terms(nu, g, y, terms)?;
            Ok(b.note("unaccelerated partial sum").finish(Mode::Within, slow_sums(&t).raw, expect, ctx.tol("buchholz-raw")))
        }));
        let base = record("buchholz.accelerated").param("nu", nu).param("gamma", g).param("y", y).param("terms", terms);
        out.push(eval(base, |b| {
            let s = slow_sums(&buchholz_terms(nu, g, y, terms)?);
            let c1_rel = ((s.cesaro1 - expect) / expect).abs();
            Ok(b.note(format!("(C,2) mean with Richardson on the 1/n bias; (C,1) rel err {c1_rel:.3e}")).finish(
                Mode::Within,
                s.cesaro2_richardson,
                expect,
                ctx.tol("buchholz-accelerated"),
            ))
        }));
    }
    let terms = 1_000_000;
    for nu in [-1, -2, -3] {
        let expect = y.powi(nu);
        let base = record("buchholz.smooth").param("nu", nu).param("gamma", g).param("y", y).param("terms", terms);
        out.push(eval(base, |b| {
            let s = slow_sums(&buchholz_terms(nu, g, y, terms)?);
            Ok(b.note("smooth cutoff mean").finish(Mode::Within, s.smooth, expect, ctx.tol("buchholz-smooth")))
        }));
    }
    out.push(eval(record("buchholz.trivial").param("nu", 0).param("gamma", g).param("y", y).param("terms", 50), |b| {
        let t = buchholz_terms(0, g, y, 50)?;
        Ok(b.note("(0)_n kills every n >= 1 term").finish(Mode::Within, slow_sums(&t).raw, 1.0, 0.0))
    }));
    out
}

// ---------------------------------------------------------------- temporal

fn temporal_grid(
    id: &str,
    family: Family,
    make: impl Fn(f64) -> Result<TruncatedState<f64>>,
    params: &[(&str, serde_json::Value)],
    tol: f64,
) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for j in [0.5, 3.0, 10.0] {
        for t in [0.0, 0.1, 1.0, 7.0] {
            let mut b = record(id).param("J", j).param("t", t);
            for (k, v) in params {
                b = b.param(k, v.clone());
            }
            out.push(eval(b, |b| {
                let s = make(j)?;
                let e = evolve(&s, t)?;
                let label = relabel_after(family, &s.label, t).expect("temporally stable family");
                let r = build_state(family, label, Truncation::Fixed { m: s.m })?;
                Ok(b.param("truncation", s.m)
                    .note("max_m |evolve(t) - relabeled state|")
                    .finish(Mode::Within, max_coeff_diff(&e, &r), 0.0, tol))
            }));
        }
    }
    out
}

pub(crate) fn temporal(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let tol = ctx.tol("temporal");
    let alpha = 0.4;
    let tr = ctx.truncation();
    for g in ctx.gammas(&[2.5], |g| g > 0.0) {
        out.extend(temporal_grid("temporal.gk", Family::GkIsotonic, |j| gk_state(j, alpha, g, tr), &[("gamma", g.into())], tol));
        out.extend(temporal_grid(
            "temporal.gk-shifted",
            Family::GkShifted,
            |j| shifted_gk_state(j, alpha, g, tr),
            &[("gamma", g.into())],
            tol,
        ));
    }
    for (c, d) in [(1.5, 3.7), (4.0, 6.0)] {
        for phase in [PhaseSign::Printed, PhaseSign::Conjugate] {
            let pname = serde_json::to_value(phase).unwrap_or_default();
            out.extend(temporal_grid(
                "temporal.general",
                Family::GeneralSpectrum,
                |j| general_spectrum_state(j, alpha, c, d, phase, tr),
                &[("c", c.into()), ("d", d.into()), ("phase", pname)],
                tol,
            ));
        }
    }
    for g in ctx.gammas(&[2.5, 3.0], |g| g > 0.0) {
        let base = record("temporal.general.reduction").param("gamma", g).param("c", 4.0).param("d", 2.0 * g);
        out.push(eval(base, |b| {
            let m = 80;
            let gk = gk_state(4.0, 0.7, g, Truncation::Fixed { m })?;
            let gs = general_spectrum_state(4.0, 0.7, 4.0, 2.0 * g, PhaseSign::Conjugate, Truncation::Fixed { m })?;
            Ok(b.param("truncation", m)
                .note("conjugate phase convention; the printed convention gives the complex conjugate")
                .finish(Mode::Within, max_coeff_diff(&gk, &gs), 0.0, ctx.tol("reduction")))
        }));
    }

    let (x, theta, g, t) = (0.8, 0.3, 3.0, 0.3);
    let m = 400;
    let grid = 720;
    let base = record("temporal.class1.counterexample")
        .param("x", x)
        .param("theta", theta)
        .param("gamma", g)
        .param("t", t)
        .param("truncation", m)
        .param("theta_grid", grid);
    out.push(eval(base, |b| {
        let s = class1_state(x, theta, g, Truncation::Fixed { m })?;
        let e = evolve(&s, t)?;
        let mut best = f64::INFINITY;
        let mut best_proj = f64::INFINITY;
        for k in 0..grid {
            let th = k as f64 * std::f64::consts::TAU / grid as f64;
            let r = class1_state(x, th, g, Truncation::Fixed { m })?;
            best = best.min(max_norm_distance(&e, &r));
            best_proj = best_proj.min(1.0 - overlap(&r, &e).norm());
        }
        Ok(b.note(format!(
            "min over theta' of ||evolve(t) - state(x, theta')||; projective distance 1 - |<.|.>| reaches {best_proj:.3e} at theta' = theta - 4t because the evolved state is a global phase times a relabeled state"
        ))
        .finish(Mode::Exceeds, best, 0.0, ctx.tol("counterexample")))
    }));
    out
}

fn max_norm_distance(a: &TruncatedState<f64>, b: &TruncatedState<f64>) -> f64 {
    a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------- action

pub(crate) fn action(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for g in ctx.gammas(&[3.0], |g| g > 0.0) {
        for j in [0.0, 1.0, 4.0, 10.0] {
            out.push(eval(record("action.shifted").param("gamma", g).param("J", j), |b| {
                let a = action_identity_check(j, g, true, ctx.truncation())?;
                Ok(b.param("truncation", a.truncation)
                    .note("<H - e_0> against J")
                    .finish(Mode::Within, a.expectation, j, ctx.tol("action")))
            }));
        }
        for j in [1.0, 4.0, 10.0] {
            out.push(eval(record("action.unshifted").param("gamma", g).param("J", j), |b| {
                let a = action_identity_check(j, g, false, ctx.truncation())?;
                Ok(b.param("truncation", a.truncation)
                    .note(format!("|<H> - J| with <H> = {:.6e}; the unshifted spectrum has no action identity", a.expectation))
                    .finish(Mode::Exceeds, a.gap.abs(), 0.0, ctx.tol("action-gap")))
            }));
        }
    }
    out
}

// ---------------------------------------------------------------- overlap

const OVERLAP_TRIPLES: [(f64, f64, f64); 10] = [
    (1.0, 2.0, 0.3),
    (4.0, 4.0, 1.1),
    (0.5, 9.0, -0.7),
    (2.0, 1.0, 2.4),
    (10.0, 3.0, 0.05),
    (0.1, 0.2, -2.9),
    (6.0, 6.5, 0.9),
    (3.0, 12.0, -1.3),
    (1.5, 0.0, 0.6),
    (8.0, 2.5, 3.1),
];

fn sample_label(family: Family, rng: &mut ChaCha8Rng) -> CsLabel<f64> {
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    match family {
        Family::ClassI => CsLabel::Point { x: rng.gen_range(0.0..1.5), theta: angle, gamma: 3.0 },
        Family::GkIsotonic | Family::GkShifted => CsLabel::ActionAngle { j: rng.gen_range(0.0..12.0), alpha: angle, gamma: 2.5 },
        Family::GeneralSpectrum => {
            CsLabel::general(rng.gen_range(0.0..12.0), angle, 1.5, 3.7, PhaseSign::Printed).expect("valid c, d")
        }
        _ => CsLabel::MittagLeffler { z: Complex64::from_polar(rng.gen_range(0.0..2.5), angle), a: 0.5, b: 1.5 },
    }
}

fn truncation_for(family: Family) -> Truncation {
    match family {
        Family::ClassI => Truncation::Fixed { m: 400 },
        _ => Truncation::Fixed { m: 200 },
    }
}

pub(crate) fn overlap_checks(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let g = 3.0;
    let alpha2 = 0.2;
    for (j1, j2, d) in OVERLAP_TRIPLES {
        let base = record("overlap.closed-form").param("gamma", g).param("J1", j1).param("J2", j2).param("delta", d);
        out.push(eval(base, |b| {
            let o = gk_overlap(j2, alpha2, j1, alpha2 + d, g)?;
            Ok(b.param("truncation", o.truncation).note("<J2, a2 | J1, a1> with delta = a1 - a2").finish(
                Mode::Within,
                o.series,
                o.closed,
                ctx.tol("overlap"),
            ))
        }));
    }
    for (j, a) in [(0.0, 0.0), (3.0, 0.4), (10.0, -1.2)] {
        out.push(eval(record("overlap.self").param("gamma", 2.5).param("J", j).param("alpha", a), |b| {
            let o = gk_overlap(j, a, j, a, 2.5)?;
            Ok(b.finish(Mode::Within, o.series, Complex64::new(1.0, 0.0), ctx.tol("self-overlap")))
        }));
    }
    let families = [Family::ClassI, Family::GkIsotonic, Family::GkShifted, Family::GeneralSpectrum, Family::MittagLeffler];
    for (fi, family) in families.into_iter().enumerate() {
        let seed = ctx.config.seed.wrapping_add(fi as u64);
        let base = record("overlap.bound").param("family", family.name()).param("seed", ctx.config.seed).param("pairs", 25);
        out.push(eval(base, |b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = 0.0_f64;
            for _ in 0..25 {
                let l1 = sample_label(family, &mut rng);
                let l2 = sample_label(family, &mut rng);
                let s1 = build_state(family, l1, truncation_for(family))?;
                let s2 = build_state(family, l2, truncation_for(family))?;
                worst = worst.max(overlap(&s1, &s2).norm());
            }
            Ok(b.note("max |<z|z'>| over seeded label pairs").finish(Mode::AtMost, worst, 1.0, ctx.tol("overlap-bound")))
        }));
    }
    for family in [Family::ClassI, Family::GkIsotonic, Family::GeneralSpectrum, Family::MittagLeffler] {
        let base = record("overlap.kernel.hermitian").param("family", family.name()).param("seed", ctx.config.seed);
        let cs_base = record("overlap.kernel.cauchy-schwarz").param("family", family.name()).param("seed", ctx.config.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed ^ 0x9e37_79b9);
        let labels: Vec<CsLabel<f64>> = (0..10).map(|_| sample_label(family, &mut rng)).collect();
        let m = 80;
        let kernels: Result<Vec<Vec<Complex64>>> = labels
            .iter()
            .map(|a| labels.iter().map(|b| reproducing_kernel(family, a, b, m)).collect())
            .collect();
        match kernels {
            Ok(k) => {
                let mut herm = 0.0_f64;
                let mut cs = 0.0_f64;
                for i in 0..k.len() {
                    for j in 0..k.len() {
                        herm = herm.max((k[i][j] - k[j][i].conj()).norm() / k[i][j].norm().max(1.0));
                        cs = cs.max(k[i][j].norm_sqr() / (k[i][i].re * k[j][j].re));
                    }
                }
                out.push(base.param("truncation", m).note("max |K(a,b) - conj K(b,a)| / max(1, |K|)").finish(
                    Mode::Within,
                    herm,
                    0.0,
                    ctx.tol("hermitian"),
                ));
                out.push(cs_base.param("truncation", m).note("max |K(a,b)|² / (K(a,a) K(b,b))").finish(
                    Mode::AtMost,
                    cs,
                    1.0,
                    ctx.tol("cauchy-schwarz"),
                ));
            }
            Err(e) => {
                out.push(base.error(&e));
                out.push(cs_base.error(e));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- energy

pub(crate) fn energy(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let g = 4.0;
    let terms = 1_000_000;
    for x in [0.7, 1.0, 1.5] {
        let base = record("energy.class2").param("gamma", g).param("x", x).param("terms", terms).param("argument", "x^2");
        out.push(eval(base, |b| {
            let e = class2_energy(x, g, Class2Argument::Squared, terms)?;
            Ok(b.note("smooth cutoff means of the energy and normalization sums").finish(
                Mode::Within,
                e.series,
                e.closed_as_printed,
                ctx.tol("class2-energy"),
            ))
        }));
    }
    // (x² - x + 2)(x² + x + 2) against x⁴ + 3x² + 4, coefficientwise in exact integers
    let p: [BigInt; 3] = [2.into(), (-1).into(), 1.into()];
    let q: [BigInt; 3] = [2.into(), 1.into(), 1.into()];
    let mut prod = vec![BigInt::from(0); 5];
    for (i, a) in p.iter().enumerate() {
        for (j, c) in q.iter().enumerate() {
            prod[i + j] += a * c;
        }
    }
    let target: Vec<BigInt> = [4, 0, 3, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
    let mismatches = prod.iter().zip(&target).filter(|(a, b)| a != b).count();
    out.push(
        record("energy.class2.factorization")
            .note("number of mismatched coefficients of (x²-x+2)(x²+x+2) vs x⁴+3x²+4")
            .finish(Mode::Within, mismatches as f64, 0.0, 0.0),
    );
    for g in ctx.gammas(&[3.0], |g| g > 0.0) {
        for j in [1.0_f64, 4.0, 10.0] {
            out.push(eval(record("energy.h2-dual").param("gamma", g).param("J", j), |b| {
                let n = 100;
                let mut mags = Vec::with_capacity(n);
                let mut rho = Vec::with_capacity(n);
                let (mut mag, mut r) = (1.0_f64, 1.0_f64);
                for m in 0..n {
                    if m > 0 {
                        mag *= j.sqrt();
                        r *= 4.0 * (g / 2.0 + m as f64);
                    }
                    mags.push(mag);
                    rho.push(r);
                }
                let norm = gk_normalization_closed(j, g, Variant::Corrected)?;
                let e = generic_h2_energy(&mags, &rho, norm)?;
                Ok(b.note(format!("forward vs reindexed form; forward = {:.15e} against J", e.forward)).finish(
                    Mode::Within,
                    e.reindexed,
                    e.forward,
                    ctx.tol("h2-dual"),
                ))
            }));
        }
    }
    out
}

// ---------------------------------------------------------------- discrepancies

pub(crate) fn discrepancies(ctx: &Ctx) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let fast = ctx.tol("fast-norm");
    let g = 3.0;
    for j in [1.0, 4.0, 10.0] {
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (id, mode) = variant_id("discrepancy.gk-normalization", variant);
            out.push(eval(record(&id).param("gamma", g).param("J", j), |b| {
                let s = gk_state(j, 0.0, g, ctx.truncation())?;
                let closed = gk_normalization_closed(j, g, variant)?;
                Ok(b.note(match variant {
                    Variant::Corrected => "1F1(1; gamma/2 + 1; J/4)",
                    Variant::AsPrinted => "printed parameter gamma + 1; corrected to gamma/2 + 1",
                })
                .finish(mode, s.norm_series, closed, fast))
            }));
        }
    }
    let dm = ctx.tol("density-moment");
    for g in [2.5, 3.0] {
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (id, mode) = variant_id("discrepancy.gk-density", variant);
            let note = match variant {
                Variant::Corrected => "exponent +gamma/2",
                Variant::AsPrinted => "printed exponent -gamma/2; corrected to +gamma/2",
            };
            out.push(with_note(moment0(&id, gk_density(g, variant), &[("gamma", g)], dm, mode), note));
        }
    }
    for (c, d) in [(4.0, 6.0), (1.5, 3.7)] {
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (id, mode) = variant_id("discrepancy.general-density", variant);
            let note = match variant {
                Variant::Corrected => "exponent +d/c",
                Variant::AsPrinted => "printed exponent -d/c; corrected to +d/c",
            };
            out.push(with_note(moment0(&id, general_density(c, d, variant), &[("c", c), ("d", d)], dm, mode), note));
        }
    }
    for g in [2.6, 3.0, 4.0] {
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (id, mode) = variant_id("discrepancy.class1-density", variant);
            let note = match variant {
                Variant::Corrected => "prefactor gamma / Gamma(gamma - 2)",
                Variant::AsPrinted => "printed prefactor Gamma(gamma - 2) / gamma; corrected to its reciprocal",
            };
            out.push(with_note(moment0(&id, class1_density(g, variant), &[("gamma", g)], ctx.tol("class1-moment"), mode), note));
        }
    }
    for (j1, j2, d) in [(1.0, 2.0, 0.3), (4.0, 4.0, 1.1), (0.5, 9.0, -0.7)] {
        for variant in [Variant::Corrected, Variant::AsPrinted] {
            let (id, mode) = variant_id("discrepancy.overlap-phase", variant);
            let base = record(&id).param("gamma", 3.0).param("J1", j1).param("J2", j2).param("delta", d);
            out.push(eval(base, |b| {
                let o = gk_overlap(j2, 0.2, j1, 0.2 + d, 3.0)?;
                let (closed, note) = match variant {
                    Variant::Corrected => (o.closed, "inner phase e^(-4 i delta)"),
                    Variant::AsPrinted => (o.closed_as_printed, "printed inner phase e^(-4 i gamma delta); corrected to e^(-4 i delta)"),
                };
                Ok(b.note(note).finish(mode, o.series, closed, ctx.tol("overlap")))
            }));
        }
    }
    let terms = 1_000_000;
    for x in [0.7, 1.5] {
        let base = record("discrepancy.class2-energy-argument.as-printed")
            .param("gamma", 4.0)
            .param("x", x)
            .param("terms", terms)
            .param("argument", "x");
        out.push(eval(base, |b| {
            let e = class2_energy(x, 4.0, Class2Argument::Linear, terms)?;
            Ok(b.note("energy sum with 1F1(-m; gamma+1; x) against the printed closed form; the closed form holds with argument x²")
                .finish(Mode::DocumentedFailure, e.series, e.closed_as_printed, ctx.tol("class2-energy")))
        }));
    }
    let base = record("discrepancy.class2-literal-norm.as-printed").param("gamma", 4.0).param("x", 2.0).param("truncation", 200);
    out.push(eval(base, |b| {
        let s = class2_state(2.0, 0.0, 4.0, Truncation::Fixed { m: 200 })?;
        Ok(b.param("positivity_ok", s.positivity_ok)
            .note("printed coefficients take square roots of negative radicands; sum |c_m|² differs from 1 while the signed normalization holds")
            .finish(Mode::DocumentedFailure, s.norm_squared(), 1.0, ctx.tol("self-norm")))
    }));
    out.push(resolution_matrix(
        "discrepancy.resolution-matrix-gk.as-printed",
        gk_density(2.5, Variant::AsPrinted),
        &[("gamma", 2.5)],
        12,
        ctx.tol("resolution"),
        Mode::DocumentedFailure,
    ));
    out
}

fn variant_id(prefix: &str, variant: Variant) -> (String, Mode) {
    match variant {
        Variant::Corrected => (format!("{prefix}.corrected"), Mode::Within),
        Variant::AsPrinted => (format!("{prefix}.as-printed"), Mode::DocumentedFailure),
    }
}

fn moment0(id: &str, density: Result<MeasureDensity<f64>>, params: &[(&str, f64)], tol: f64, mode: Mode) -> VerificationReport {
    let mut b = record(id).param("m", 0);
    for (k, v) in params {
        b = b.param(k, *v);
    }
    eval(b, |b| {
        let d = density?;
        let got = d.moment(0)?;
        let target = d.moment_target(0)?;
        Ok(b.param("method", serde_json::to_value(got.method).unwrap_or_default()).finish(mode, got.value, target, tol))
    })
}

fn with_note(mut r: VerificationReport, note: &str) -> VerificationReport {
    if r.notes.is_empty() {
        r.notes = note.to_string();
    } else {
        r.notes = format!("{}; {note}", r.notes);
    }
    r
}
