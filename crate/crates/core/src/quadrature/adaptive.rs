use serde::Serialize;

use super::rule::{gauss_legendre, QuadratureRule};
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// Panel and tolerance settings for adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PanelConfig<T> {
    /// Length scale `s` of the map `x = -s ln u` used on `[0, inf)`; pick it close to
    /// the decay length of the integrand.
    pub scale: T,
    pub rel_tol: T,
    pub abs_tol: T,
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Gauss-Legendre points per panel.
    pub panel_order: usize,
}

impl<T: Real> Default for PanelConfig<T> {
    fn default() -> Self {
        Self {
            scale: T::one(),
            rel_tol: T::of(1e-13),
            abs_tol: T::of(1e-300).max(T::min_positive_value()),
            initial_panels: 10,
            max_panels: 4000,
            panel_order: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral<T> {
    pub value: T,
    pub error_estimate: T,
    pub panels: usize,
}

struct Panel<T> {
    a: T,
    b: T,
    /// Rule applied to the whole panel.
    coarse: T,
    /// Rule applied to each half.
    left: T,
    right: T,
}

impl<T: Real> Panel<T> {
    fn fine(&self) -> T {
        self.left + self.right
    }

    fn error(&self) -> T {
        (self.coarse - self.fine()).abs()
    }
}

fn apply<T: Real>(rule: &QuadratureRule<T>, f: &impl Fn(T) -> T, a: T, b: T) -> T {
    let half = (b - a) / T::of(2.0);
    let mid = (a + b) / T::of(2.0);
    half * rule.integrate(|t| f(mid + half * t))
}

fn make_panel<T: Real>(rule: &QuadratureRule<T>, f: &impl Fn(T) -> T, a: T, b: T, coarse: T) -> Panel<T> {
    let mid = (a + b) / T::of(2.0);
    Panel { a, b, coarse, left: apply(rule, f, a, mid), right: apply(rule, f, mid, b) }
}

/// Adaptive Gauss-Legendre integration over `[a, b]`.
///
/// Every panel carries the one-panel and two-half-panel estimates; the panel where they
/// differ most is bisected until the summed differences fall below
/// `max(abs_tol, rel_tol |value|)`.
pub fn integrate_interval<T: Real>(f: impl Fn(T) -> T, a: T, b: T, cfg: &PanelConfig<T>) -> Result<Integral<T>> {
    let rule = gauss_legendre::<T>(cfg.panel_order)?;
    let n0 = cfg.initial_panels.max(1);
    let width = (b - a) / T::of_usize(n0);
    let mut panels: Vec<Panel<T>> = (0..n0)
        .map(|i| {
            let lo = a + width * T::of_usize(i);
            let hi = if i + 1 == n0 { b } else { a + width * T::of_usize(i + 1) };
            let coarse = apply(&rule, &f, lo, hi);
            make_panel(&rule, &f, lo, hi, coarse)
        })
        .collect();

    loop {
        let value: T = panels.iter().map(Panel::fine).collect::<CompensatedSum<T>>().value();
        let error: T = panels.iter().map(Panel::error).collect::<CompensatedSum<T>>().value();
        if !value.is_finite() {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature (non-finite integrand)",
                terms: panels.len(),
                estimate: value.to_f64_lossy(),
                error: error.to_f64_lossy(),
            });
        }
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Integral { value, error_estimate: error, panels: panels.len() });
        }
        if panels.len() >= cfg.max_panels {
            return Err(Error::NonConvergence {
                what: "adaptive quadrature",
                terms: panels.len(),
                estimate: value.to_f64_lossy(),
                error: error.to_f64_lossy(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error().partial_cmp(&y.1.error()).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = (p.a + p.b) / T::of(2.0);
        panels.push(make_panel(&rule, &f, p.a, mid, p.left));
        panels.push(make_panel(&rule, &f, mid, p.b, p.right));
    }
}

/// `int_0^inf f(x) dx` after the substitution `x = -s ln u`, `u in (0, 1]`.
///
/// The integrand must decay at least like `e^{-x/s}`.
pub fn integrate_semi_infinite<T: Real>(f: impl Fn(T) -> T, cfg: &PanelConfig<T>) -> Result<Integral<T>> {
    let s = cfg.scale;
    let mapped = |u: T| {
        if u <= T::zero() {
            return T::zero();
        }
        let x = -s * u.ln();
        let v = f(x);
        if v == T::zero() {
            T::zero()
        } else {
            v * s / u
        }
    };
    integrate_interval(mapped, T::zero(), T::one(), cfg)
}
