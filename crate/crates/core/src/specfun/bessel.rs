//! Modified Bessel functions of real order `nu >= 0` and positive argument.

use super::gamma::ln_gamma;
use super::series::{SeriesResult, TERM_CAP};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, PanelConfig};
use crate::scalar::{CompensatedSum, Real};

fn check_args<T: Real>(nu: T, x: T) -> Result<()> {
    if !(nu >= T::zero()) {
        return Err(Error::domain("nu >= 0", nu));
    }
    if !(x > T::zero()) {
        return Err(Error::domain("x > 0", x));
    }
    Ok(())
}

/// `I_nu(x)` from the ascending series `sum_k (x/2)^{2k+nu} / (k! Γ(k+nu+1))`.
pub fn bessel_i<T: Real>(nu: T, x: T) -> Result<SeriesResult<T>> {
    check_args(nu, x)?;
    let half = x / T::of(2.0);
    let q = half * half;
    let mut term = (nu * half.ln() - ln_gamma(nu + T::one())).exp();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..TERM_CAP {
        let kf = T::of_usize(k);
        let ratio = q / ((kf + T::one()) * (kf + T::one() + nu));
        term *= ratio;
        acc.add(term);
        let sum = acc.value();
        if !sum.is_finite() {
            return Err(Error::Overflow { what: "bessel_i" });
        }
        let next = q / ((kf + T::of(2.0)) * (kf + T::of(2.0) + nu));
        if next < T::one() {
            let tail = term * next / (T::one() - next);
            if tail <= T::epsilon() * sum {
                return Ok(SeriesResult { value: sum, terms_used: k + 2, tail_bound: tail });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "bessel_i",
        terms: TERM_CAP,
        estimate: acc.value().to_f64_lossy(),
        error: f64::NAN,
    })
}

/// `e^{-x} I_nu(x)`.
pub fn bessel_i_scaled<T: Real>(nu: T, x: T) -> Result<SeriesResult<T>> {
    let r = bessel_i(nu, x)?;
    let s = (-x).exp();
    Ok(SeriesResult { value: r.value * s, terms_used: r.terms_used, tail_bound: r.tail_bound * s })
}

/// `e^{x} K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt`, by adaptive
/// quadrature. `tail_bound` carries the quadrature error estimate and `terms_used` the
/// number of panels.
pub fn bessel_k_scaled<T: Real>(nu: T, x: T) -> Result<SeriesResult<T>> {
    check_args(nu, x)?;
    let integrand = |t: T| {
        let sh = (t / T::of(2.0)).sinh();
        let c = T::of(2.0) * sh * sh;
        let base = -x * c;
        T::of(0.5) * ((base + nu * t).exp() + (base - nu * t).exp())
    };
    let cfg = PanelConfig { rel_tol: T::of(1e-13).max(T::epsilon() * T::of(8.0)), ..PanelConfig::default() };
    let r = integrate_semi_infinite(integrand, &cfg)?;
    Ok(SeriesResult { value: r.value, terms_used: r.panels, tail_bound: r.error_estimate })
}

/// `K_nu(x)`; underflow is reported as an error rather than returned as zero.
pub fn bessel_k<T: Real>(nu: T, x: T) -> Result<SeriesResult<T>> {
    let r = bessel_k_scaled(nu, x)?;
    let s = (-x).exp();
    let value = r.value * s;
    if value == T::zero() || value < T::min_positive_value() {
        return Err(Error::Underflow { what: "bessel_k" });
    }
    Ok(SeriesResult { value, terms_used: r.terms_used, tail_bound: r.tail_bound * s })
}

/// `I_nu(x) K_nu(x)`, assembled from the scaled functions so that neither factor
/// overflows for large `x`.
pub fn bessel_ik_product<T: Real>(nu: T, x: T) -> Result<T> {
    Ok(bessel_i_scaled(nu, x)?.value * bessel_k_scaled(nu, x)?.value)
}
