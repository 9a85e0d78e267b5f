//! Radial measure densities and their moment laws.
//!
//! Every moment is evaluated by a Gauss rule that is exact for the integrand after a
//! change of variable (`t = x²` for Class-I, `u = J/4` or `u = J/c` for the action
//! families, `u = x^{1/a}` for Mittag-Leffler), so the laws hold to rounding.

use serde::Serialize;

use super::Variant;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_gen_laguerre, integrate_semi_infinite, PanelConfig};
use crate::scalar::Real;
use crate::specfun::{gamma, hyp1f1_neg_int_sequence, ln_gamma, ln_pochhammer, pochhammer};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DensityKind<T> {
    /// `λ(x) = (γ / Γ(γ-2)) x^{2γ-5} e^{-x²}`; printed prefactor `Γ(γ-2)/γ`.
    ClassI { gamma: T },
    /// `λ(x) = e^{-x}`.
    ClassII { gamma: T },
    /// `λ(J) = J^{γ/2} e^{-J/4} / (2^{γ+2} Γ(1+γ/2))`; printed exponent `-γ/2`.
    Gk { gamma: T },
    /// `λ(J) = e^{-J/c} J^{d/c} / (Γ(1+d/c) c^{1+d/c})`; printed exponent `-d/c`.
    GeneralSpectrum { c: T, d: T },
    /// Radial part `x^{(b-a)/a} e^{-x^{1/a}} / (a Γ(b))`.
    MittagLeffler { a: T, b: T },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureDensity<T> {
    pub kind: DensityKind<T>,
    pub variant: Variant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MomentMethod {
    GaussLaguerre { order: usize, alpha: f64 },
    /// `∫ u^{s-1} e^{-u} du = Γ(s)` continued to `s <= 0`, where the integral diverges.
    MellinContinuation { s: f64 },
    Adaptive { panels: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moment<T> {
    pub value: T,
    pub method: MomentMethod,
}

pub fn class1_density<T: Real>(gamma: T, variant: Variant) -> Result<MeasureDensity<T>> {
    if !(gamma > T::of(2.0)) {
        return Err(Error::domain("gamma > 2 (Class-I)", gamma));
    }
    Ok(MeasureDensity { kind: DensityKind::ClassI { gamma }, variant })
}

pub fn class2_density<T: Real>(gamma: T) -> Result<MeasureDensity<T>> {
    if !(gamma > T::one()) {
        return Err(Error::domain("gamma > 1 (Class-II)", gamma));
    }
    Ok(MeasureDensity { kind: DensityKind::ClassII { gamma }, variant: Variant::Corrected })
}

pub fn gk_density<T: Real>(gamma: T, variant: Variant) -> Result<MeasureDensity<T>> {
    if !(gamma > T::zero()) {
        return Err(Error::domain("gamma > 0 (GK)", gamma));
    }
    Ok(MeasureDensity { kind: DensityKind::Gk { gamma }, variant })
}

pub fn general_density<T: Real>(c: T, d: T, variant: Variant) -> Result<MeasureDensity<T>> {
    if !(c > T::zero()) {
        return Err(Error::domain("c > 0", c));
    }
    if !(d > T::zero()) {
        return Err(Error::domain("d > 0", d));
    }
    Ok(MeasureDensity { kind: DensityKind::GeneralSpectrum { c, d }, variant })
}

pub fn ml_weight<T: Real>(a: T, b: T) -> Result<MeasureDensity<T>> {
    if !(a > T::zero()) {
        return Err(Error::domain("a > 0", a));
    }
    if !(b > T::zero()) {
        return Err(Error::domain("b > 0", b));
    }
    Ok(MeasureDensity { kind: DensityKind::MittagLeffler { a, b }, variant: Variant::Corrected })
}

fn to_f64<T: Real>(v: T) -> f64 {
    v.to_f64_lossy()
}

impl<T: Real> MeasureDensity<T> {
    fn class1_prefactor(gamma: T, variant: Variant) -> T {
        match variant {
            Variant::Corrected => gamma / self::gamma(gamma - T::of(2.0)),
            Variant::AsPrinted => self::gamma(gamma - T::of(2.0)) / gamma,
        }
    }

    fn exponent_sign(&self) -> T {
        match self.variant {
            Variant::Corrected => T::one(),
            Variant::AsPrinted => -T::one(),
        }
    }

    /// `λ(r)` for `r > 0`.
    pub fn value(&self, r: T) -> T {
        match self.kind {
            DensityKind::ClassI { gamma } => {
                Self::class1_prefactor(gamma, self.variant) * r.powf(T::of(2.0) * gamma - T::of(5.0)) * (-r * r).exp()
            }
            DensityKind::ClassII { .. } => (-r).exp(),
            DensityKind::Gk { gamma } => {
                let h = gamma / T::of(2.0);
                let ln = self.exponent_sign() * h * r.ln() - r / T::of(4.0)
                    - (gamma + T::of(2.0)) * T::of(2.0).ln()
                    - ln_gamma(T::one() + h);
                ln.exp()
            }
            DensityKind::GeneralSpectrum { c, d } => {
                let k = d / c;
                let ln = self.exponent_sign() * k * r.ln() - r / c - ln_gamma(T::one() + k) - (T::one() + k) * c.ln();
                ln.exp()
            }
            DensityKind::MittagLeffler { a, b } => {
                ((b - a) / a * r.ln() - r.powf(T::one() / a)).exp() / (a * gamma(b))
            }
        }
    }

    /// The value `ρ(m)` that the `m`-th moment must equal.
    pub fn moment_target(&self, m: usize) -> Result<T> {
        let mf = T::of_usize(m);
        Ok(match self.kind {
            DensityKind::ClassI { gamma } => {
                (ln_gamma(mf + T::one()) + (gamma / T::of(2.0) + mf).ln() - ln_pochhammer(gamma, m)).exp()
            }
            DensityKind::ClassII { gamma } => gamma / (gamma + mf),
            DensityKind::Gk { gamma } => T::of(4.0).powi(m as i32) * pochhammer(gamma / T::of(2.0) + T::one(), m)?,
            DensityKind::GeneralSpectrum { c, d } => c.powi(m as i32) * pochhammer(T::one() + d / c, m)?,
            DensityKind::MittagLeffler { a, b } => (ln_gamma(a * mf + b) - ln_gamma(b)).exp(),
        })
    }

    /// The `m`-th moment by quadrature: `∫ 1F1(-m;γ;x²)² λ` for Class-I,
    /// `∫ 1F1(-m;γ+1;x) λ` for Class-II, `∫ r^m λ` otherwise.
    pub fn moment(&self, m: usize) -> Result<Moment<T>> {
        let mf = T::of_usize(m);
        match self.kind {
            DensityKind::ClassI { gamma } => {
                // t = x²: ∫ F(x²)² C x^{2γ-5} e^{-x²} dx = (C/2) ∫ F(t)² t^{γ-3} e^{-t} dt
                let alpha = gamma - T::of(3.0);
                let order = m + 2;
                let rule = gauss_gen_laguerre(order, alpha)?;
                rule.require_laguerre(alpha, 2 * m)?;
                let s = rule.integrate(|t| {
                    let f = hyp1f1_neg_int_sequence(m, gamma, t).map(|v| v[m]).unwrap_or(T::nan());
                    f * f
                });
                Ok(Moment {
                    value: Self::class1_prefactor(gamma, self.variant) / T::of(2.0) * s,
                    method: MomentMethod::GaussLaguerre { order, alpha: to_f64(alpha) },
                })
            }
            DensityKind::ClassII { gamma } => {
                let order = m / 2 + 2;
                let rule = gauss_gen_laguerre(order, T::zero())?;
                rule.require_laguerre(T::zero(), m)?;
                let b = gamma + T::one();
                let s = rule.integrate(|t| hyp1f1_neg_int_sequence(m, b, t).map(|v| v[m]).unwrap_or(T::nan()));
                Ok(Moment { value: s, method: MomentMethod::GaussLaguerre { order, alpha: 0.0 } })
            }
            DensityKind::Gk { gamma } => {
                let scale = T::of(4.0);
                let k = gamma / T::of(2.0);
                self.action_moment(m, scale, k, ln_gamma(T::one() + k), (gamma + T::of(2.0)) * T::of(2.0).ln())
            }
            DensityKind::GeneralSpectrum { c, d } => {
                let k = d / c;
                self.action_moment(m, c, k, ln_gamma(T::one() + k), (T::one() + k) * c.ln())
            }
            DensityKind::MittagLeffler { a, b } => {
                // u = x^{1/a}: ∫ x^m x^{(b-a)/a} e^{-x^{1/a}} dx / (a Γ(b)) = ∫ u^{am+b-1} e^{-u} du / Γ(b)
                let alpha = b - T::one();
                let gb = gamma(b);
                if a == a.round() && a <= T::of(64.0) {
                    let deg = a.to_usize().unwrap_or(1) * m;
                    let order = deg / 2 + 2;
                    let rule = gauss_gen_laguerre(order, alpha)?;
                    let s = rule.integrate(|u| u.powi(deg as i32));
                    Ok(Moment { value: s / gb, method: MomentMethod::GaussLaguerre { order, alpha: to_f64(alpha) } })
                } else {
                    let p = a * mf + alpha;
                    let scale = (p + T::one()).max(T::one());
                    let cfg = PanelConfig { scale, rel_tol: T::of(1e-13), ..PanelConfig::default() };
                    let r = integrate_semi_infinite(|u: T| if u > T::zero() { (p * u.ln() - u).exp() } else { T::zero() }, &cfg)?;
                    Ok(Moment { value: r.value / gb, method: MomentMethod::Adaptive { panels: r.panels } })
                }
            }
        }
    }

    /// `∫ J^m λ(J) dJ` for `λ(J) = J^{±k} e^{-J/s} e^{-ln_norm}` with `ln_norm` the log of
    /// the denominator apart from `Γ(1+k)`. After `u = J/s` the corrected density is
    /// `u^k e^{-u} / Γ(1+k)` and the moment is `s^m Σ w_i u_i^m / Γ(1+k)`.
    fn action_moment(&self, m: usize, s: T, k: T, ln_g: T, ln_norm: T) -> Result<Moment<T>> {
        let mf = T::of_usize(m);
        let sign = self.exponent_sign();
        // J^{sign k} = s^{sign k} u^{sign k}; dJ = s du
        let ln_pref = (sign * k + T::one()) * s.ln() - ln_norm - ln_g + mf * s.ln();
        let alpha = sign * k;
        if alpha > -T::one() {
            let order = m / 2 + 2;
            let rule = gauss_gen_laguerre(order, alpha)?;
            let sum = rule.integrate(|u| u.powi(m as i32));
            Ok(Moment { value: ln_pref.exp() * sum, method: MomentMethod::GaussLaguerre { order, alpha: to_f64(alpha) } })
        } else {
            let sarg = mf + alpha + T::one();
            if sarg > T::zero() {
                let rule = gauss_gen_laguerre(1, sarg - T::one())?;
                let sum = rule.integrate(|_| T::one());
                return Ok(Moment {
                    value: ln_pref.exp() * sum,
                    method: MomentMethod::GaussLaguerre { order: 1, alpha: to_f64(sarg - T::one()) },
                });
            }
            Ok(Moment { value: ln_pref.exp() * gamma(sarg), method: MomentMethod::MellinContinuation { s: to_f64(sarg) } })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn class1_low_moments() {
        let d = class1_density(3.0_f64, Variant::Corrected).unwrap();
        assert_relative_eq!(d.moment_target(0).unwrap(), 1.5, max_relative = 1e-15);
        assert_relative_eq!(d.moment_target(1).unwrap(), 2.5 / 3.0, max_relative = 1e-15);
        for m in 0..=12 {
            let got = d.moment(m).unwrap().value;
            assert_relative_eq!(got, d.moment_target(m).unwrap(), max_relative = 1e-10);
        }
        let printed = class1_density(3.0_f64, Variant::AsPrinted).unwrap();
        assert!((printed.moment(0).unwrap().value / 1.5 - 1.0).abs() > 0.1);
    }

    #[test]
    fn class1_moment_matches_direct_integration() {
        let d = class1_density(2.6_f64, Variant::Corrected).unwrap();
        let cfg = PanelConfig { scale: 1.0, ..PanelConfig::default() };
        let m = 3;
        let direct = integrate_semi_infinite(
            |x: f64| {
                if x <= 0.0 {
                    return 0.0;
                }
                let f = hyp1f1_neg_int_sequence(m, 2.6, x * x).unwrap()[m];
                f * f * d.value(x)
            },
            &cfg,
        )
        .unwrap()
        .value;
        assert_relative_eq!(direct, d.moment(m).unwrap().value, max_relative = 1e-7);
    }

    #[test]
    fn class2_hand_value() {
        let d = class2_density(2.0_f64).unwrap();
        assert_relative_eq!(d.moment(2).unwrap().value, 0.5, max_relative = 1e-14);
        assert_relative_eq!(d.moment(0).unwrap().value, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn gk_moments_and_printed_failure() {
        let d = gk_density(3.0_f64, Variant::Corrected).unwrap();
        assert_relative_eq!(d.moment(0).unwrap().value, 1.0, max_relative = 1e-13);
        assert_relative_eq!(d.moment(1).unwrap().value, 10.0, max_relative = 1e-13);
        let p = gk_density(3.0_f64, Variant::AsPrinted).unwrap();
        let m0 = p.moment(0).unwrap();
        let expect = 4.0_f64.powf(1.0 - 1.5) * gamma(1.0 - 1.5) / (2.0_f64.powf(5.0) * gamma(2.5));
        assert_relative_eq!(m0.value, expect, max_relative = 1e-13);
        assert!(m0.value < 0.0);
        assert!(matches!(m0.method, MomentMethod::MellinContinuation { .. }));
    }

    #[test]
    fn gk_density_integrates_to_one_directly() {
        let d = gk_density(2.5_f64, Variant::Corrected).unwrap();
        let cfg = PanelConfig { scale: 8.0, ..PanelConfig::default() };
        let total = integrate_semi_infinite(|j: f64| if j > 0.0 { d.value(j) } else { 0.0 }, &cfg).unwrap().value;
        assert_relative_eq!(total, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn general_and_ml_moments() {
        let d = general_density(4.0_f64, 6.0, Variant::Corrected).unwrap();
        assert_relative_eq!(d.moment(1).unwrap().value, 10.0, max_relative = 1e-13);
        let w = ml_weight(1.0_f64, 2.0).unwrap();
        assert_relative_eq!(w.moment(1).unwrap().value, 2.0, max_relative = 1e-13);
        let w = ml_weight(2.0_f64, 1.0).unwrap();
        assert_relative_eq!(w.moment(1).unwrap().value, 2.0, max_relative = 1e-13);
        let w = ml_weight(0.5_f64, 1.5).unwrap();
        for m in 0..6 {
            assert_relative_eq!(w.moment(m).unwrap().value, w.moment_target(m).unwrap(), max_relative = 1e-10);
        }
    }
}
