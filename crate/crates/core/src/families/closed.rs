//! Closed forms and the long sums they are compared against.

use num_complex::Complex;
use serde::Serialize;

use super::stream::NegIntSeq;
use super::{gk_state, overlap, shifted_gk_state, expected_energy, Truncation, Variant};
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Field, Real};
use crate::specfun::{bessel_i_scaled, bessel_k_scaled, gamma, hyp1f1_one, hyp1f1_one_complex, ln_gamma, mittag_leffler};
use crate::summation::{cesaro1, cesaro2_richardson, partial_sum, richardson, smooth_cutoff};

/// `Γ(γ) e^{x²} x^{-2(γ-1)} K_ν(x²/2) I_ν(x²/2)` with `ν = (γ-1)/2`.
pub fn class1_normalization_closed<T: Real>(x: T, gamma: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("x > 0", x));
    }
    let nu = (gamma - T::one()) / T::of(2.0);
    let arg = x * x / T::of(2.0);
    // K_ν I_ν = (e^{z} K_ν)(e^{-z} I_ν), so both scaled factors can be used directly.
    let prod = bessel_k_scaled(nu, arg)?.value * bessel_i_scaled(nu, arg)?.value;
    let log_pref = ln_gamma(gamma) + x * x - T::of(2.0) * (gamma - T::one()) * x.ln();
    Ok(log_pref.exp() * prod)
}

/// `(γ)_m 1F1(-m; γ; x²)² / (m! (γ/2 + m))` for `m < n`.
pub fn class1_norm_terms<T: Real>(x: T, gamma: T, n: usize) -> Vec<T> {
    let mut ratio = T::one();
    NegIntSeq::new(gamma, x * x)
        .take(n)
        .enumerate()
        .map(|(m, f)| {
            let mf = T::of_usize(m);
            if m > 0 {
                ratio = ratio * (gamma + mf - T::one()) / mf;
            }
            ratio * f * f / (gamma / T::of(2.0) + mf)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Class1NormSums<T> {
    pub terms: usize,
    /// Partial sum over `terms` terms.
    pub raw: T,
    /// Partial sum over `terms / 4` terms.
    pub coarse: T,
    /// Tail error falls like `M^{-1/2}`, so `2 raw - coarse` cancels it.
    pub richardson: T,
}

pub fn class1_norm_sums<T: Real>(x: T, gamma: T, terms: usize) -> Class1NormSums<T> {
    let t = class1_norm_terms(x, gamma, terms);
    let raw = partial_sum(&t);
    let coarse = partial_sum(&t[..terms / 4]);
    Class1NormSums { terms, raw, coarse, richardson: richardson(raw, coarse, T::of(4.0), T::of(0.5)) }
}

/// `(γ - 1)(1/x + 1/x²)`.
pub fn class2_normalization_closed<T: Real>(x: T, gamma: T) -> T {
    (gamma - T::one()) * (T::one() / x + T::one() / (x * x))
}

/// [`class2_normalization_closed`] over any field, e.g. exact rationals.
pub fn class2_normalization_exact<F: Field>(x: &F, gamma: &F) -> F {
    (gamma.clone() - F::one()) * (F::one() / x.clone() + F::one() / (x.clone() * x.clone()))
}

/// Signed terms `(γ + m) 1F1(-m; γ + 1; y) / γ`.
pub fn class2_norm_terms<T: Real>(y: T, gamma: T, n: usize) -> Vec<T> {
    NegIntSeq::new(gamma + T::one(), y)
        .take(n)
        .enumerate()
        .map(|(m, f)| (gamma + T::of_usize(m)) * f / gamma)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlowSums<T> {
    pub terms: usize,
    pub raw: T,
    pub cesaro1: T,
    pub cesaro2_richardson: T,
    pub smooth: T,
}

pub fn slow_sums<T: Real>(terms: &[T]) -> SlowSums<T> {
    SlowSums {
        terms: terms.len(),
        raw: partial_sum(terms),
        cesaro1: cesaro1(terms),
        cesaro2_richardson: cesaro2_richardson(terms),
        smooth: smooth_cutoff(terms),
    }
}

pub fn class2_norm_sums<T: Real>(x: T, gamma: T, terms: usize) -> SlowSums<T> {
    slow_sums(&class2_norm_terms(x, gamma, terms))
}

/// Terms of `Σ_n (-ν)_n Γ(γ+ν+1) / (n! Γ(γ+1)) 1F1(-n; γ+1; y)`, whose sum is `y^ν`.
pub fn buchholz_terms<T: Real>(nu: i32, gamma: T, y: T, n: usize) -> Result<Vec<T>> {
    if nu > 0 {
        return Err(Error::domain("nu <= 0", nu));
    }
    if !(gamma + T::of(nu as f64) > -T::one()) {
        return Err(Error::domain("gamma + nu > -1", gamma + T::of(nu as f64)));
    }
    if !(y > T::zero()) {
        return Err(Error::domain("y > 0", y));
    }
    let k = (-nu) as usize;
    // Γ(γ+ν+1)/Γ(γ+1) = 1 / (γ+ν+1)_{-ν}
    let mut c = T::one();
    for i in 0..k {
        c /= gamma + T::of(nu as f64) + T::one() + T::of_usize(i);
    }
    Ok(NegIntSeq::new(gamma + T::one(), y)
        .take(n)
        .enumerate()
        .map(|(i, f)| {
            if i > 0 {
                c = c * T::of_usize(k + i - 1) / T::of_usize(i);
            }
            c * f
        })
        .collect())
}

/// Which argument the Class-II energy sum uses in `1F1(-m; γ+1; ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class2Argument {
    /// `x`, as in the state coefficients.
    Linear,
    /// `x²`, as in the energy sum.
    #[default]
    Squared,
}

impl Class2Argument {
    pub fn apply<T: Real>(&self, x: T) -> T {
        match self {
            Class2Argument::Linear => x,
            Class2Argument::Squared => x * x,
        }
    }
}

/// `E N` as printed: `2 (x² - x + 2)(x² + x + 2)(γ - 1)(γ - 2) / x⁶`.
pub fn class2_energy_times_norm_printed<T: Real>(x: T, gamma: T) -> T {
    let x2 = x * x;
    T::of(2.0) * (x2 - x + T::of(2.0)) * (x2 + x + T::of(2.0)) * (gamma - T::one()) * (gamma - T::of(2.0))
        / (x2 * x2 * x2)
}

/// `E N` from the Buchholz sums at argument `y`: `2 (γ-1)(γ-2)(y² + 3y + 4) / y³`.
pub fn class2_energy_times_norm<T: Real>(y: T, gamma: T) -> T {
    T::of(2.0) * (gamma - T::one()) * (gamma - T::of(2.0)) * (y * y + T::of(3.0) * y + T::of(4.0)) / (y * y * y)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Class2Energy<T> {
    pub argument: Class2Argument,
    pub terms: usize,
    /// Ratio of the smoothed energy and normalization sums.
    pub series: T,
    /// Buchholz closed form at the same argument.
    pub closed: T,
    /// Printed `E N` divided by the signed normalization at the same argument.
    pub closed_as_printed: T,
}

/// Average energy of the Class-II family. The energy sum does not converge in the
/// ordinary sense (its terms decay like `m^{3/2 - γ/2}`), so both it and the
/// normalization are summed with the smooth cutoff mean.
pub fn class2_energy<T: Real>(x: T, gamma: T, argument: Class2Argument, terms: usize) -> Result<Class2Energy<T>> {
    if !(gamma > T::of(2.0)) {
        return Err(Error::domain("gamma > 2 (Class-II energy)", gamma));
    }
    if !(x > T::zero()) {
        return Err(Error::domain("x > 0", x));
    }
    let y = argument.apply(x);
    let w = class2_norm_terms(y, gamma, terms);
    let e: Vec<T> = w
        .iter()
        .enumerate()
        .map(|(m, &wm)| T::of(2.0) * (T::of(2.0) * T::of_usize(m) + gamma) * wm)
        .collect();
    let n_closed = class2_normalization_closed(y, gamma);
    Ok(Class2Energy {
        argument,
        terms,
        series: smooth_cutoff(&e) / smooth_cutoff(&w),
        closed: class2_energy_times_norm(y, gamma) / n_closed,
        closed_as_printed: class2_energy_times_norm_printed(x, gamma) / n_closed,
    })
}

/// `1F1(1; γ/2 + 1; J/4)`, or with the printed parameter `γ + 1`.
pub fn gk_normalization_closed<T: Real>(j: T, gamma: T, variant: Variant) -> Result<T> {
    let b = match variant {
        Variant::Corrected => gamma / T::of(2.0) + T::one(),
        Variant::AsPrinted => gamma + T::one(),
    };
    Ok(hyp1f1_one(b, j / T::of(4.0))?.value)
}

/// `e^{J/4}`, the square of `N(J) = e^{J/8}`.
pub fn shifted_gk_normalization_closed<T: Real>(j: T) -> T {
    (j / T::of(4.0)).exp()
}

/// `1F1(1; ω; J/c)`.
pub fn general_normalization_closed<T: Real>(j: T, c: T, omega: T) -> Result<T> {
    Ok(hyp1f1_one(omega, j / c)?.value)
}

/// `Γ(b) E_{a,b}(|z|²)`.
pub fn mittag_leffler_normalization_closed<T: Real>(z: Complex<T>, a: T, b: T) -> Result<T> {
    Ok(gamma(b) * mittag_leffler(a, b, z.norm_sqr())?.value)
}

/// Closed form of `<J2, α2 | J1, α1>` for the GK family, with `Δ = α1 - α2`:
/// `e^{-2iγΔ} 1F1(1; γ/2+1; e^{-4iΔ} sqrt(J1 J2)/4) / (N1 N2)`. The printed variant
/// puts `e^{-4iγΔ}` inside the argument.
pub fn gk_overlap_closed<T: Real>(j2: T, alpha2: T, j1: T, alpha1: T, gamma: T, variant: Variant) -> Result<Complex<T>> {
    let b = gamma / T::of(2.0) + T::one();
    let delta = alpha1 - alpha2;
    let inner_phase = match variant {
        Variant::Corrected => -T::of(4.0) * delta,
        Variant::AsPrinted => -T::of(4.0) * gamma * delta,
    };
    let z = Complex::from_polar((j1 * j2).sqrt() / T::of(4.0), inner_phase);
    let f = hyp1f1_one_complex(b, z)?.value;
    let n1 = gk_normalization_closed(j1, gamma, Variant::Corrected)?.sqrt();
    let n2 = gk_normalization_closed(j2, gamma, Variant::Corrected)?.sqrt();
    Ok(Complex::from_polar(T::one(), -T::of(2.0) * gamma * delta) * f / (n1 * n2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GkOverlap<T> {
    pub series: Complex<T>,
    pub closed: Complex<T>,
    pub closed_as_printed: Complex<T>,
    pub truncation: usize,
}

pub fn gk_overlap<T: Real>(j2: T, alpha2: T, j1: T, alpha1: T, gamma: T) -> Result<GkOverlap<T>> {
    let m1 = gk_state(j1, alpha1, gamma, Truncation::default())?.m;
    let m2 = gk_state(j2, alpha2, gamma, Truncation::default())?.m;
    let m = m1.max(m2);
    let s1 = gk_state(j1, alpha1, gamma, Truncation::Fixed { m })?;
    let s2 = gk_state(j2, alpha2, gamma, Truncation::Fixed { m })?;
    Ok(GkOverlap {
        series: overlap(&s2, &s1),
        closed: gk_overlap_closed(j2, alpha2, j1, alpha1, gamma, Variant::Corrected)?,
        closed_as_printed: gk_overlap_closed(j2, alpha2, j1, alpha1, gamma, Variant::AsPrinted)?,
        truncation: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionIdentity<T> {
    pub shifted: bool,
    /// `<H - e_0>` for the shifted family, `<H>` for the unshifted one.
    pub expectation: T,
    pub target: T,
    pub gap: T,
    pub truncation: usize,
}

pub fn action_identity_check<T: Real>(j: T, gamma: T, shifted: bool, truncation: Truncation) -> Result<ActionIdentity<T>> {
    let state = if shifted {
        shifted_gk_state(j, T::zero(), gamma, truncation)?
    } else {
        gk_state(j, T::zero(), gamma, truncation)?
    };
    let expectation = expected_energy(&state)?;
    Ok(ActionIdentity { shifted, expectation, target: j, gap: expectation - j, truncation: state.m })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct H2Energy<T> {
    /// `(1/N) Σ_{m>=0} |Φ_{m+1}|² / ρ(m)`.
    pub forward: T,
    /// `(1/N) Σ_{m>=1} y_m |Φ_m|² / ρ(m)` with `y_m = ρ(m)/ρ(m-1)`.
    pub reindexed: T,
    /// Last forward term below `1e-15` of the sum.
    pub converged: bool,
}

/// Energy of `H₂ = Σ y_m |φ_m><φ_m|` in a state with coefficients `Φ_m / sqrt(ρ(m) N)`,
/// computed in both index forms. `rho[0]` is the empty product and should be 1.
pub fn generic_h2_energy<T: Real>(phi_magnitudes: &[T], rho: &[T], norm: T) -> Result<H2Energy<T>> {
    let len = phi_magnitudes.len().min(rho.len());
    if rho[..len].iter().any(|r| !(*r > T::zero())) {
        return Err(Error::domain("rho > 0", "non-positive entry"));
    }
    let mut fwd = CompensatedSum::new();
    let mut re = CompensatedSum::new();
    let mut last = T::zero();
    for m in 0..len.saturating_sub(1) {
        let p = phi_magnitudes[m + 1];
        last = p * p / rho[m];
        fwd.add(last);
    }
    for m in 1..len {
        let y = rho[m] / rho[m - 1];
        let p = phi_magnitudes[m];
        re.add(y * p * p / rho[m]);
    }
    let forward = fwd.value() / norm;
    Ok(H2Energy {
        forward,
        reindexed: re.value() / norm,
        converged: last / norm <= T::of(1e-15) * forward.abs() || last == T::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn class1_closed_form_half_order_reduction() {
        // γ = 2 gives ν = 1/2 and N = e^{x²} x^{-2} sinh(x²/2) e^{-x²/2} / (x²/2)
        for x in [0.4_f64, 1.0, 2.5] {
            let y = x * x / 2.0;
            let expect = (x * x).exp() / (x * x) * y.sinh() * (-y).exp() / y;
            assert_relative_eq!(class1_normalization_closed(x, 2.0).unwrap(), expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn class1_closed_form_large_x_asymptote() {
        let (x, g) = (6.0_f64, 3.0);
        let asym = gamma(g) * (x * x).exp() * x.powf(-2.0 * (g - 1.0)) / (x * x);
        let n = class1_normalization_closed(x, g).unwrap();
        assert!((n / asym - 1.0).abs() < 0.2);
    }

    #[test]
    fn class1_richardson_beats_raw() {
        let expect = class1_normalization_closed(0.8_f64, 3.0).unwrap();
        let s = class1_norm_sums(0.8, 3.0, 50_000);
        assert!(((s.raw - expect) / expect).abs() > 1e-3);
        assert!(((s.richardson - expect) / expect).abs() < 1e-3);
    }

    #[test]
    fn class2_exact_closed_form() {
        use num_rational::BigRational;
        let x = BigRational::new(2.into(), 1.into());
        let g = BigRational::new(3.into(), 1.into());
        assert_eq!(class2_normalization_exact(&x, &g), BigRational::new(3.into(), 2.into()));
        assert_relative_eq!(class2_normalization_closed(2.0_f64, 3.0), 1.5);
    }

    #[test]
    fn buchholz_nu_zero_is_trivial() {
        let t = buchholz_terms(0, 4.0_f64, 2.0, 50).unwrap();
        assert_eq!(t[0], 1.0);
        assert!(t[1..].iter().all(|v| *v == 0.0));
        assert!(buchholz_terms(-3, 1.5_f64, 1.0, 10).is_err());
    }

    #[test]
    fn buchholz_first_coefficients() {
        // ν = -2, γ = 4: c_n = (n+1)/(γ(γ-1))
        let t = buchholz_terms(-2, 4.0_f64, 0.0001, 3).unwrap();
        assert_relative_eq!(t[0], 1.0 / 12.0, max_relative = 1e-15);
        assert_relative_eq!(t[1], 2.0 / 12.0 * (1.0 - 0.0001 / 5.0), max_relative = 1e-15);
    }

    #[test]
    fn energy_factorization_and_hand_value() {
        for x in [0.3_f64, 1.0, 1.7] {
            let x2 = x * x;
            assert_relative_eq!(
                class2_energy_times_norm_printed(x, 4.0),
                class2_energy_times_norm(x2, 4.0),
                max_relative = 1e-14
            );
        }
        assert_relative_eq!(class2_energy_times_norm(1.0_f64, 4.0), 96.0);
        assert_relative_eq!(class2_normalization_closed(1.0_f64, 4.0), 6.0);
    }

    #[test]
    fn h2_forms_for_canonical_states() {
        let z2 = 1.7_f64;
        let n = 60;
        let mags: Vec<f64> = (0..n).map(|m| z2.sqrt().powi(m as i32)).collect();
        let mut rho = vec![1.0_f64];
        for m in 1..n {
            rho.push(rho[m - 1] * m as f64);
        }
        let e = generic_h2_energy(&mags, &rho, z2.exp()).unwrap();
        assert_relative_eq!(e.forward, z2, max_relative = 1e-13);
        assert_relative_eq!(e.reindexed, z2, max_relative = 1e-13);
        assert!(e.converged);
        let only_ground = generic_h2_energy(&[1.0, 0.0, 0.0], &[1.0, 2.0, 6.0], 1.0).unwrap();
        assert_eq!(only_ground.forward, 0.0);
        assert_eq!(only_ground.reindexed, 0.0);
    }
}
