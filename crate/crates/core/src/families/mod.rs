//! Coherent-state families over the isotonic eigenbasis (and the generic Mittag-Leffler
//! and linear-spectrum variants), their normalizations, densities and derived
//! quantities.

mod closed;
mod density;
mod stream;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isotonic::Spectrum;
use crate::scalar::{CompensatedSum, Real};
use stream::RawStream;

pub use closed::*;
pub use density::{
    class1_density, class2_density, general_density, gk_density, ml_weight, DensityKind, MeasureDensity, Moment, MomentMethod,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    ClassI,
    ClassII,
    GkIsotonic,
    GkShifted,
    GeneralSpectrum,
    MittagLeffler,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::ClassI,
        Family::ClassII,
        Family::GkIsotonic,
        Family::GkShifted,
        Family::GeneralSpectrum,
        Family::MittagLeffler,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::ClassI => "class1",
            Family::ClassII => "class2",
            Family::GkIsotonic => "gk",
            Family::GkShifted => "gk-shifted",
            Family::GeneralSpectrum => "general",
            Family::MittagLeffler => "mittag-leffler",
        }
    }

    /// Whether `evolve` maps the family onto itself with a shifted angle.
    pub fn temporally_stable(&self) -> bool {
        matches!(self, Family::GkIsotonic | Family::GkShifted | Family::GeneralSpectrum)
    }
}

/// Which constant to use where the printed formula and its own derivation disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Corrected,
    AsPrinted,
}

/// Sign of the angle phase in the linear-spectrum family. `Printed` is
/// `e^{+i(cm+d)α}`; `Conjugate` is `e^{-i(cm+d)α}`, the convention of the isotonic GK
/// family, under which `c = 4, d = 2γ` reproduces it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseSign {
    #[default]
    Printed,
    Conjugate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CsLabel<T> {
    Point { x: T, theta: T, gamma: T },
    ActionAngle { j: T, alpha: T, gamma: T },
    GeneralSpectrum { j: T, alpha: T, c: T, d: T, omega: T, phase: PhaseSign },
    MittagLeffler { z: Complex<T>, a: T, b: T },
}

impl<T: Real> CsLabel<T> {
    pub fn general(j: T, alpha: T, c: T, d: T, phase: PhaseSign) -> Result<Self> {
        if !(c > T::zero()) {
            return Err(Error::domain("c > 0", c));
        }
        if !(d > T::zero()) {
            return Err(Error::domain("d > 0", d));
        }
        Ok(CsLabel::GeneralSpectrum { j, alpha, c, d, omega: T::one() + d / c, phase })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Truncation {
    Fixed { m: usize },
    /// Stop once three consecutive `|Φ_m|²` fall below `1e-16` of the running norm.
    Adaptive { max: usize },
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Adaptive { max: 100_000 }
    }
}

/// Relative size of the last included term below which a fixed truncation counts as
/// converged.
pub const FIXED_CONVERGENCE: f64 = 1e-12;
/// Relative size of a term below which adaptive truncation stops.
pub const ADAPTIVE_CUTOFF: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedState<T> {
    pub family: Family,
    pub label: CsLabel<T>,
    /// Truncation order: `coeffs` has `m + 1` entries.
    pub m: usize,
    pub coeffs: Vec<Complex<T>>,
    /// Series normalization over the truncation window. For Class-II this is the signed
    /// sum `Σ (γ+m) 1F1(-m; γ+1; x) / γ`.
    pub norm_series: T,
    pub norm_closed: Option<T>,
    /// False when some Class-II radicand is negative; always true for other families.
    pub positivity_ok: bool,
    pub converged: bool,
    pub spectrum: Option<Spectrum<T>>,
    /// Accumulated evolution time.
    pub time: T,
    pub warnings: Vec<String>,
}

impl<T: Real> TruncatedState<T> {
    pub fn norm_squared(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect::<CompensatedSum<T>>().value()
    }
}

fn check_label<T: Real>(family: Family, label: &CsLabel<T>) -> Result<()> {
    match (family, label) {
        (Family::ClassI, CsLabel::Point { x, gamma, .. }) => {
            if !(*gamma > T::of(2.0)) {
                return Err(Error::domain("gamma > 2 (Class-I)", gamma));
            }
            if !(*x >= T::zero()) {
                return Err(Error::domain("x >= 0 (Class-I)", x));
            }
        }
        (Family::ClassII, CsLabel::Point { x, gamma, .. }) => {
            if !(*gamma > T::one()) {
                return Err(Error::domain("gamma > 1 (Class-II)", gamma));
            }
            if !(*x > T::zero()) {
                return Err(Error::domain("x > 0 (Class-II)", x));
            }
        }
        (Family::GkIsotonic | Family::GkShifted, CsLabel::ActionAngle { j, gamma, .. }) => {
            if !(*gamma > T::zero()) {
                return Err(Error::domain("gamma > 0 (GK)", gamma));
            }
            if !(*j >= T::zero()) {
                return Err(Error::domain("J >= 0", j));
            }
        }
        (Family::GeneralSpectrum, CsLabel::GeneralSpectrum { j, c, d, .. }) => {
            if !(*c > T::zero()) {
                return Err(Error::domain("c > 0", c));
            }
            if !(*d > T::zero()) {
                return Err(Error::domain("d > 0", d));
            }
            if !(*j >= T::zero()) {
                return Err(Error::domain("J >= 0", j));
            }
        }
        (Family::MittagLeffler, CsLabel::MittagLeffler { a, b, .. }) => {
            if !(*a > T::zero()) {
                return Err(Error::domain("a > 0", a));
            }
            if !(*b > T::zero()) {
                return Err(Error::domain("b > 0", b));
            }
        }
        _ => {
            return Err(Error::Unsupported(format!("label kind does not match family {}", family.name())));
        }
    }
    Ok(())
}

fn spectrum_of<T: Real>(family: Family, label: &CsLabel<T>) -> Option<Spectrum<T>> {
    match (family, label) {
        (Family::ClassI | Family::ClassII, CsLabel::Point { gamma, .. }) => Some(Spectrum::Isotonic { gamma: *gamma }),
        (Family::GkIsotonic, CsLabel::ActionAngle { gamma, .. }) => Some(Spectrum::Isotonic { gamma: *gamma }),
        (Family::GkShifted, _) => Some(Spectrum::Shifted),
        (Family::GeneralSpectrum, CsLabel::GeneralSpectrum { c, d, .. }) => Some(Spectrum::Linear { c: *c, d: *d }),
        _ => None,
    }
}

/// Unnormalized coefficients `Φ_0..Φ_M` of a family, and the per-term contributions to
/// its normalization (signed for Class-II).
#[derive(Debug, Clone, PartialEq)]
pub struct RawCoefficients<T> {
    pub phi: Vec<Complex<T>>,
    pub norm_terms: Vec<T>,
    pub converged: bool,
    pub positivity_ok: bool,
}

pub fn raw_coefficients<T: Real>(family: Family, label: &CsLabel<T>, truncation: Truncation) -> Result<RawCoefficients<T>> {
    check_label(family, label)?;
    let mut stream = RawStream::new(family, label)?;
    let mut phi = Vec::new();
    let mut norm_terms = Vec::new();
    let mut running = CompensatedSum::new();
    let mut abs_running = T::zero();
    let mut positivity_ok = true;
    let mut small_run = 0;
    let converged;
    loop {
        let (p, w) = stream.next_term();
        if w < T::zero() {
            positivity_ok = false;
        }
        let mag = p.norm_sqr();
        phi.push(p);
        norm_terms.push(w);
        running.add(w);
        abs_running += mag;
        let m = phi.len() - 1;
        match truncation {
            Truncation::Fixed { m: limit } => {
                if m == limit {
                    converged = mag <= T::of(FIXED_CONVERGENCE) * abs_running;
                    break;
                }
            }
            Truncation::Adaptive { max } => {
                if mag < T::of(ADAPTIVE_CUTOFF) * abs_running {
                    small_run += 1;
                } else {
                    small_run = 0;
                }
                if small_run >= 3 {
                    converged = true;
                    break;
                }
                if m >= max {
                    converged = false;
                    break;
                }
            }
        }
    }
    Ok(RawCoefficients { phi, norm_terms, converged, positivity_ok })
}

/// Closed-form normalization `Σ |Φ_m|²` (signed for Class-II), where one is known.
pub fn normalization_closed<T: Real>(family: Family, label: &CsLabel<T>, variant: Variant) -> Result<Option<T>> {
    check_label(family, label)?;
    Ok(match (family, *label) {
        (Family::ClassI, CsLabel::Point { x, gamma, .. }) => {
            if x > T::zero() {
                Some(class1_normalization_closed(x, gamma)?)
            } else {
                None
            }
        }
        (Family::ClassII, CsLabel::Point { x, gamma, .. }) => Some(class2_normalization_closed(x, gamma)),
        (Family::GkIsotonic, CsLabel::ActionAngle { j, gamma, .. }) => Some(gk_normalization_closed(j, gamma, variant)?),
        (Family::GkShifted, CsLabel::ActionAngle { j, .. }) => Some(shifted_gk_normalization_closed(j)),
        (Family::GeneralSpectrum, CsLabel::GeneralSpectrum { j, c, omega, .. }) => {
            Some(general_normalization_closed(j, c, omega)?)
        }
        (Family::MittagLeffler, CsLabel::MittagLeffler { z, a, b }) => Some(mittag_leffler_normalization_closed(z, a, b)?),
        _ => None,
    })
}

/// Builds the normalized truncated state `Φ_m / sqrt(N_series)`.
pub fn build_state<T: Real>(family: Family, label: CsLabel<T>, truncation: Truncation) -> Result<TruncatedState<T>> {
    let raw = raw_coefficients(family, &label, truncation)?;
    let norm_series = raw.norm_terms.iter().copied().collect::<CompensatedSum<T>>().value();
    if !(norm_series > T::zero()) {
        return Err(Error::Unsupported(format!("{} normalization sum is not positive", family.name())));
    }
    let scale = T::one() / norm_series.sqrt();
    let coeffs: Vec<Complex<T>> = raw.phi.iter().map(|p| p * scale).collect();
    let m = coeffs.len() - 1;
    let mut warnings = Vec::new();
    if !raw.converged {
        let last = (raw.phi[m].norm_sqr() / norm_series).to_f64_lossy();
        warnings.push(format!("truncation not converged at M = {m}: last term / partial sum = {last:e}"));
    }
    if !raw.positivity_ok {
        warnings.push(
            "negative radicand: principal square roots used, so sum |c_m|^2 differs from 1 while the signed normalization holds"
                .to_string(),
        );
    }
    Ok(TruncatedState {
        family,
        label,
        m,
        coeffs,
        norm_series,
        norm_closed: normalization_closed(family, &label, Variant::Corrected)?,
        positivity_ok: raw.positivity_ok,
        converged: raw.converged,
        spectrum: spectrum_of(family, &label),
        time: T::zero(),
        warnings,
    })
}

pub fn class1_state<T: Real>(x: T, theta: T, gamma: T, truncation: Truncation) -> Result<TruncatedState<T>> {
    build_state(Family::ClassI, CsLabel::Point { x, theta, gamma }, truncation)
}

pub fn class2_state<T: Real>(x: T, theta: T, gamma: T, truncation: Truncation) -> Result<TruncatedState<T>> {
    build_state(Family::ClassII, CsLabel::Point { x, theta, gamma }, truncation)
}

pub fn gk_state<T: Real>(j: T, alpha: T, gamma: T, truncation: Truncation) -> Result<TruncatedState<T>> {
    build_state(Family::GkIsotonic, CsLabel::ActionAngle { j, alpha, gamma }, truncation)
}

pub fn shifted_gk_state<T: Real>(j: T, alpha: T, gamma: T, truncation: Truncation) -> Result<TruncatedState<T>> {
    build_state(Family::GkShifted, CsLabel::ActionAngle { j, alpha, gamma }, truncation)
}

pub fn general_spectrum_state<T: Real>(
    j: T,
    alpha: T,
    c: T,
    d: T,
    phase: PhaseSign,
    truncation: Truncation,
) -> Result<TruncatedState<T>> {
    build_state(Family::GeneralSpectrum, CsLabel::general(j, alpha, c, d, phase)?, truncation)
}

pub fn mittag_leffler_state<T: Real>(z: Complex<T>, a: T, b: T, truncation: Truncation) -> Result<TruncatedState<T>> {
    build_state(Family::MittagLeffler, CsLabel::MittagLeffler { z, a, b }, truncation)
}

/// `e^{-iHt}`: coefficient `m` picks up `e^{-i E_m t}` from the family's spectrum.
pub fn evolve<T: Real>(state: &TruncatedState<T>, t: T) -> Result<TruncatedState<T>> {
    let spectrum = state
        .spectrum
        .ok_or_else(|| Error::Unsupported(format!("{} states carry no spectrum", state.family.name())))?;
    let mut out = state.clone();
    for (m, c) in out.coeffs.iter_mut().enumerate() {
        *c *= Complex::from_polar(T::one(), -spectrum.energy(m) * t);
    }
    out.time = state.time + t;
    Ok(out)
}

/// Label whose state equals `evolve(state(label), t)` for temporally stable families.
pub fn relabel_after<T: Real>(family: Family, label: &CsLabel<T>, t: T) -> Option<CsLabel<T>> {
    match (family, *label) {
        (Family::GkIsotonic | Family::GkShifted, CsLabel::ActionAngle { j, alpha, gamma }) => {
            Some(CsLabel::ActionAngle { j, alpha: alpha + t, gamma })
        }
        (Family::GeneralSpectrum, CsLabel::GeneralSpectrum { j, alpha, c, d, omega, phase }) => {
            let alpha = match phase {
                PhaseSign::Printed => alpha - t,
                PhaseSign::Conjugate => alpha + t,
            };
            Some(CsLabel::GeneralSpectrum { j, alpha, c, d, omega, phase })
        }
        _ => None,
    }
}

pub fn probability<T: Real>(state: &TruncatedState<T>, m: usize) -> T {
    state.coeffs.get(m).map(|c| c.norm_sqr()).unwrap_or_else(T::zero)
}

/// `Σ E_m |c_m|²` with the family's spectrum.
pub fn expected_energy<T: Real>(state: &TruncatedState<T>) -> Result<T> {
    let spectrum = state
        .spectrum
        .ok_or_else(|| Error::Unsupported(format!("{} states carry no spectrum", state.family.name())))?;
    Ok(state
        .coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| spectrum.energy(m) * c.norm_sqr())
        .collect::<CompensatedSum<T>>()
        .value())
}

/// `<a|b> = Σ conj(a_m) b_m` over the common truncation window.
pub fn overlap<T: Real>(a: &TruncatedState<T>, b: &TruncatedState<T>) -> Complex<T> {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        let p = x.conj() * y;
        re.add(p.re);
        im.add(p.im);
    }
    Complex::new(re.value(), im.value())
}

/// `K(l1, l2) = Σ_{m<=M} conj(Φ_m(l1)) Φ_m(l2)` with unnormalized coefficients.
pub fn reproducing_kernel<T: Real>(family: Family, l1: &CsLabel<T>, l2: &CsLabel<T>, m: usize) -> Result<Complex<T>> {
    let a = raw_coefficients(family, l1, Truncation::Fixed { m })?;
    let b = raw_coefficients(family, l2, Truncation::Fixed { m })?;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for (x, y) in a.phi.iter().zip(&b.phi) {
        let p = x.conj() * y;
        re.add(p.re);
        im.add(p.im);
    }
    Ok(Complex::new(re.value(), im.value()))
}
