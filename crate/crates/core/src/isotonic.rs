//! Eigenbasis of the isotonic oscillator `H = -d²/dx² + x² + A/x²` on the half-line.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_gen_laguerre, QuadratureRule};
use crate::scalar::Real;
use crate::specfun::{hyp1f1_neg_int_sequence, hyp1f1_terminating, ln_gamma, ln_pochhammer};

/// Coupling `A >= 0` and the derived `γ = 1 + ½√(1 + 4A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorParams<T> {
    coupling: T,
    gamma: T,
}

impl<T: Real> OscillatorParams<T> {
    pub fn from_coupling(a: T) -> Result<Self> {
        if !(a >= T::zero()) {
            return Err(Error::domain("A >= 0", a));
        }
        let gamma = T::one() + T::of(0.5) * (T::one() + T::of(4.0) * a).sqrt();
        Ok(Self { coupling: a, gamma })
    }

    pub fn from_gamma(gamma: T) -> Result<Self> {
        if !(gamma >= T::of(1.5)) {
            return Err(Error::domain("gamma >= 3/2", gamma));
        }
        let g1 = gamma - T::one();
        Ok(Self { coupling: g1 * g1 - T::of(0.25), gamma })
    }

    pub fn coupling(&self) -> T {
        self.coupling
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }
}

/// Quantum number `m >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex(pub usize);

/// Energy levels attached to a coherent-state family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Spectrum<T> {
    /// `e_m = 2(2m + γ)`.
    Isotonic { gamma: T },
    /// `ε_m = e_m - e_0 = 4m`.
    Shifted,
    /// `x_m = c m + d`.
    Linear { c: T, d: T },
}

impl<T: Real> Spectrum<T> {
    pub fn energy(&self, m: usize) -> T {
        let mf = T::of_usize(m);
        match *self {
            Spectrum::Isotonic { gamma } => T::of(2.0) * (T::of(2.0) * mf + gamma),
            Spectrum::Shifted => T::of(4.0) * mf,
            Spectrum::Linear { c, d } => c * mf + d,
        }
    }
}

pub fn eigenvalue<T: Real>(m: BasisIndex, p: &OscillatorParams<T>) -> T {
    Spectrum::Isotonic { gamma: p.gamma }.energy(m.0)
}

/// `ln sqrt(2 (γ)_m / (m! Γ(γ)))`.
fn ln_norm<T: Real>(m: usize, gamma: T) -> T {
    T::of(0.5)
        * (T::of(2.0).ln() + ln_pochhammer(gamma, m) - ln_gamma(T::of_usize(m) + T::one()) - ln_gamma(gamma))
}

fn parity<T: Real>(m: usize) -> T {
    if m % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `ψ_m(x) = (-1)^m sqrt(2 (γ)_m / (m! Γ(γ))) x^{γ-1/2} e^{-x²/2} 1F1(-m; γ; x²)`.
pub fn wavefunction<T: Real>(m: BasisIndex, p: &OscillatorParams<T>, x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain("x > 0", x));
    }
    let g = p.gamma;
    let f = hyp1f1_terminating(m.0, g, x * x)?.value;
    let log_env = ln_norm(m.0, g) + (g - T::of(0.5)) * x.ln() - x * x / T::of(2.0);
    Ok(parity::<T>(m.0) * log_env.exp() * f)
}

/// `[ψ_0(x), ..., ψ_{m_max}(x)]` from the degree recurrence.
pub fn wavefunctions<T: Real>(m_max: usize, p: &OscillatorParams<T>, x: T) -> Result<Vec<T>> {
    if !(x > T::zero()) {
        return Err(Error::domain("x > 0", x));
    }
    let g = p.gamma;
    let seq = hyp1f1_neg_int_sequence(m_max, g, x * x)?;
    let base = (g - T::of(0.5)) * x.ln() - x * x / T::of(2.0);
    Ok(seq
        .iter()
        .enumerate()
        .map(|(m, &f)| parity::<T>(m) * (ln_norm(m, g) + base).exp() * f)
        .collect())
}

/// Default rule for [`gram_matrix`]: generalized Laguerre with `α = γ - 1`, order `M + 2`.
pub fn gram_rule<T: Real>(p: &OscillatorParams<T>, m_max: usize) -> Result<QuadratureRule<T>> {
    gauss_gen_laguerre(m_max + 2, p.gamma - T::one())
}

/// `G_{mn} = ∫ ψ_m ψ_n dx` for `m, n <= m_max`.
///
/// After `t = x²` the integrand is `c_m c_n t^{γ-1} e^{-t} F_m(t) F_n(t)` with
/// `c_m² = (γ)_m / (m! Γ(γ))`, so an `α = γ - 1` Laguerre rule exact to degree `2M`
/// evaluates every entry exactly up to rounding.
pub fn gram_matrix<T: Real>(p: &OscillatorParams<T>, m_max: usize, rule: &QuadratureRule<T>) -> Result<Vec<Vec<T>>> {
    let g = p.gamma;
    rule.require_laguerre(g - T::one(), 2 * m_max)?;
    let table: Vec<Vec<T>> = rule
        .nodes()
        .iter()
        .map(|&t| hyp1f1_neg_int_sequence(m_max, g, t))
        .collect::<Result<_>>()?;
    let scale: Vec<T> = (0..=m_max)
        .map(|m| {
            let ln_c = T::of(0.5) * (ln_pochhammer(g, m) - ln_gamma(T::of_usize(m) + T::one()) - ln_gamma(g));
            parity::<T>(m) * ln_c.exp()
        })
        .collect();
    let weights = rule.weights();
    Ok((0..=m_max)
        .into_par_iter()
        .map(|m| {
            (0..=m_max)
                .map(|n| {
                    let s = table
                        .iter()
                        .zip(weights)
                        .map(|(f, &w)| w * f[m] * f[n])
                        .collect::<crate::scalar::CompensatedSum<T>>()
                        .value();
                    scale[m] * scale[n] * s
                })
                .collect()
        })
        .collect())
}

pub fn max_deviation_from_identity<T: Real>(g: &[Vec<T>]) -> T {
    let mut worst = T::zero();
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// Uniform grid `x_j = j h`, `j = 1..=round(L/h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdGrid<T> {
    pub length: T,
    pub h: T,
}

/// Number of grid spacings next to the origin left out of the residual.
pub const ORIGIN_LAYER: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdResidual<T> {
    /// `||H ψ_m - e_m ψ_m|| / ||ψ_m||` over the retained points.
    pub residual: T,
    pub points_used: usize,
    pub points_skipped: usize,
    pub warning: Option<String>,
}

/// Applies `H` with the central second difference and measures the eigen-residual.
pub fn apply_hamiltonian_fd<T: Real>(m: BasisIndex, p: &OscillatorParams<T>, grid: FdGrid<T>) -> Result<FdResidual<T>> {
    let FdGrid { length, h } = grid;
    if !(length > T::zero()) {
        return Err(Error::domain("L > 0", length));
    }
    if !(h > T::zero() && h <= T::of(1e-3) * length) {
        return Err(Error::domain("0 < h <= 1e-3 L", h));
    }
    let n = (length / h).round().to_usize().unwrap_or(0);
    let psi: Vec<T> = (1..=n + 1).map(|j| wavefunction(m, p, T::of_usize(j) * h)).collect::<Result<_>>()?;
    let e = eigenvalue(m, p);
    let a = p.coupling;
    let h2 = h * h;
    let mut num = crate::scalar::CompensatedSum::new();
    let mut den = crate::scalar::CompensatedSum::new();
    let mut used = 0;
    // psi[i] sits at x = (i + 1) h; interior points need both neighbours.
    for i in ORIGIN_LAYER - 1..n - 1 {
        let x = T::of_usize(i + 1) * h;
        let lap = (psi[i + 1] - T::of(2.0) * psi[i] + psi[i - 1]) / h2;
        let r = -lap + (x * x + a / (x * x)) * psi[i] - e * psi[i];
        num.add(r * r);
        den.add(psi[i] * psi[i]);
        used += 1;
    }
    let warning = Some(format!(
        "A/x^2 singular at the origin: the first {} grid points (x < {}h) are excluded",
        ORIGIN_LAYER - 1,
        ORIGIN_LAYER
    ));
    Ok(FdResidual { residual: (num.value() / den.value()).sqrt(), points_used: used, points_skipped: ORIGIN_LAYER - 1, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;
    use approx::assert_relative_eq;

    #[test]
    fn params_round_trip() {
        for a in [0.0_f64, 0.3, 2.0, 17.25] {
            let p = OscillatorParams::from_coupling(a).unwrap();
            let q = OscillatorParams::from_gamma(p.gamma()).unwrap();
            assert!((q.coupling() - a).abs() <= 1e-14 * a.max(1.0));
            assert!(p.gamma() >= 1.5);
        }
        assert!(OscillatorParams::from_coupling(-0.1).is_err());
    }

    #[test]
    fn eigenvalues_are_linear() {
        let p = OscillatorParams::from_gamma(2.5).unwrap();
        let e: Vec<f64> = (0..3).map(|m| eigenvalue(BasisIndex(m), &p)).collect();
        assert_eq!(e, vec![5.0, 9.0, 13.0]);
    }

    #[test]
    fn hand_evaluated_values() {
        let p = OscillatorParams::from_gamma(3.0).unwrap();
        let v = wavefunction(BasisIndex(1), &p, 1.0).unwrap();
        assert_relative_eq!(v, -(3.0_f64).sqrt() * (-0.5_f64).exp() * (2.0 / 3.0), max_relative = 1e-14);
        let p = OscillatorParams::from_gamma(2.5).unwrap();
        let x = 0.7_f64;
        let v = wavefunction(BasisIndex(0), &p, x).unwrap();
        assert_relative_eq!(v, (2.0 / gamma(2.5_f64)).sqrt() * x * x * (-x * x / 2.0).exp(), max_relative = 1e-14);
    }

    #[test]
    fn vanishes_at_both_ends() {
        let p = OscillatorParams::from_gamma(1.75_f64).unwrap();
        for m in 0..6 {
            assert!(wavefunction(BasisIndex(m), &p, 1e-8).unwrap().abs() < 1e-8);
            assert!(wavefunction(BasisIndex(m), &p, 30.0).unwrap().abs() < 1e-100);
        }
        assert!(wavefunction(BasisIndex(0), &p, 0.0).is_err());
    }

    #[test]
    fn sequence_matches_single_evaluation() {
        let p = OscillatorParams::from_gamma(3.5).unwrap();
        let all = wavefunctions(12, &p, 1.3).unwrap();
        for (m, v) in all.iter().enumerate() {
            assert_relative_eq!(*v, wavefunction(BasisIndex(m), &p, 1.3).unwrap(), max_relative = 1e-10, epsilon = 1e-14);
        }
    }

    #[test]
    fn gram_is_identity() {
        for g in [1.75_f64, 2.5, 3.5, 4.7] {
            let p = OscillatorParams::from_gamma(g).unwrap();
            let rule = gram_rule(&p, 20).unwrap();
            let gm = gram_matrix(&p, 20, &rule).unwrap();
            assert!(max_deviation_from_identity(&gm) <= 1e-10, "gamma {g}");
        }
        let p = OscillatorParams::from_gamma(2.5).unwrap();
        let gm = gram_matrix(&p, 0, &gram_rule(&p, 0).unwrap()).unwrap();
        assert_relative_eq!(gm[0][0], 1.0, max_relative = 1e-14);
    }

    #[test]
    fn gram_rejects_small_rule() {
        let p = OscillatorParams::from_gamma(2.5).unwrap();
        let rule = gauss_gen_laguerre(5, 1.5).unwrap();
        assert!(matches!(gram_matrix(&p, 15, &rule), Err(Error::RuleTooSmall(_))));
        let wrong_alpha = gauss_gen_laguerre(20, 0.0).unwrap();
        assert!(gram_matrix(&p, 5, &wrong_alpha).is_err());
    }

    #[test]
    fn fd_residual_is_second_order() {
        let p = OscillatorParams::from_gamma(2.5).unwrap();
        let coarse = apply_hamiltonian_fd(BasisIndex(3), &p, FdGrid { length: 10.0, h: 2e-3 }).unwrap();
        let fine = apply_hamiltonian_fd(BasisIndex(3), &p, FdGrid { length: 10.0, h: 1e-3 }).unwrap();
        assert!(fine.residual < 1e-3);
        let ratio: f64 = coarse.residual / fine.residual;
        assert!((ratio - 4.0).abs() < 0.5, "ratio {ratio}");
        assert!(fine.warning.is_some());
    }
}
