//! Sequential generation of unnormalized coefficients.

use num_complex::Complex;

use super::{CsLabel, Family, PhaseSign};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_gamma;

/// `1F1(-n; b; y)` for `n = 0, 1, 2, ...` from the contiguous relation.
#[derive(Debug, Clone)]
pub(crate) struct NegIntSeq<T> {
    b: T,
    y: T,
    n: usize,
    prev: T,
    cur: T,
}

impl<T: Real> NegIntSeq<T> {
    pub(crate) fn new(b: T, y: T) -> Self {
        Self { b, y, n: 0, prev: T::zero(), cur: T::one() }
    }
}

impl<T: Real> Iterator for NegIntSeq<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let out = self.cur;
        let n = T::of_usize(self.n);
        let next = if self.n == 0 {
            T::one() - self.y / self.b
        } else {
            ((T::of(2.0) * n + self.b - self.y) * self.cur - n * self.prev) / (self.b + n)
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        Some(out)
    }
}

pub(crate) enum RawStream<T> {
    ClassI { gamma: T, theta: T, ratio: T, seq: NegIntSeq<T>, m: usize },
    ClassII { gamma: T, theta: T, seq: NegIntSeq<T>, m: usize },
    /// `|Φ_m|² = q^m / Π_{k<m} (shift + k)`, phase `e^{i (slope m + offset)}`.
    Geometric { q: T, shift: Option<T>, slope: T, offset: T, t: T, m: usize },
    MittagLeffler { r2: T, ln_r2: T, arg: T, a: T, b: T, integer_a: Option<usize>, t: T, ln_gb: T, m: usize },
}

impl<T: Real> RawStream<T> {
    pub(crate) fn new(family: Family, label: &CsLabel<T>) -> Result<Self> {
        Ok(match (family, *label) {
            (Family::ClassI, CsLabel::Point { x, theta, gamma }) => {
                RawStream::ClassI { gamma, theta, ratio: T::one(), seq: NegIntSeq::new(gamma, x * x), m: 0 }
            }
            (Family::ClassII, CsLabel::Point { x, theta, gamma }) => {
                RawStream::ClassII { gamma, theta, seq: NegIntSeq::new(gamma + T::one(), x), m: 0 }
            }
            (Family::GkIsotonic, CsLabel::ActionAngle { j, alpha, gamma }) => RawStream::Geometric {
                q: j / T::of(4.0),
                shift: Some(gamma / T::of(2.0) + T::one()),
                slope: -T::of(4.0) * alpha,
                offset: -T::of(2.0) * gamma * alpha,
                t: T::one(),
                m: 0,
            },
            (Family::GkShifted, CsLabel::ActionAngle { j, alpha, .. }) => RawStream::Geometric {
                q: j / T::of(4.0),
                shift: None,
                slope: -T::of(4.0) * alpha,
                offset: T::zero(),
                t: T::one(),
                m: 0,
            },
            (Family::GeneralSpectrum, CsLabel::GeneralSpectrum { j, alpha, c, d, omega, phase }) => {
                let s = match phase {
                    PhaseSign::Printed => T::one(),
                    PhaseSign::Conjugate => -T::one(),
                };
                RawStream::Geometric { q: j / c, shift: Some(omega), slope: s * c * alpha, offset: s * d * alpha, t: T::one(), m: 0 }
            }
            (Family::MittagLeffler, CsLabel::MittagLeffler { z, a, b }) => {
                let integer_a = if a == a.round() && a <= T::of(64.0) { a.to_usize() } else { None };
                let r2 = z.norm_sqr();
                RawStream::MittagLeffler {
                    r2,
                    ln_r2: r2.ln(),
                    arg: if r2 > T::zero() { z.arg() } else { T::zero() },
                    a,
                    b,
                    integer_a,
                    t: T::one(),
                    ln_gb: ln_gamma(b),
                    m: 0,
                }
            }
            _ => return Err(Error::Unsupported(format!("label kind does not match family {}", family.name()))),
        })
    }

    /// Next `(Φ_m, norm contribution)`.
    pub(crate) fn next_term(&mut self) -> (Complex<T>, T) {
        match self {
            RawStream::ClassI { gamma, theta, ratio, seq, m } => {
                let mf = T::of_usize(*m);
                if *m > 0 {
                    *ratio = *ratio * (*gamma + mf - T::one()) / mf;
                }
                let f = seq.next().unwrap_or_else(T::zero);
                let amp = (*ratio / (*gamma / T::of(2.0) + mf)).sqrt() * f;
                *m += 1;
                (Complex::from_polar(amp, mf * *theta), amp * amp)
            }
            RawStream::ClassII { gamma, theta, seq, m } => {
                let mf = T::of_usize(*m);
                let f = seq.next().unwrap_or_else(T::zero);
                let w = (*gamma + mf) * f / *gamma;
                let root = Complex::new(w, T::zero()).sqrt();
                *m += 1;
                (root * Complex::from_polar(T::one(), mf * *theta), w)
            }
            RawStream::Geometric { q, shift, slope, offset, t, m } => {
                let mf = T::of_usize(*m);
                if *m > 0 {
                    let denom = match shift {
                        Some(s) => *s + mf - T::one(),
                        None => mf,
                    };
                    *t = *t * *q / denom;
                }
                *m += 1;
                (Complex::from_polar(t.sqrt(), *slope * mf + *offset), *t)
            }
            RawStream::MittagLeffler { r2, ln_r2, arg, a, b, integer_a, t, ln_gb, m } => {
                let mf = T::of_usize(*m);
                if *m == 0 {
                    *t = T::one();
                } else if let Some(k) = integer_a {
                    let base = *a * (mf - T::one()) + *b;
                    let mut denom = T::one();
                    for i in 0..*k {
                        denom *= base + T::of_usize(i);
                    }
                    *t = *t * *r2 / denom;
                } else {
                    *t = (mf * *ln_r2 + *ln_gb - ln_gamma(*a * mf + *b)).exp();
                }
                *m += 1;
                (Complex::from_polar(t.sqrt(), mf * *arg), *t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp1f1_neg_int_sequence;

    #[test]
    fn sequence_iterator_matches_vector() {
        let v = hyp1f1_neg_int_sequence(40, 3.5_f64, 7.25).unwrap();
        let s: Vec<f64> = NegIntSeq::new(3.5, 7.25).take(41).collect();
        assert_eq!(v, s);
    }
}
