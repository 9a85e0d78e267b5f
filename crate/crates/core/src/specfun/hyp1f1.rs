//! Confluent hypergeometric `1F1` with a nonpositive-integer or unit upper parameter,
//! and `2F1(-m, 1; b; 1)`.

use num_complex::Complex;
use serde::Serialize;

use super::series::{SeriesResult, TERM_CAP};
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Field, Real};

/// Cancellation threshold: a terminating sum is flagged when its largest term exceeds
/// this multiple of the result.
pub const CANCELLATION_RATIO: f64 = 1e8;

/// Largest term-to-sum ratio at which the series result is kept; beyond it the
/// degree recurrence is used. Series error grows like `ratio * m * eps`.
pub const RECURRENCE_RATIO: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminatingMethod {
    Series,
    /// Upward contiguous recurrence in the degree, used when the series cancels.
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Terminating<T> {
    pub value: T,
    /// Largest `|t_k|` met in the series.
    pub max_term: T,
    /// Set when `max_term > CANCELLATION_RATIO * |series sum|`.
    pub cancellation: bool,
    pub method: TerminatingMethod,
}

/// `1F1(-m; b; x)`, a polynomial of degree `m` in `x`.
///
/// The `m + 1` terms are generated by `t_{k+1} = t_k (k - m) x / ((b + k)(k + 1))` and
/// summed with compensation. When the largest term exceeds `1e4 |sum|` the value is
/// recomputed with the degree recurrence of [`hyp1f1_neg_int_sequence`], which does
/// not cancel; past `1e8 |sum|` the cancellation flag is also raised.
pub fn hyp1f1_terminating<T: Real>(m: usize, b: T, x: T) -> Result<Terminating<T>> {
    if !(b > T::zero()) {
        return Err(Error::domain("b > 0", b));
    }
    let mut term = T::one();
    let mut max_term = T::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..m {
        let kf = T::of_usize(k);
        term = term * (kf - T::of_usize(m)) * x / ((b + kf) * (kf + T::one()));
        max_term = max_term.max(term.abs());
        acc.add(term);
    }
    let sum = acc.value();
    let cancellation = max_term > T::of(CANCELLATION_RATIO) * sum.abs();
    if cancellation || max_term > T::of(RECURRENCE_RATIO) * sum.abs() {
        let seq = hyp1f1_neg_int_sequence(m, b, x)?;
        return Ok(Terminating {
            value: seq[m],
            max_term,
            cancellation,
            method: TerminatingMethod::Recurrence,
        });
    }
    Ok(Terminating { value: sum, max_term, cancellation, method: TerminatingMethod::Series })
}

/// `[1F1(-n; b; x) for n in 0..=m_max]` from the contiguous relation
/// `(b + n) F_{n+1} = (2n + b - x) F_n - n F_{n-1}`.
///
/// This is the Laguerre recurrence rescaled by `n!/(b)_n`; it is O(`m_max`) and is how
/// long coefficient sequences are produced.
pub fn hyp1f1_neg_int_sequence<T: Real>(m_max: usize, b: T, x: T) -> Result<Vec<T>> {
    if !(b > T::zero()) {
        return Err(Error::domain("b > 0", b));
    }
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(T::one());
    if m_max == 0 {
        return Ok(out);
    }
    out.push(T::one() - x / b);
    for n in 1..m_max {
        let nf = T::of_usize(n);
        let next = ((T::of(2.0) * nf + b - x) * out[n] - nf * out[n - 1]) / (b + nf);
        out.push(next);
    }
    Ok(out)
}

/// Exact-arithmetic evaluation of the terminating series; with a rational field this is
/// an oracle for [`hyp1f1_terminating`].
pub fn hyp1f1_terminating_exact<F: Field>(m: usize, b: &F, x: &F) -> F {
    let mut term = F::one();
    let mut sum = F::one();
    let mf = F::from_usize_exact(m);
    for k in 0..m {
        let kf = F::from_usize_exact(k);
        term = term * (kf.clone() - mf.clone()) * x.clone() / ((b.clone() + kf.clone()) * (kf + F::one()));
        sum = sum + term.clone();
    }
    sum
}

/// `1F1(1; b; z) = sum_k z^k / (b)_k` for complex `z`.
///
/// Once `|z| / (b + k) < 1` every later ratio is smaller, so the tail after term `k` is
/// bounded by `|t_k| r / (1 - r)`. Summation stops when that bound drops below
/// `eps |sum|`.
pub fn hyp1f1_one_complex<T: Real>(b: T, z: Complex<T>) -> Result<SeriesResult<Complex<T>, T>> {
    hyp1f1_one_complex_with_cap(b, z, TERM_CAP)
}

pub fn hyp1f1_one_complex_with_cap<T: Real>(
    b: T,
    z: Complex<T>,
    cap: usize,
) -> Result<SeriesResult<Complex<T>, T>> {
    if !(b > T::zero()) {
        return Err(Error::domain("b > 0", b));
    }
    let r = z.norm();
    let mut term = Complex::new(T::one(), T::zero());
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    re.add(T::one());
    let mut tail = T::infinity();
    for k in 0..cap {
        let denom = b + T::of_usize(k);
        term = term * z / denom;
        re.add(term.re);
        im.add(term.im);
        let ratio = r / (denom + T::one());
        if ratio < T::one() {
            tail = term.norm() * ratio / (T::one() - ratio);
            let sum = Complex::new(re.value(), im.value());
            if tail <= T::epsilon() * sum.norm() || term.norm() == T::zero() {
                return Ok(SeriesResult { value: sum, terms_used: k + 2, tail_bound: tail });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "1F1(1; b; z)",
        terms: cap,
        estimate: re.value().to_f64_lossy(),
        error: tail.to_f64_lossy(),
    })
}

/// Real-argument `1F1(1; b; x)`.
pub fn hyp1f1_one<T: Real>(b: T, x: T) -> Result<SeriesResult<T>> {
    hyp1f1_one_complex(b, Complex::new(x, T::zero())).map(|s| s.map(|v| v.re))
}

/// `2F1(-m, 1; b; 1) = (b-1)_m/(b)_m = (b-1)/(b-1+m)`.
pub fn gauss2f1_unit<T: Real>(m: usize, b: T) -> Result<T> {
    if !(b > T::one()) {
        return Err(Error::domain("b > 1", b));
    }
    Ok((b - T::one()) / (b - T::one() + T::of_usize(m)))
}

/// Term-by-term `2F1(-m, c; b; 1) = sum_k (-m)_k (c)_k / ((b)_k k!)`.
pub fn gauss2f1_unit_series<F: Field>(m: usize, c: &F, b: &F) -> F {
    let mut term = F::one();
    let mut sum = F::one();
    let mf = F::from_usize_exact(m);
    for k in 0..m {
        let kf = F::from_usize_exact(k);
        term = term * (kf.clone() - mf.clone()) * (c.clone() + kf.clone())
            / ((b.clone() + kf.clone()) * (kf + F::one()));
        sum = sum + term.clone();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, ToPrimitive};

    fn exact(m: usize, b: f64, x: f64) -> f64 {
        let b = BigRational::from_f64(b).unwrap();
        let x = BigRational::from_f64(x).unwrap();
        hyp1f1_terminating_exact(m, &b, &x).to_f64().unwrap()
    }

    #[test]
    fn terminating_examples() {
        for x in [-3.0, 0.0, 0.7, 12.0] {
            assert_eq!(hyp1f1_terminating(0, 2.5_f64, x).unwrap().value, 1.0);
        }
        assert_relative_eq!(hyp1f1_terminating(1, 3.0_f64, 2.0).unwrap().value, 1.0 / 3.0, max_relative = 1e-15);
        // hand expansion: 1 - 8/3 + 16/12
        let hand = 1.0 - 8.0 / 3.0 + 16.0 / 12.0;
        assert_relative_eq!(hand, -1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(hyp1f1_terminating(2, 3.0_f64, 4.0).unwrap().value, hand, max_relative = 1e-14);
    }

    #[test]
    fn terminating_rejects_nonpositive_b() {
        assert!(matches!(hyp1f1_terminating(3, 0.0_f64, 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn cancellation_flag_and_recurrence_fallback() {
        let r = hyp1f1_terminating(30, 1.6_f64, 25.0).unwrap();
        assert!(r.cancellation);
        assert_eq!(r.method, TerminatingMethod::Recurrence);
        let e = exact(30, 1.6, 25.0);
        assert!((r.value - e).abs() <= 1e-9 * e.abs().max(1.0), "{} vs {}", r.value, e);
        let quiet = hyp1f1_terminating(5, 2.5_f64, 0.3).unwrap();
        assert!(!quiet.cancellation);
    }

    #[test]
    fn sequence_matches_exact_series() {
        let seq = hyp1f1_neg_int_sequence(40, 2.5_f64, 7.25).unwrap();
        for (m, v) in seq.iter().enumerate() {
            let e = exact(m, 2.5, 7.25);
            assert!((v - e).abs() <= 1e-10 * e.abs().max(1.0), "m={m}: {v} vs {e}");
        }
    }

    #[test]
    fn one_examples() {
        let r = hyp1f1_one(2.0_f64, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        // sum 1/(2)_k = e - 1, confirmed by a 30-term sum
        let mut brute = 0.0;
        let mut p = 1.0;
        for k in 0..30 {
            brute += 1.0 / p;
            p *= 2.0 + k as f64;
        }
        assert_relative_eq!(brute, std::f64::consts::E - 1.0, max_relative = 1e-15);
        assert_relative_eq!(hyp1f1_one(2.0_f64, 1.0).unwrap().value, brute, max_relative = 1e-15);
        // 200-term brute-force series
        let mut brute = 0.0;
        let mut term = 1.0;
        for k in 0..200 {
            brute += term;
            term *= 1.0 / (2.25 + k as f64);
        }
        let r = hyp1f1_one(2.25_f64, 1.0).unwrap();
        assert!((r.value - brute).abs() <= 1e-14);
        assert!(r.tail_bound <= f64::EPSILON * r.value);
    }

    #[test]
    fn one_reports_nonconvergence() {
        let err = hyp1f1_one_complex_with_cap(1.5_f64, Complex::new(50.0, 0.0), 20).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn gauss2f1_examples() {
        assert_eq!(gauss2f1_unit(0, 3.0_f64).unwrap(), 1.0);
        assert_eq!(gauss2f1_unit(2, 3.0_f64).unwrap(), 0.5);
        let series = gauss2f1_unit_series(5, &1.0_f64, &2.5);
        assert_relative_eq!(gauss2f1_unit(5, 2.5_f64).unwrap(), series, max_relative = 1e-14);
        assert_relative_eq!(series, 1.5 / 6.5, max_relative = 1e-14);
        assert!(gauss2f1_unit(1, 1.0_f64).is_err());
    }

    #[test]
    fn gauss2f1_exact_chu_vandermonde() {
        let b = BigRational::from_f64(3.5).unwrap();
        let one = BigRational::from_i64(1).unwrap();
        for m in 0..12 {
            let s = gauss2f1_unit_series(m, &one, &b);
            let closed = (b.clone() - one.clone()) / (b.clone() - one.clone() + BigRational::from_usize(m).unwrap());
            assert_eq!(s, closed);
        }
    }
}
