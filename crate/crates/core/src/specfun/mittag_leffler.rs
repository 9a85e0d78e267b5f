use super::gamma::{gamma, ln_gamma};
use super::series::{SeriesResult, TERM_CAP};
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// Two-parameter Mittag-Leffler function `E_{a,b}(x) = sum_m x^m / Γ(a m + b)`.
///
/// For integer `a` consecutive terms are related by an exact rational factor; otherwise
/// each term goes through log-gamma. `Γ(y)/Γ(y + a)` decreases in `y`, so once the term
/// ratio drops below one the geometric bound on the tail holds.
pub fn mittag_leffler<T: Real>(a: T, b: T, x: T) -> Result<SeriesResult<T>> {
    mittag_leffler_with_cap(a, b, x, TERM_CAP)
}

pub fn mittag_leffler_with_cap<T: Real>(a: T, b: T, x: T, cap: usize) -> Result<SeriesResult<T>> {
    if !(a > T::zero()) {
        return Err(Error::domain("a > 0", a));
    }
    if !(b > T::zero()) {
        return Err(Error::domain("b > 0", b));
    }
    let first = T::one() / gamma(b);
    if x == T::zero() {
        return Ok(SeriesResult { value: first, terms_used: 1, tail_bound: T::zero() });
    }
    let integer_a = a == a.round() && a <= T::of(64.0);
    let steps = a.to_usize().unwrap_or(0);
    let lnx = x.abs().ln();
    let negative = x < T::zero();

    let mut acc = CompensatedSum::new();
    acc.add(first);
    let mut term = first;
    let mut tail = T::infinity();
    for m in 1..cap {
        let mf = T::of_usize(m);
        term = if integer_a {
            let base = a * (mf - T::one()) + b;
            let mut denom = T::one();
            for j in 0..steps {
                denom *= base + T::of_usize(j);
            }
            term * x / denom
        } else {
            let mag = (mf * lnx - ln_gamma(a * mf + b)).exp();
            if negative && m % 2 == 1 {
                -mag
            } else {
                mag
            }
        };
        acc.add(term);
        let ratio = (lnx + ln_gamma(a * mf + b) - ln_gamma(a * (mf + T::one()) + b)).exp();
        if ratio < T::one() {
            tail = term.abs() * ratio / (T::one() - ratio);
            let sum = acc.value();
            if !sum.is_finite() {
                return Err(Error::Overflow { what: "mittag_leffler" });
            }
            if tail <= T::epsilon() * sum.abs() || term == T::zero() {
                return Ok(SeriesResult { value: sum, terms_used: m + 1, tail_bound: tail });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "mittag_leffler",
        terms: cap,
        estimate: acc.value().to_f64_lossy(),
        error: tail.to_f64_lossy(),
    })
}
