//! Summation of slowly or conditionally convergent series given as term slices.

use crate::scalar::{CompensatedSum, Real};

pub fn partial_sum<T: Real>(terms: &[T]) -> T {
    terms.iter().copied().collect::<CompensatedSum<T>>().value()
}

/// Cesàro (C,1) mean of the first `terms.len()` partial sums,
/// `sum_k a_k (1 - k/n)`.
pub fn cesaro1<T: Real>(terms: &[T]) -> T {
    let n = T::of_usize(terms.len());
    terms
        .iter()
        .enumerate()
        .map(|(k, &a)| a * (T::one() - T::of_usize(k) / n))
        .collect::<CompensatedSum<T>>()
        .value()
}

/// Cesàro (C,2) mean, `sum_k a_k (n - k)(n - k + 1) / (n (n + 1))`.
pub fn cesaro2<T: Real>(terms: &[T]) -> T {
    let n = T::of_usize(terms.len());
    let denom = n * (n + T::one());
    terms
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            let r = n - T::of_usize(k);
            a * r * (r + T::one()) / denom
        })
        .collect::<CompensatedSum<T>>()
        .value()
}

/// One Richardson step for an estimate whose error behaves like `C h^rate`, where the
/// coarse estimate used a step `refinement` times larger.
pub fn richardson<T: Real>(fine: T, coarse: T, refinement: T, rate: T) -> T {
    fine + (fine - coarse) / (refinement.powf(rate) - T::one())
}

/// (C,2) mean at `n` and `n/2` combined by a first-order Richardson step. The (C,2)
/// mean of a convergent series with regularly decaying oscillatory terms carries an
/// `O(1/n)` bias, which the step removes.
pub fn cesaro2_richardson<T: Real>(terms: &[T]) -> T {
    let n = terms.len();
    let fine = cesaro2(terms);
    let coarse = cesaro2(&terms[..n / 2]);
    richardson(fine, coarse, T::of(2.0), T::one())
}

/// Smooth step on `[0, 1]`: 0 below, 1 above, `C^inf` in between.
pub fn smooth_step<T: Real>(u: T) -> T {
    if u <= T::zero() {
        return T::zero();
    }
    if u >= T::one() {
        return T::one();
    }
    let a = (-T::one() / u).exp();
    let b = (-T::one() / (T::one() - u)).exp();
    a / (a + b)
}

/// Smoothed partial sum `sum_j a_j phi(j/n)` with `phi(s) = 1 - smooth_step(s)` and
/// `n = terms.len()`. For terms with an asymptotic expansion in oscillatory powers the
/// error decays faster than any power of `n`, and the mean assigns the Abel value to
/// series whose terms grow slower than polynomially in the oscillation count.
pub fn smooth_cutoff<T: Real>(terms: &[T]) -> T {
    let n = T::of_usize(terms.len());
    terms
        .iter()
        .enumerate()
        .map(|(j, &a)| a * (T::one() - smooth_step(T::of_usize(j) / n)))
        .collect::<CompensatedSum<T>>()
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn alternating_harmonic(n: usize) -> Vec<f64> {
        (0..n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0)).collect()
    }

    #[test]
    fn means_of_alternating_harmonic() {
        let t = alternating_harmonic(4000);
        let ln2 = std::f64::consts::LN_2;
        assert!((partial_sum(&t) - ln2).abs() > 1e-4);
        assert!((cesaro1(&t) - ln2).abs() < 1e-3);
        assert!((cesaro2_richardson(&t) - ln2).abs() < 1e-6);
        assert!((smooth_cutoff(&t) - ln2).abs() < 1e-10);
    }

    #[test]
    fn grandi_series_is_summed_to_half() {
        let t: Vec<f64> = (0..1000).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert_relative_eq!(cesaro1(&t), 0.5, max_relative = 1e-12);
        assert_relative_eq!(smooth_cutoff(&t), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn richardson_removes_leading_power() {
        let f = |h: f64| 2.0 + 3.0 * h.sqrt();
        assert_relative_eq!(richardson(f(0.01), f(0.04), 4.0, 0.5), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn smooth_step_shape() {
        assert_eq!(smooth_step(-1.0_f64), 0.0);
        assert_eq!(smooth_step(2.0_f64), 1.0);
        assert_relative_eq!(smooth_step(0.5_f64), 0.5, max_relative = 1e-15);
        assert_relative_eq!(smooth_step(0.3_f64) + smooth_step(0.7_f64), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn finite_sequence_is_fixed_by_all_means_at_large_n() {
        let mut t = vec![0.0_f64; 10_000];
        t[0] = 1.0;
        t[1] = 2.0;
        assert_relative_eq!(smooth_cutoff(&t), 3.0, max_relative = 1e-12);
        assert_relative_eq!(cesaro2_richardson(&t), 3.0, max_relative = 1e-7);
    }
}
