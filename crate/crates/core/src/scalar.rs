//! Scalar abstractions.
//!
//! [`Field`] covers every type the exact polynomial routines run on, including
//! [`num_rational::BigRational`]. [`Real`] adds the transcendental operations needed
//! by everything else and is implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign};

/// Arithmetic that is closed under `+ - * /` and exact for rational types.
pub trait Field: Clone + Num + Neg<Output = Self> + PartialOrd + FromPrimitive + Debug {
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in field")
    }
}

impl<F> Field for F where F: Clone + Num + Neg<Output = F> + PartialOrd + FromPrimitive + Debug {}

/// Floating-point scalar used by the numerical modules.
pub trait Real:
    Field + Float + FloatConst + NumAssign + Sum + Default + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Field + Float + FloatConst + NumAssign + Sum + Default + Display + Send + Sync + 'static
{
}

/// Neumaier's variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), compensation: T::zero() }
    }

    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of a slice.
pub fn compensated_sum<T: Real>(values: &[T]) -> T {
    values.iter().copied().collect::<CompensatedSum<T>>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut v = vec![1.0e16_f64];
        v.extend(std::iter::repeat(1.0).take(1000));
        v.push(-1.0e16);
        assert_eq!(compensated_sum(&v), 1000.0);
        let naive: f64 = v.iter().sum();
        assert_ne!(naive, 1000.0);
    }

    #[test]
    fn literal_conversion_works_for_both_widths() {
        assert_eq!(f32::of(0.5), 0.5_f32);
        assert_eq!(f64::of_usize(7), 7.0);
    }
}
