//! Coherent states over the isotonic-oscillator eigenbasis: special functions,
//! quadrature, state construction and executable identity checks.
//!
//! The numerical core is generic over [`scalar::Real`] (`f32`, `f64`); the exact
//! polynomial routines also accept [`num_rational::BigRational`]. The aliases below
//! fix the scalar to `f64`.

pub mod cli;
pub mod error;
pub mod families;
pub mod isotonic;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod summation;
pub mod verify;

pub use error::{Error, Result};

pub type QuadratureRule = quadrature::QuadratureRule<f64>;
pub type OscillatorParams = isotonic::OscillatorParams<f64>;
pub type Spectrum = isotonic::Spectrum<f64>;
pub type CsLabel = families::CsLabel<f64>;
pub type TruncatedState = families::TruncatedState<f64>;
pub type MeasureDensity = families::MeasureDensity<f64>;
