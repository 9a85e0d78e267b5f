//! Special functions: log-gamma, Pochhammer symbols, hypergeometric sums, modified
//! Bessel functions and the Mittag-Leffler function.

mod bessel;
mod gamma;
mod hyp1f1;
mod mittag_leffler;
mod orthopoly;
mod series;

pub use bessel::{bessel_i, bessel_i_scaled, bessel_ik_product, bessel_k, bessel_k_scaled};
pub use gamma::{gamma, gamma_sign, ln_gamma, ln_pochhammer, pochhammer, sin_pi};
pub use hyp1f1::{
    gauss2f1_unit, gauss2f1_unit_series, hyp1f1_neg_int_sequence, hyp1f1_one, hyp1f1_one_complex,
    hyp1f1_one_complex_with_cap, hyp1f1_terminating, hyp1f1_terminating_exact, Terminating,
    TerminatingMethod, CANCELLATION_RATIO, RECURRENCE_RATIO,
};
pub use mittag_leffler::{mittag_leffler, mittag_leffler_with_cap};
pub use orthopoly::{hermite, laguerre};
pub use series::{SeriesResult, TERM_CAP};
