//! Gauss rules and semi-infinite integration.

mod adaptive;
mod rule;
mod tridiag;

pub use adaptive::{integrate_interval, integrate_semi_infinite, Integral, PanelConfig};
pub use rule::{gauss_gen_laguerre, gauss_legendre, golub_welsch_laguerre, QuadratureRule, RuleKind};
pub use tridiag::symmetric_tridiagonal_eigen;
