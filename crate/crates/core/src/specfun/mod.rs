//! Special functions and quadrature used by every analytic formula in the crate.
//!
//! All routines are pure. Inputs are validated at the public entry points; the
//! `*_unchecked` variants exist for hot integrand loops whose arguments are
//! already known to be in range.

mod binom;
mod erf;
mod gamma;
mod quad;

pub use binom::{binomial_log_pmf, ln_choose};
pub use erf::{erfc, gaussian_ccdf, gaussian_ccdf_inv};
pub use gamma::{ln_gamma, regularized_lower_gamma, regularized_upper_gamma};
pub use quad::{integrate, integrate_pieces, QuadratureSpec};

pub(crate) use erf::gaussian_ccdf_unchecked;
pub(crate) use gamma::{gamma_log_density, upper_gamma_unchecked};
