//! Special-function substrate shared by every statistics module:
//! log-gamma, classical incomplete gammas, the extended incomplete gamma
//! pair, adaptive Gauss-Kronrod quadrature, and the Gauss-Chebyshev rule.

mod extgamma;
mod gamma;
mod gcq;
mod quad;

pub use extgamma::{ext_lower_gamma, ext_lower_gamma_with, ext_upper_gamma, ext_upper_gamma_with};
pub use gamma::{ln_gamma, reg_gamma_p, reg_gamma_q, upper_gamma};
pub use gcq::{gcq_rule, GcqRule};
pub use quad::{integrate, Integral, QuadratureSpec};

pub(crate) use gamma::{HALF_LOG_TWO_PI, LANCZOS_COEF, LANCZOS_G};
