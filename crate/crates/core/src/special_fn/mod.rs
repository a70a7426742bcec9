//! Complex Gamma and zeta functions and an adaptive quadrature engine.
//!
//! Accuracy targets (binary64):
//!
//! | function | band | target |
//! |---|---|---|
//! | [`gamma_complex`] | `|Im z| <= 200` | relative `1e-12` |
//! | [`zeta_complex`] | `Re s >= 0.6`, `|Im s| <= 1e5` | absolute `1e-10` |
//! | [`integrate_adaptive`] | piecewise smooth, breakpoints supplied | absolute `tol` |

mod gamma;
mod quadrature;
mod zeta;

pub use gamma::{gamma_complex, GAMMA_MAX_IM};
pub use quadrature::{
    integrate_adaptive, integrate_piecewise, QuadratureResult, DEFAULT_MAX_EVALUATIONS,
};
pub use zeta::{zeta_complex, zeta_euler_maclaurin, ZETA_MAX_IM, ZETA_MIN_RE};

/// Complex number used throughout the special-function layer.
pub type Complex = num_complex::Complex64;
