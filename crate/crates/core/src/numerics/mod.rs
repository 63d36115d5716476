//! Shared numerical kernels.
//!
//! Everything the channel models and the mutual-information engine need
//! from numerics lives here: Gauss–Kronrod adaptive quadrature with forced
//! breakpoints, seeded Monte Carlo integration, log-space combinatorics and
//! the analytic reference constants.

pub mod constants;
pub mod montecarlo;
pub mod quadrature;
pub mod special;

pub use constants::AnalyticConstants;
pub use montecarlo::{derive_seed, integrate_mc, McIntegral, McSpec};
pub use quadrature::{integrate_adaptive, Integral, QuadratureSpec};
pub use special::{cos_pi, ln_factorial, log_binomial, plogp, shannon_entropy_bits, sin_pi};
