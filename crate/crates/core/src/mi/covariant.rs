use super::{Method, MiEstimate};
use crate::distributions::{CovariantDensity, DensityMode, ProbeSpec, SepOptimalDensity, TwoLevelDensity};
use crate::error::Result;
use crate::numerics::{integrate_adaptive, integrate_mc, plogp, McSpec, QuadratureSpec};

/// `int_0^1 F(theta) log2 F(theta) dtheta`.
///
/// Under the uniform prior the estimate's marginal is flat, so the double
/// integral over `(phi, phi_hat)` collapses to this single integral.
pub fn mi_covariant(density: &dyn CovariantDensity, q: &QuadratureSpec) -> Result<MiEstimate> {
    let spec = q.with_extra_nodes(density.quadrature_nodes());
    let r = integrate_adaptive(|theta| plogp(density.density(theta)), 0.0, 1.0, &spec)?;
    Ok(MiEstimate::new(r.value, r.err, Method::QuadReduced))
}

/// Monte Carlo estimate of the same integral; `err` is the standard error.
pub fn mi_covariant_mc(density: &dyn CovariantDensity, mc: &McSpec) -> Result<MiEstimate> {
    let r = integrate_mc(|theta| plogp(density.density(theta)), mc)?;
    Ok(MiEstimate {
        seed: Some(mc.seed),
        ..MiEstimate::new(r.value, r.err, Method::Mc)
    })
}

/// Separable probes with the optimal covariant measurement.
pub fn mi_sep_optimal(n: u64, mode: DensityMode, q: &QuadratureSpec) -> Result<MiEstimate> {
    let density = SepOptimalDensity::new(n, mode)?;
    let mut est = mi_covariant(&density, q)?.with_spec(ProbeSpec::sep_optimal(n)?);
    if mode == DensityMode::Gaussian {
        est.method = Method::GaussianApprox;
    }
    Ok(est)
}

pub fn mi_sep_optimal_mc(n: u64, mc: &McSpec) -> Result<MiEstimate> {
    let density = SepOptimalDensity::new(n, DensityMode::Exact)?;
    Ok(mi_covariant_mc(&density, mc)?.with_spec(ProbeSpec::sep_optimal(n)?))
}

/// Probe confined to the two extreme generator eigenstates.
pub fn mi_two_level(d: u64, q: &QuadratureSpec) -> Result<MiEstimate> {
    let density = TwoLevelDensity::new(d)?;
    Ok(mi_covariant(&density, q)?.with_spec(ProbeSpec::two_level(d)?))
}
