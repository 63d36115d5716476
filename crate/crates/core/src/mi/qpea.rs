use super::{mi_discrete_naive, Method, MiEstimate};
use crate::distributions::{qpea_ratio, ProbeSpec, QpeaChannel};
use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, integrate_mc, sin_pi, McSpec, QuadratureSpec};

const MAX_REDUCED_OUTCOMES: u64 = 1 << 22;

/// Reduced form for `M` equally spaced outcomes:
/// `log2 M - 2 - (1/M) int_0^1 sin^2(M pi phi)/sin^2(pi phi) log2(M^2 sin^2(pi phi)) dphi`.
///
/// The sum over outcomes collapses by shifting each term onto `m = 0`; the
/// `int log2 sin^2(M pi phi) = -2` piece is taken exactly. The remaining
/// integrand is symmetric about 1/2, diverges logarithmically at 0 and has
/// zeros at every grid point `k/M`, so the integral runs over `[0, 1/2]`
/// with a breakpoint at each grid point.
fn reduced_kernel(outcomes: u64, q: &QuadratureSpec) -> Result<(f64, f64)> {
    if !(2..=MAX_REDUCED_OUTCOMES).contains(&outcomes) {
        return Err(Error::Domain(format!(
            "reduced QPEA integral supports 2..={MAX_REDUCED_OUTCOMES} outcomes, got {outcomes}"
        )));
    }
    let m = outcomes as f64;
    // grid k/M in [0, 1/2] expressed as fractions of that half range
    let spec = q.with_extra_nodes((1..=outcomes / 2).map(|k| 2.0 * k as f64 / m));
    // sin^2(M pi phi)/(M sin^2(pi phi)) = M * ratio
    let integrand = |phi: f64| m * qpea_ratio(m, phi) * 2.0 * (m * sin_pi(phi).abs()).log2();
    let half = integrate_adaptive(integrand, 0.0, 0.5, &spec)?;
    Ok((-2.0 - 2.0 * half.value, 2.0 * half.err))
}

/// QPEA mutual information for `N` applications through the reduced single integral.
pub fn mi_qpea_reduced(n: u64, q: &QuadratureSpec) -> Result<MiEstimate> {
    let spec = ProbeSpec::qpea(n)?;
    let (kernel, err) = reduced_kernel(n + 1, q)?;
    Ok(MiEstimate::new(((n + 1) as f64).log2() + kernel, err, Method::QuadReduced).with_spec(spec))
}

/// d-ary QPEA with `t` digits: `t log2 d` plus the same kernel with `M = d^t`.
pub fn mi_qpea_ddim(d: u64, t: u32, q: &QuadratureSpec) -> Result<MiEstimate> {
    let spec = ProbeSpec::qpea_ddim(d, t)?;
    let outcomes = spec.n + 1;
    if outcomes > 1 << 20 {
        return Err(Error::Domain(format!("{d}^{t} outcomes exceeds 2^20")));
    }
    let (kernel, err) = reduced_kernel(outcomes, q)?;
    let spec = if t == 1 { ProbeSpec::pegg_barnett(d)? } else { spec };
    Ok(MiEstimate::new(t as f64 * (d as f64).log2() + kernel, err, Method::QuadReduced).with_spec(spec))
}

/// Reduced QPEA integral by Monte Carlo over the full period.
///
/// The variance grows with `N`, so this is a fallback for grids too large
/// for quadrature.
pub fn mi_qpea_mc(n: u64, mc: &McSpec) -> Result<MiEstimate> {
    let spec = ProbeSpec::qpea(n)?;
    let m = (n + 1) as f64;
    let integrand = |phi: f64| -m * qpea_ratio(m, phi) * 2.0 * (m * sin_pi(phi).abs()).log2();
    let r = integrate_mc(integrand, mc)?;
    let mut est = MiEstimate::new(m.log2() - 2.0 + r.value, r.err, Method::Mc).with_spec(spec);
    est.seed = Some(mc.seed);
    Ok(est)
}

/// QPEA mutual information by the outcome-by-outcome sum, for cross-checks.
pub fn mi_qpea_naive(n: u64, q: &QuadratureSpec) -> Result<MiEstimate> {
    let spec = ProbeSpec::qpea(n)?;
    Ok(mi_discrete_naive(&QpeaChannel::qubit(n)?, q)?.with_spec(spec))
}
