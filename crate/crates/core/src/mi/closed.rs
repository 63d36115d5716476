use super::{mi_discrete_naive, Method, MiEstimate};
use crate::distributions::{HammingChannel, ProbeSpec, SepDetectionChannel};
use crate::error::{Error, Result};
use crate::numerics::constants::c_probe;
use crate::numerics::{log_binomial, QuadratureSpec};
use std::f64::consts::{LN_2, LOG2_E};

const MAX_HAMMING_N: u64 = 100_000;

/// Closed-form mutual information of the product `|+>/|->` measurement:
///
/// `N / ln 2 + sum_k w_k log2[C(N, k) / (C(2k, k) C(2(N-k), N-k))]`
/// with `w_k = C(2k, k) C(2(N-k), N-k) / 4^N`, all in log space.
pub fn mi_hamming_closed(n: u64) -> Result<MiEstimate> {
    if n == 0 || n > MAX_HAMMING_N {
        return Err(Error::Domain(format!(
            "Hamming closed form needs 1 <= N <= {MAX_HAMMING_N}"
        )));
    }
    let ln_4n = 2.0 * n as f64 * LN_2;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for k in 0..=n {
        let ln_central = log_binomial(2 * k, k)? + log_binomial(2 * (n - k), n - k)?;
        let w = (ln_central - ln_4n).exp();
        let term = w * (log_binomial(n, k)? - ln_central) * LOG2_E;
        sum += term;
        abs_sum += term.abs();
    }
    let lead = n as f64 / LN_2;
    let bits = lead + sum;
    // round-off of the cancelling sums plus the log-gamma ulps
    let lgamma_scale = libm::lgamma(2.0 * n as f64 + 1.0);
    let err = 4.0 * f64::EPSILON * ((n + 1) as f64).sqrt() * (lead + abs_sum + lgamma_scale);
    Ok(MiEstimate::new(bits, err, Method::ClosedForm).with_spec(ProbeSpec::sep_hamming(n)?))
}

/// `I_hamming(N) - log2(N) / 2`, which tends to a constant near -0.395.
pub fn hamming_sql_offset(n: u64) -> Result<f64> {
    Ok(mi_hamming_closed(n)?.bits - 0.5 * (n as f64).log2())
}

/// Hamming-channel MI by quadrature over the weight-aggregated outcomes.
pub fn mi_hamming_quadrature(n: u64, q: &QuadratureSpec) -> Result<MiEstimate> {
    let ch = HammingChannel::new(n)?;
    Ok(mi_discrete_naive(&ch, q)?.with_spec(ProbeSpec::sep_hamming(n)?))
}

/// Mutual information carried by the parity of N00N group `j`, by quadrature.
pub fn sep_detection_group_mi(j: u32, q: &QuadratureSpec) -> Result<MiEstimate> {
    mi_discrete_naive(&SepDetectionChannel::new(j)?, q)
}

/// Sum of the per-group MIs for a `t`-group register, each by quadrature.
pub fn mi_sep_detection_quadrature(t: u32, q: &QuadratureSpec) -> Result<MiEstimate> {
    let spec = ProbeSpec::sep_detection(t)?;
    let (mut bits, mut err) = (0.0, 0.0);
    for j in 0..t {
        let g = sep_detection_group_mi(j, q)?;
        bits += g.bits;
        err += g.err;
    }
    Ok(MiEstimate::new(bits, err, Method::QuadNaive).with_spec(spec))
}

/// Groups cross-checked by quadrature in [`mi_sep_detection_qpea`].
const CROSS_CHECK_GROUPS: u32 = 8;

/// `t (1 + log2(e/4))`: every group contributes the same amount.
///
/// The per-group value is confirmed by quadrature for the first groups; a
/// disagreement beyond `1e-8` is reported as [`Error::CrossCheck`].
pub fn mi_sep_detection_qpea(t: u32) -> Result<MiEstimate> {
    let spec = ProbeSpec::sep_detection(t)?;
    let per_group = c_probe();
    let q = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for j in 0..t.min(CROSS_CHECK_GROUPS) {
        let quad = sep_detection_group_mi(j, &q)?;
        let gap = (quad.bits - per_group).abs();
        if gap > 1e-8 {
            return Err(Error::CrossCheck(format!(
                "group {j}: quadrature {} vs closed form {per_group}",
                quad.bits
            )));
        }
        worst = worst.max(gap);
    }
    Ok(MiEstimate::new(t as f64 * per_group, t as f64 * worst, Method::ClosedForm).with_spec(spec))
}
