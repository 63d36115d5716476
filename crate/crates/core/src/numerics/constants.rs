//! Reference constants for the asymptotic mutual-information lines.

use std::f64::consts::{E, LN_2, LOG2_E, PI};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

/// Asymptotic offsets (in bits) of the strategies' mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticConstants {
    pub euler_gamma: f64,
    /// `I_qpea(N) - log2(N+1)` as `N -> inf`.
    pub c_qpea: f64,
    /// `I_sep_optimal(N) - log2(N)/2` as `N -> inf`.
    pub c_sql_ent: f64,
    /// Mutual information of one `|+>/|->` measured phase qubit.
    pub c_probe: f64,
    /// `I_hamming(N) - log2(N)/2` as `N -> inf`; only known numerically.
    pub c_sep_sep: f64,
    /// Uncertainty attached to `c_sep_sep`.
    pub c_sep_sep_uncertainty: f64,
}

impl AnalyticConstants {
    pub fn new() -> Self {
        Self {
            euler_gamma: EULER_GAMMA,
            c_qpea: c_qpea(),
            c_sql_ent: c_sql_ent(),
            c_probe: c_probe(),
            c_sep_sep: C_SEP_SEP,
            c_sep_sep_uncertainty: C_SEP_SEP_UNCERTAINTY,
        }
    }
}

impl Default for AnalyticConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `-2 + 2 (gamma + ln 2 - 1) / ln 2`.
pub fn c_qpea() -> f64 {
    -2.0 + 2.0 * (EULER_GAMMA + LN_2 - 1.0) / LN_2
}

/// `log2(2 pi / e) / 2`.
pub fn c_sql_ent() -> f64 {
    0.5 * (2.0 * PI / E).log2()
}

/// `1 + log2(e / 4) = log2(e) - 1`.
pub fn c_probe() -> f64 {
    LOG2_E - 1.0
}

pub const C_SEP_SEP: f64 = -0.395;
pub const C_SEP_SEP_UNCERTAINTY: f64 = 0.005;
