//! Mutual information `I(outcome : phi)` under the uniform prior on `[0, 1)`.

mod closed;
mod covariant;
mod discrete;
mod qpea;

pub use closed::{
    hamming_sql_offset, mi_hamming_closed, mi_hamming_quadrature, mi_sep_detection_qpea, mi_sep_detection_quadrature,
    sep_detection_group_mi,
};
pub use covariant::{mi_covariant, mi_covariant_mc, mi_sep_optimal, mi_sep_optimal_mc, mi_two_level};
pub use discrete::mi_discrete_naive;
pub use qpea::{mi_qpea_ddim, mi_qpea_mc, mi_qpea_naive, mi_qpea_reduced};

use crate::distributions::ProbeSpec;
use std::fmt;

/// How an [`MiEstimate`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Single-integral form reached through covariance of the channel.
    QuadReduced,
    /// Direct sum over outcomes of per-outcome integrals.
    QuadNaive,
    Mc,
    ClosedForm,
    GaussianApprox,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::QuadReduced => "quad-reduced",
            Method::QuadNaive => "quad-naive",
            Method::Mc => "mc",
            Method::ClosedForm => "closed-form",
            Method::GaussianApprox => "gaussian-approx",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A mutual-information value in bits with its numerical error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiEstimate {
    pub bits: f64,
    pub err: f64,
    pub method: Method,
    /// Strategy the value belongs to, when known.
    pub spec: Option<ProbeSpec>,
    /// Seed of the random stream for Monte Carlo estimates.
    pub seed: Option<u64>,
}

impl MiEstimate {
    pub(crate) fn new(bits: f64, err: f64, method: Method) -> Self {
        Self {
            bits,
            err,
            method,
            spec: None,
            seed: None,
        }
    }

    pub fn with_spec(mut self, spec: ProbeSpec) -> Self {
        self.spec = Some(spec);
        self
    }
}
