use super::spec::SweepMethod;
use crate::distributions::{DensityMode, ProbeSpec, StrategyKind, TwoLevelDensity};
use crate::error::{Error, Result};
use crate::mi::{
    mi_covariant_mc, mi_hamming_closed, mi_hamming_quadrature, mi_qpea_ddim, mi_qpea_mc, mi_qpea_reduced,
    mi_sep_detection_qpea, mi_sep_detection_quadrature, mi_sep_optimal, mi_sep_optimal_mc, mi_two_level, MiEstimate,
};
use crate::numerics::constants::{c_probe, c_qpea, c_sql_ent, C_SEP_SEP};
use crate::numerics::{McSpec, QuadratureSpec};

/// Largest register handled by the reduced quadrature for qubit QPEA.
const QPEA_QUAD_MAX_OUTCOMES: u64 = 1 << 22;
/// Largest register handled by the reduced quadrature for d-ary QPEA.
const DDIM_QUAD_MAX_OUTCOMES: u64 = 1 << 20;
/// Largest N for which `auto` uses the exact separable-optimal density.
const SEP_OPTIMAL_EXACT_MAX_N: u64 = 100_000_000;
const HAMMING_CLOSED_MAX_N: u64 = 100_000;
/// Largest probe dimension for which `auto` integrates the two-level density.
const TWO_LEVEL_QUAD_MAX_D: u64 = 1 << 22;

/// A concrete evaluator for one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plan {
    QpeaReduced,
    QpeaMc,
    SepOptimalExact,
    SepOptimalGaussian,
    SepOptimalMc,
    HammingClosed,
    HammingQuad,
    DetectionClosed,
    DetectionQuad,
    TwoLevelQuad,
    TwoLevelMc,
}

/// Resolve `method` for one grid point. `auto` prefers closed forms, then
/// quadrature, then the cheap fallbacks for grids beyond the quadrature range.
pub fn plan(point: &ProbeSpec, method: SweepMethod) -> Result<Plan> {
    use StrategyKind::*;
    let outcomes = point.n.saturating_add(1);
    let qpea_quad_max = match point.kind {
        QpeaDDim | PeggBarnett => DDIM_QUAD_MAX_OUTCOMES,
        _ => QPEA_QUAD_MAX_OUTCOMES,
    };
    let plan = match (point.kind, method) {
        (QpeaQubit | ParallelEntangled | QpeaDDim | PeggBarnett, SweepMethod::Quad) => Plan::QpeaReduced,
        (QpeaQubit | ParallelEntangled | QpeaDDim | PeggBarnett, SweepMethod::Mc) => Plan::QpeaMc,
        (QpeaQubit | ParallelEntangled | QpeaDDim | PeggBarnett, SweepMethod::Auto) => {
            if outcomes <= qpea_quad_max {
                Plan::QpeaReduced
            } else {
                Plan::QpeaMc
            }
        }
        (SepOptimalPovm, SweepMethod::Quad) => Plan::SepOptimalExact,
        (SepOptimalPovm, SweepMethod::Mc) => Plan::SepOptimalMc,
        (SepOptimalPovm, SweepMethod::Auto) => {
            if point.n <= SEP_OPTIMAL_EXACT_MAX_N {
                Plan::SepOptimalExact
            } else {
                Plan::SepOptimalGaussian
            }
        }
        (SepHamming, SweepMethod::ClosedForm) => Plan::HammingClosed,
        (SepHamming, SweepMethod::Quad) => Plan::HammingQuad,
        (SepHamming, SweepMethod::Auto) => {
            if point.n <= HAMMING_CLOSED_MAX_N {
                Plan::HammingClosed
            } else {
                Plan::HammingQuad
            }
        }
        (SepDetectionQpea, SweepMethod::ClosedForm | SweepMethod::Auto) => Plan::DetectionClosed,
        (SepDetectionQpea, SweepMethod::Quad) => Plan::DetectionQuad,
        (TwoLevelSubspace, SweepMethod::Quad) => Plan::TwoLevelQuad,
        (TwoLevelSubspace, SweepMethod::Mc) => Plan::TwoLevelMc,
        (TwoLevelSubspace, SweepMethod::Auto) => {
            if point.d <= TWO_LEVEL_QUAD_MAX_D {
                Plan::TwoLevelQuad
            } else {
                Plan::TwoLevelMc
            }
        }
        (kind, m) => {
            return Err(Error::Config(format!(
                "method {m} is not available for strategy {kind}"
            )));
        }
    };
    Ok(plan)
}

/// Rough single-thread wall-clock estimate in seconds for an optimized build.
pub fn estimated_seconds(point: &ProbeSpec, plan: Plan, mc: &McSpec) -> f64 {
    let n = point.n as f64;
    let samples = mc.samples as f64;
    let sep_terms = (n + 1.0).min(2.0 * (40.0 * n).sqrt() + 1.0);
    let secs = match plan {
        Plan::QpeaReduced => 1.5e-6 * (n + 1.0),
        Plan::QpeaMc => 5e-8 * samples,
        Plan::SepOptimalExact => 1e-4 * sep_terms,
        Plan::SepOptimalGaussian => 1e-3,
        Plan::SepOptimalMc => 7e-9 * samples * sep_terms,
        Plan::HammingClosed => 3e-7 * n,
        Plan::HammingQuad => 2e-4 * n,
        Plan::DetectionClosed => 2e-2,
        Plan::DetectionQuad => 2e-6 * 2f64.powi(point.t.unwrap_or(0) as i32 + 1),
        Plan::TwoLevelQuad => 4e-5 * point.d as f64,
        Plan::TwoLevelMc => 3e-8 * samples,
    };
    secs + 1e-4
}

/// Evaluate one grid point. `mc` is used as given; derive per-point specs
/// with [`McSpec::for_task`] before calling.
pub fn evaluate(point: &ProbeSpec, plan: Plan, q: &QuadratureSpec, mc: &McSpec) -> Result<MiEstimate> {
    let t = point.t.unwrap_or(1);
    let est = match plan {
        Plan::QpeaReduced => match point.kind {
            StrategyKind::QpeaDDim | StrategyKind::PeggBarnett => mi_qpea_ddim(point.d, t, q)?,
            _ => mi_qpea_reduced(point.n, q)?,
        },
        Plan::QpeaMc => mi_qpea_mc(point.n, mc)?,
        Plan::SepOptimalExact => mi_sep_optimal(point.n, DensityMode::Exact, q)?,
        Plan::SepOptimalGaussian => mi_sep_optimal(point.n, DensityMode::Gaussian, q)?,
        Plan::SepOptimalMc => mi_sep_optimal_mc(point.n, mc)?,
        Plan::HammingClosed => mi_hamming_closed(point.n)?,
        Plan::HammingQuad => mi_hamming_quadrature(point.n, q)?,
        Plan::DetectionClosed => mi_sep_detection_qpea(t)?,
        Plan::DetectionQuad => mi_sep_detection_quadrature(t, q)?,
        Plan::TwoLevelQuad => mi_two_level(point.d, q)?,
        Plan::TwoLevelMc => mi_covariant_mc(&TwoLevelDensity::new(point.d)?, mc)?,
    };
    Ok(est.with_spec(*point))
}

/// The reference line each strategy is compared against.
pub fn asymptote_bits(point: &ProbeSpec) -> f64 {
    use StrategyKind::*;
    let n = point.n as f64;
    match point.kind {
        QpeaQubit | ParallelEntangled => (n + 1.0).log2() + c_qpea(),
        QpeaDDim | PeggBarnett => point.t.unwrap_or(1) as f64 * (point.d as f64).log2() + c_qpea(),
        SepOptimalPovm => 0.5 * n.log2() + c_sql_ent(),
        SepHamming => 0.5 * n.log2() + C_SEP_SEP,
        SepDetectionQpea => c_probe() * point.t.unwrap_or(0) as f64,
        TwoLevelSubspace => c_probe(),
    }
}

/// The N-dependent logarithmic part of [`asymptote_bits`]; zero for the
/// strategies whose reference line has none.
pub fn leading_bits(point: &ProbeSpec) -> f64 {
    use StrategyKind::*;
    let n = point.n as f64;
    match point.kind {
        QpeaQubit | ParallelEntangled => (n + 1.0).log2(),
        QpeaDDim | PeggBarnett => point.t.unwrap_or(1) as f64 * (point.d as f64).log2(),
        SepOptimalPovm | SepHamming => 0.5 * n.log2(),
        SepDetectionQpea | TwoLevelSubspace => 0.0,
    }
}
