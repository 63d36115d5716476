//! Outcome distributions of the estimation strategies.
//!
//! Two shapes cover every strategy: a [`DiscreteChannel`] (finite outcome
//! set, `p(m | phi)`) and a [`CovariantDensity`] (continuous estimate whose
//! density depends only on `theta = phi_hat - phi mod 1`).

mod detection;
mod hamming;
mod probe;
mod qpea;
mod sep_optimal;
mod two_level;

pub use detection::{sep_detection_group_prob, sep_detection_string_prob, Parity, SepDetectionChannel};
pub use hamming::{hamming_marginal_weights, hamming_string_marginal, hamming_weight_prob, HammingChannel};
pub use probe::{ProbeSpec, StrategyKind};
pub use qpea::{qpea_ddim_prob, qpea_prob, qpea_ratio, QpeaChannel};
pub use sep_optimal::{sep_optimal_density, DensityMode, SepOptimalDensity};
pub use two_level::{two_level_density, TwoLevelDensity, UniformDensity};

/// A channel from the phase `phi in [0, 1)` to a finite outcome set.
pub trait DiscreteChannel: Sync {
    fn outcome_count(&self) -> usize;

    /// `p(m | phi)`; `m` must be below [`outcome_count`](Self::outcome_count).
    fn prob(&self, m: usize, phi: f64) -> f64;

    /// Abscissae in `(0, 1)` where the closed form is 0/0 or `p log p` loses
    /// smoothness. Quadrature splits there.
    fn singular_grid(&self) -> Vec<f64>;
}

/// A shift-invariant density of the estimate around the true phase.
pub trait CovariantDensity: Sync {
    /// Density at `theta`, reduced mod 1 by the implementation.
    fn density(&self, theta: f64) -> f64;

    /// Scale on which the density varies near `theta = 0`.
    fn peak_width(&self) -> f64;

    /// Breakpoints for quadrature; by default a ladder of nodes on both sides
    /// of the peak at `theta = 0 ≡ 1`.
    fn quadrature_nodes(&self) -> Vec<f64> {
        peak_ladder(self.peak_width())
    }
}

/// Nodes at `k w / 2` for `k = 1..=20` mirrored around `theta = 1`, plus 1/2.
pub(crate) fn peak_ladder(width: f64) -> Vec<f64> {
    let mut nodes = Vec::with_capacity(41);
    for k in 1..=20 {
        let x = 0.5 * k as f64 * width;
        if x >= 0.5 {
            break;
        }
        nodes.push(x);
        nodes.push(1.0 - x);
    }
    nodes.push(0.5);
    nodes.sort_by(f64::total_cmp);
    nodes
}

/// `theta mod 1` in `[0, 1)`.
#[inline]
pub(crate) fn wrap_unit(theta: f64) -> f64 {
    let r = theta.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}
