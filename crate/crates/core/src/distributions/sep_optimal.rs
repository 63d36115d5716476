//! Optimal covariant measurement on N separable equatorial qubits.
//!
//! The state `|phi>^N` expands on symmetric states with amplitudes
//! `a_n = sqrt(C(N, n) / 2^N)`, and the covariant POVM built from the uniform
//! seed vector yields the density
//! `F(theta) = |sum_n a_n exp(i 2 pi theta n)|^2`.
//! Because `a_n = a_{N-n}` the sum is real after factoring out
//! `exp(i pi theta N)`, so `F = (sum_n a_n cos(2 pi theta (n - N/2)))^2`.

use super::{peak_ladder, wrap_unit, CovariantDensity};
use crate::error::{Error, Result};
use crate::numerics::{cos_pi, log_binomial, sin_pi};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMode {
    /// Finite-N amplitude sum.
    Exact,
    /// Large-N limit `sqrt(2 pi N) exp(-2 pi^2 theta'^2 N)`.
    Gaussian,
}

/// Amplitudes below `exp(-AMPLITUDE_CUTOFF)` times the central one are dropped.
const AMPLITUDE_CUTOFF: f64 = 40.0;

/// Re-anchor the phase rotation every this many terms.
const REANCHOR: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SepOptimalDensity {
    n: u64,
    mode: DensityMode,
    /// Index of `amps[0]` in `0..=N`.
    first: u64,
    amps: Vec<f64>,
}

impl SepOptimalDensity {
    pub fn new(n: u64, mode: DensityMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("separable strategy needs N >= 1".into()));
        }
        let (first, amps) = match mode {
            DensityMode::Gaussian => (0, Vec::new()),
            DensityMode::Exact => {
                let center = log_binomial(n, n / 2)?;
                let mut first = None;
                let mut amps = Vec::new();
                // the window lies within ~sqrt(40 N) of N/2; skip the far tail
                let reach = 2.0 * (2.0 * AMPLITUDE_CUTOFF * n as f64).sqrt() + 16.0;
                let start = (n / 2).saturating_sub(reach as u64);
                for k in start..=n {
                    let ln_c = log_binomial(n, k)?;
                    if 0.5 * (ln_c - center) < -AMPLITUDE_CUTOFF {
                        if first.is_some() {
                            break;
                        }
                        continue;
                    }
                    first.get_or_insert(k);
                    amps.push((0.5 * (ln_c - n as f64 * LN_2)).exp());
                }
                (first.unwrap_or(0), amps)
            }
        };
        Ok(Self { n, mode, first, amps })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mode(&self) -> DensityMode {
        self.mode
    }

    /// Number of amplitudes kept by the exact mode.
    pub fn terms(&self) -> usize {
        self.amps.len()
    }

    fn exact(&self, theta: f64) -> f64 {
        // phase of term n is 2 pi theta (n - N/2) = pi theta (2n - N)
        let offset = |k: u64| theta * (2.0 * k as f64 - self.n as f64);
        let (step_s, step_c) = (2.0 * PI * theta).sin_cos();
        let mut sum = 0.0;
        let (mut c, mut s) = (0.0, 0.0);
        for (i, &a) in self.amps.iter().enumerate() {
            if i % REANCHOR == 0 {
                let x = offset(self.first + i as u64);
                c = cos_pi(x);
                s = sin_pi(x);
            } else {
                let c_next = c * step_c - s * step_s;
                s = s * step_c + c * step_s;
                c = c_next;
            }
            sum += a * c;
        }
        sum * sum
    }

    fn gaussian(&self, theta: f64) -> f64 {
        let dist = theta - theta.round();
        let n = self.n as f64;
        (2.0 * PI * n).sqrt() * (-2.0 * PI * PI * dist * dist * n).exp()
    }
}

impl CovariantDensity for SepOptimalDensity {
    fn density(&self, theta: f64) -> f64 {
        let theta = wrap_unit(theta);
        match self.mode {
            DensityMode::Exact => self.exact(theta),
            DensityMode::Gaussian => self.gaussian(theta),
        }
    }

    fn peak_width(&self) -> f64 {
        1.0 / (self.n as f64).sqrt()
    }

    fn quadrature_nodes(&self) -> Vec<f64> {
        peak_ladder(self.peak_width())
    }
}

/// Density of the optimal covariant estimate at offset `theta`.
pub fn sep_optimal_density(theta: f64, n: u64, mode: DensityMode) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta {theta} is not finite")));
    }
    Ok(SepOptimalDensity::new(n, mode)?.density(theta))
}
