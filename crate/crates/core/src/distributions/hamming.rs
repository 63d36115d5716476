//! Product `|+>/|->` measurement on N separable equatorial qubits.
//!
//! A string's probability depends only on its Hamming weight `kappa`, so the
//! channel is modelled on weights with multiplicity `C(N, kappa)` instead of
//! the `2^N` strings.

use super::{wrap_unit, DiscreteChannel};
use crate::error::{Error, Result};
use crate::numerics::{cos_pi, log_binomial, sin_pi};
use std::f64::consts::LN_2;

/// Probability that `kappa` of `N` qubits give "-":
/// `C(N, kappa) sin^{2 kappa}(pi phi) cos^{2(N - kappa)}(pi phi)`.
pub fn hamming_weight_prob(kappa: u64, phi: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Hamming channel needs N >= 1".into()));
    }
    let ln_c = log_binomial(n, kappa)?;
    if !phi.is_finite() {
        return Err(Error::Domain(format!("phase {phi} is not finite")));
    }
    Ok(weight_prob(ln_c, kappa, n, wrap_unit(phi)))
}

fn weight_prob(ln_c: f64, kappa: u64, n: u64, phi: f64) -> f64 {
    let s = sin_pi(phi).abs();
    let c = cos_pi(phi).abs();
    let mut ln_p = ln_c;
    if kappa > 0 {
        if s == 0.0 {
            return 0.0;
        }
        ln_p += 2.0 * kappa as f64 * s.ln();
    }
    if kappa < n {
        if c == 0.0 {
            return 0.0;
        }
        ln_p += 2.0 * (n - kappa) as f64 * c.ln();
    }
    ln_p.exp()
}

/// Weight-aggregated marginals `C(2k, k) C(2(N-k), N-k) / 4^N`, `k = 0..=N`.
pub fn hamming_marginal_weights(n: u64) -> Result<Vec<f64>> {
    (0..=n)
        .map(|k| {
            let ln_w = log_binomial(2 * k, k)? + log_binomial(2 * (n - k), n - k)? - 2.0 * n as f64 * LN_2;
            Ok(ln_w.exp())
        })
        .collect()
}

/// Marginal probability of a single string of weight `kappa`:
/// `(2(N-k))! (2k)! / (4^N (N-k)! k! N!)`.
pub fn hamming_string_marginal(kappa: u64, n: u64) -> Result<f64> {
    if kappa > n {
        return Err(Error::Domain(format!("weight {kappa} exceeds N = {n}")));
    }
    let ln = log_binomial(2 * kappa, kappa)? + log_binomial(2 * (n - kappa), n - kappa)?
        - 2.0 * n as f64 * LN_2
        - log_binomial(n, kappa)?;
    Ok(ln.exp())
}

/// Weight channel `kappa in 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HammingChannel {
    n: u64,
    ln_binom: Vec<f64>,
}

impl HammingChannel {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Hamming channel needs N >= 1".into()));
        }
        let ln_binom = (0..=n).map(|k| log_binomial(n, k)).collect::<Result<_>>()?;
        Ok(Self { n, ln_binom })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of strings sharing weight `kappa`.
    pub fn string_multiplicity(&self, kappa: u64) -> f64 {
        self.ln_binom[kappa as usize].exp()
    }

    pub fn marginal(&self, kappa: u64) -> Result<f64> {
        hamming_string_marginal(kappa, self.n)
    }
}

impl DiscreteChannel for HammingChannel {
    fn outcome_count(&self) -> usize {
        self.n as usize + 1
    }

    fn prob(&self, m: usize, phi: f64) -> f64 {
        weight_prob(self.ln_binom[m], m as u64, self.n, wrap_unit(phi))
    }

    fn singular_grid(&self) -> Vec<f64> {
        vec![0.5]
    }
}
