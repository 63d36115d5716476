use super::{wrap_unit, DiscreteChannel};
use crate::error::{Error, Result};
use crate::numerics::sin_pi;
use std::f64::consts::PI;

/// Below this `|sin(pi x)|` the kernel is evaluated from its limit form.
const PEAK_THRESHOLD: f64 = 1e-7;

/// `sin^2(pi M x) / (M^2 sin^2(pi x))`, the phase-estimation kernel with `M`
/// outcomes at offset `x = phi - m/M`.
///
/// At `x` near an integer the 0/0 form is replaced by
/// `(sinc(M u) / sinc(u))^2` with `u = pi (x - round(x))`, which is the same
/// function with the common factor cancelled.
pub fn qpea_ratio(outcomes: f64, x: f64) -> f64 {
    let den = sin_pi(x);
    if den.abs() < PEAK_THRESHOLD {
        let u = PI * (x - x.round());
        let r = sinc(outcomes * u) / sinc(u);
        return r * r;
    }
    let r = sin_pi(outcomes * x) / (outcomes * den);
    r * r
}

fn sinc(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// QPEA conditional probability `p(m | phi)` for `N` applications (`N + 1` outcomes).
pub fn qpea_prob(m: u64, phi: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("QPEA needs N >= 1".into()));
    }
    if m > n {
        return Err(Error::Domain(format!("outcome {m} out of range 0..={n}")));
    }
    check_phase(phi)?;
    let outcomes = (n + 1) as f64;
    Ok(qpea_ratio(outcomes, wrap_unit(phi) - m as f64 / outcomes))
}

/// d-ary QPEA with `t` digits: `d^t` outcomes.
pub fn qpea_ddim_prob(m: u64, phi: f64, d: u64, t: u32) -> Result<f64> {
    let outcomes = ddim_outcomes(d, t)?;
    if m >= outcomes {
        return Err(Error::Domain(format!("outcome {m} out of range 0..{outcomes}")));
    }
    check_phase(phi)?;
    let outcomes = outcomes as f64;
    Ok(qpea_ratio(outcomes, wrap_unit(phi) - m as f64 / outcomes))
}

pub(crate) fn ddim_outcomes(d: u64, t: u32) -> Result<u64> {
    if d < 2 {
        return Err(Error::Domain(format!("probe dimension d = {d} must be >= 2")));
    }
    if t < 1 {
        return Err(Error::Domain("digit count t must be >= 1".into()));
    }
    d.checked_pow(t)
        .filter(|&m| m < (1u64 << 53))
        .ok_or_else(|| Error::Domain(format!("{d}^{t} outcomes is too large")))
}

fn check_phase(phi: f64) -> Result<()> {
    if phi.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("phase {phi} is not finite")))
    }
}

/// Phase-estimation channel with `M` equally spaced outcomes.
///
/// Covers the qubit QPEA (`M = N + 1`), its parallel-entangled twin, the
/// d-ary QPEA (`M = d^t`) and the Pegg–Barnett measurement (`M = d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QpeaChannel {
    outcomes: u64,
}

impl QpeaChannel {
    pub fn qubit(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("QPEA needs N >= 1".into()));
        }
        Ok(Self { outcomes: n + 1 })
    }

    pub fn ddim(d: u64, t: u32) -> Result<Self> {
        Ok(Self {
            outcomes: ddim_outcomes(d, t)?,
        })
    }

    pub fn outcomes(&self) -> u64 {
        self.outcomes
    }
}

impl DiscreteChannel for QpeaChannel {
    fn outcome_count(&self) -> usize {
        self.outcomes as usize
    }

    fn prob(&self, m: usize, phi: f64) -> f64 {
        debug_assert!((m as u64) < self.outcomes);
        let outcomes = self.outcomes as f64;
        qpea_ratio(outcomes, wrap_unit(phi) - m as f64 / outcomes)
    }

    fn singular_grid(&self) -> Vec<f64> {
        let outcomes = self.outcomes as f64;
        (1..self.outcomes).map(|k| k as f64 / outcomes).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn peak_and_zero() {
        assert_eq!(qpea_prob(0, 0.0, 7).unwrap(), 1.0);
        assert!(qpea_prob(3, 5.0 / 8.0, 7).unwrap().abs() < 1e-30);
        assert!((qpea_prob(0, 0.25, 1).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(qpea_ddim_prob(0, 0.0, 3, 2).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(qpea_prob(8, 0.1, 7).is_err());
        assert!(qpea_prob(0, 0.1, 0).is_err());
        assert!(qpea_prob(0, f64::NAN, 3).is_err());
        assert!(qpea_ddim_prob(9, 0.1, 3, 2).is_err());
        assert!(qpea_ddim_prob(0, 0.1, 1, 2).is_err());
        assert!(qpea_ddim_prob(0, 0.1, 2, 0).is_err());
        assert!(qpea_ddim_prob(0, 0.1, 10, 30).is_err());
    }

    #[test]
    fn ddim_sums_to_one() {
        let s: f64 = (0..9).map(|m| qpea_ddim_prob(m, 0.17, 3, 2).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn limit_branch_is_continuous() {
        // just inside and just outside the series threshold
        for outcomes in [2.0, 64.0, 1024.0, 100_000.0] {
            for x in [0.9e-7 / PI, 1.1e-7 / PI, 3e-7, -2e-8] {
                let series = {
                    let u = PI * x;
                    (sinc(outcomes * u) / sinc(u)).powi(2)
                };
                let direct = (sin_pi(outcomes * x) / (outcomes * sin_pi(x))).powi(2);
                assert!(
                    (series - direct).abs() < 1e-12,
                    "M={outcomes} x={x}: {series} vs {direct}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn ddim_reduces_to_qubit(t in 1u32..8, phi in 0.0f64..1.0, m_frac in 0.0f64..1.0) {
            let n = (1u64 << t) - 1;
            let m = ((m_frac * (n + 1) as f64) as u64).min(n);
            let a = qpea_prob(m, phi, n).unwrap();
            let b = qpea_ddim_prob(m, phi, 2, t).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn covariant_under_grid_shift(n in 1u64..300, phi in 0.0f64..1.0, m_frac in 0.0f64..1.0, k_frac in 0.0f64..1.0) {
            let outcomes = n + 1;
            let m = ((m_frac * outcomes as f64) as u64).min(n);
            let k = ((k_frac * outcomes as f64) as u64).min(n);
            let shifted_phi = (phi + k as f64 / outcomes as f64).rem_euclid(1.0);
            let a = qpea_prob(m, phi, n).unwrap();
            let b = qpea_prob((m + k) % outcomes, shifted_phi, n).unwrap();
            prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
        }

        #[test]
        fn channel_normalized(n in 1u64..2000, phi in 0.0f64..1.0) {
            let ch = QpeaChannel::qubit(n).unwrap();
            let s: f64 = (0..ch.outcome_count()).map(|m| ch.prob(m, phi)).sum();
            prop_assert!((s - 1.0).abs() < 1e-10);
            for m in 0..ch.outcome_count() {
                let p = ch.prob(m, phi);
                prop_assert!((0.0..=1.0 + 1e-12).contains(&p));
            }
        }
    }
}
