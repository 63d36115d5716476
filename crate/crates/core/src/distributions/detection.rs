//! Per-qubit `|+>/|->` detection of the N00N groups of the parallel QPEA.
//!
//! Group `j` holds `2^j` qubits that picked up phase `2 pi 2^j phi`. Only the
//! parity of the measured string matters: even strings share
//! `cos^2(pi phi 2^j)`, odd strings share `sin^2(pi phi 2^j)`.

use super::{wrap_unit, DiscreteChannel};
use crate::error::{Error, Result};
use crate::numerics::{cos_pi, sin_pi};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

const MAX_GROUP: u32 = 52;

fn check(phi: f64, j: u32) -> Result<f64> {
    if j > MAX_GROUP {
        return Err(Error::Domain(format!("group index {j} exceeds {MAX_GROUP}")));
    }
    if !phi.is_finite() {
        return Err(Error::Domain(format!("phase {phi} is not finite")));
    }
    Ok(wrap_unit(phi) * (1u64 << j) as f64)
}

/// Aggregated probability of an even/odd string from group `j`.
pub fn sep_detection_group_prob(parity: Parity, phi: f64, j: u32) -> Result<f64> {
    let x = check(phi, j)?;
    Ok(match parity {
        Parity::Even => cos_pi(x).powi(2),
        Parity::Odd => sin_pi(x).powi(2),
    })
}

/// Probability of one particular string of the given parity, i.e. the group
/// probability shared among `2^(2^j - 1)` strings. Underflows to 0 for `j >= 11`.
pub fn sep_detection_string_prob(parity: Parity, phi: f64, j: u32) -> Result<f64> {
    let p = sep_detection_group_prob(parity, phi, j)?;
    let strings_exp = (1u64 << j) - 1;
    Ok(p * (-(strings_exp as f64)).exp2())
}

/// Two-outcome parity channel of group `j` (outcome 0 = even, 1 = odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SepDetectionChannel {
    j: u32,
}

impl SepDetectionChannel {
    pub fn new(j: u32) -> Result<Self> {
        check(0.0, j)?;
        Ok(Self { j })
    }

    pub fn group(&self) -> u32 {
        self.j
    }
}

impl DiscreteChannel for SepDetectionChannel {
    fn outcome_count(&self) -> usize {
        2
    }

    fn prob(&self, m: usize, phi: f64) -> f64 {
        let x = wrap_unit(phi) * (1u64 << self.j) as f64;
        if m == 0 {
            cos_pi(x).powi(2)
        } else {
            sin_pi(x).powi(2)
        }
    }

    fn singular_grid(&self) -> Vec<f64> {
        let cells = 1u64 << (self.j + 1);
        (1..cells).map(|k| k as f64 / cells as f64).collect()
    }
}
