//! Dense state-vector simulation of the qubit QPEA, used only as an oracle.

use crate::error::{Error, Result};
use crate::numerics::{cos_pi, sin_pi};
use num_complex::Complex64;

pub const MAX_ORACLE_QUBITS: u32 = 10;

/// Amplitudes of a `t`-qubit register; qubit `j` is bit `j` of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    t: u32,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|+>^t`.
    pub fn plus(t: u32) -> Result<Self> {
        if t == 0 || t > MAX_ORACLE_QUBITS {
            return Err(Error::Config(format!(
                "state-vector oracle supports 1..={MAX_ORACLE_QUBITS} qubits, got {t}"
            )));
        }
        let dim = 1usize << t;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            t,
            amplitudes: vec![a; dim],
        })
    }

    pub fn qubits(&self) -> u32 {
        self.t
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiply the `|1>` component of `qubit` by `exp(i 2 pi turns)`.
    pub fn phase(&mut self, qubit: u32, turns: f64) {
        let rot = Complex64::new(cos_pi(2.0 * turns), sin_pi(2.0 * turns));
        let mask = 1usize << qubit;
        for (x, a) in self.amplitudes.iter_mut().enumerate() {
            if x & mask != 0 {
                *a *= rot;
            }
        }
    }

    /// Exact inverse QFT as a dense matrix–vector product:
    /// `out[m] = 2^{-t/2} sum_x exp(-2 pi i m x / 2^t) in[x]`.
    pub fn inverse_qft(&mut self) {
        let dim = self.amplitudes.len();
        let roots: Vec<Complex64> = (0..dim)
            .map(|k| {
                let turns = k as f64 / dim as f64;
                Complex64::new(cos_pi(2.0 * turns), -sin_pi(2.0 * turns))
            })
            .collect();
        let scale = 1.0 / (dim as f64).sqrt();
        let out = (0..dim)
            .map(|m| {
                self.amplitudes
                    .iter()
                    .enumerate()
                    .map(|(x, a)| roots[(m * x) % dim] * a)
                    .sum::<Complex64>()
                    * scale
            })
            .collect();
        self.amplitudes = out;
    }

    /// Computational-basis outcome probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Simulate the QPEA circuit: `|+>^t`, qubit `j` acquires `2 pi 2^j phi`,
/// inverse QFT, measure. Returns the `2^t` outcome probabilities.
pub fn qpea_statevector(t: u32, phi: f64) -> Result<Vec<f64>> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("phase {phi} is not finite")));
    }
    let mut state = StateVector::plus(t)?;
    for j in 0..t {
        state.phase(j, (phi * (1u64 << j) as f64).rem_euclid(1.0));
    }
    state.inverse_qft();
    Ok(state.probabilities())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_qubit_quarter_turn() {
        let p = qpea_statevector(1, 0.25).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn representable_phase_is_point_mass() {
        let p = qpea_statevector(3, 5.0 / 8.0).unwrap();
        for (m, &pm) in p.iter().enumerate() {
            let want = if m == 5 { 1.0 } else { 0.0 };
            assert!((pm - want).abs() < 1e-14, "m={m}: {pm}");
        }
    }

    #[test]
    fn unitary_evolution_preserves_norm() {
        let mut s = StateVector::plus(6).unwrap();
        s.phase(2, 0.137);
        s.inverse_qft();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn register_size_limits() {
        assert!(qpea_statevector(11, 0.1).is_err());
        assert!(qpea_statevector(0, 0.1).is_err());
    }
}
