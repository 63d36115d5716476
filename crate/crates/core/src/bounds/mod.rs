//! Benchmark lines and brute-force oracles.

mod statevector;
mod verify;

pub use statevector::{qpea_statevector, StateVector, MAX_ORACLE_QUBITS};
pub use verify::{verify_bound_dominance, BoundCheck, BoundReport};

use crate::error::{Error, Result};
use crate::numerics::log_binomial;
use std::f64::consts::{LN_2, LOG2_E};

const MAX_HOLEVO_N: u64 = 100_000;

/// Information-theoretic Heisenberg bound `log2(N + 1)`.
pub fn heisenberg_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("bounds need N >= 1".into()));
    }
    Ok(((n + 1) as f64).log2())
}

/// Standard quantum limit `log2(N) / 2`.
pub fn sql_bound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("bounds need N >= 1".into()));
    }
    Ok(0.5 * (n as f64).log2())
}

/// Entropy of the phase-averaged state of `|+>^N`, i.e. of the binomial
/// weights `C(N, j) / 2^N`. This is the Holevo quantity of the separable
/// parallel input.
pub fn holevo_separable_entropy(n: u64) -> Result<f64> {
    if n == 0 || n > MAX_HOLEVO_N {
        return Err(Error::Domain(format!("Holevo entropy needs 1 <= N <= {MAX_HOLEVO_N}")));
    }
    let ln_2n = n as f64 * LN_2;
    let mut h = 0.0;
    for j in 0..=n {
        let ln_w = log_binomial(n, j)? - ln_2n;
        h -= ln_w.exp() * ln_w;
    }
    Ok(h * LOG2_E)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundLine {
    Heisenberg,
    Sql,
    HolevoSeparable,
}

impl BoundLine {
    pub fn value_at(self, n: u64) -> Result<f64> {
        match self {
            BoundLine::Heisenberg => heisenberg_bound(n),
            BoundLine::Sql => sql_bound(n),
            BoundLine::HolevoSeparable => holevo_separable_entropy(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::shannon_entropy_bits;
    use std::f64::consts::{E, PI};

    #[test]
    fn heisenberg_examples() {
        assert_eq!(heisenberg_bound(1).unwrap(), 1.0);
        assert_eq!(heisenberg_bound(7).unwrap(), 3.0);
        assert_eq!(heisenberg_bound(1023).unwrap(), 10.0);
        assert!(heisenberg_bound(0).is_err());
    }

    #[test]
    fn holevo_small_n_against_direct_entropy() {
        assert!((holevo_separable_entropy(1).unwrap() - 1.0).abs() < 1e-15);
        let direct = shannon_entropy_bits(&[0.125, 0.375, 0.375, 0.125]).unwrap();
        assert!((holevo_separable_entropy(3).unwrap() - direct).abs() < 1e-13);
        assert!((holevo_separable_entropy(3).unwrap() - 1.8113).abs() < 1e-4);
    }

    #[test]
    fn holevo_large_n_gaussian_entropy() {
        // de Moivre–Laplace: binomial(N, 1/2) ~ normal with variance N/4
        let n = 10_000u64;
        let gauss = 0.5 * (PI * E * n as f64 / 2.0).log2();
        assert!((holevo_separable_entropy(n).unwrap() - gauss).abs() < 0.01);
    }

    #[test]
    fn holevo_offset_increases_to_limit() {
        let limit = 0.5 * (PI * E / 2.0).log2();
        let offsets: Vec<f64> = [100u64, 1000, 10_000]
            .iter()
            .map(|&n| holevo_separable_entropy(n).unwrap() - 0.5 * (n as f64).log2())
            .collect();
        assert!(offsets[0] < offsets[1] && offsets[1] < offsets[2]);
        assert!(offsets[2] < limit && limit - offsets[2] < 1e-3);
        assert!((limit - 1.047).abs() < 1e-3);
    }

    #[test]
    fn bound_ordering() {
        for n in (2..200).chain((200..=10_000).step_by(97)) {
            let h = BoundLine::Heisenberg.value_at(n).unwrap();
            let hs = BoundLine::HolevoSeparable.value_at(n).unwrap();
            let s = BoundLine::Sql.value_at(n).unwrap();
            assert!(h >= hs && hs >= s, "N={n}: {h} {hs} {s}");
        }
    }
}
