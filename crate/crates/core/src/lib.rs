//! Information-theoretic quantum metrology.
//!
//! How many bits of an unknown phase `phi` can an estimation strategy that
//! applies `U_phi = |0><0| + e^{i 2 pi phi}|1><1|` a total of `N` times
//! recover? This crate computes the mutual information `I(outcome : phi)`
//! under a uniform prior for:
//!
//! - the quantum phase estimation algorithm (sequential, or parallel with
//!   N00N groups), which reaches `log2(N+1) - 1.2199`;
//! - the d-ary QPEA and Pegg–Barnett probes, gaining `log2 d` per digit;
//! - separable parallel probes with the optimal covariant measurement
//!   (`log2(N)/2 + 0.604`) or the product `|+>/|->` measurement
//!   (`log2(N)/2 - 0.395`);
//! - QPEA groups read out qubit by qubit (`0.4427` bits per group);
//! - a d-level probe restricted to two levels (`0.4427` bits for any d).
//!
//! It also provides the benchmark lines (Heisenberg bound `log2(N+1)`,
//! standard quantum limit `log2(N)/2`, separable Holevo entropy) and a dense
//! state-vector QPEA simulator used as an independent oracle.
//!
//! ```
//! use qmetro::{mi, numerics::QuadratureSpec};
//!
//! let est = mi::mi_qpea_reduced(127, &QuadratureSpec::default()).unwrap();
//! assert!((est.bits - (7.0 - 1.2199)).abs() < 0.02);
//! ```

pub mod bounds;
pub mod distributions;
pub mod error;
pub mod mi;
pub mod numerics;
pub mod sweep;

pub use error::{Error, Result};
