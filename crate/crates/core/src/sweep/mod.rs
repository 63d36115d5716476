//! Parameter sweeps, CSV output and the verification suite behind the CLI.
//!
//! A [`SweepSpec`] names a strategy, a grid and a method. [`run_sweep`]
//! resolves each grid point to an evaluator, runs the points on a bounded
//! worker pool and renders the rows in grid order. [`SweepConfig`] is the
//! layered, all-optional form read from TOML files and command-line flags.

mod csv;
mod evaluate;
mod run;
mod spec;
mod verify;

pub use csv::{fmt_g12, to_csv, ResultRow, ASYMPTOTE_COLUMNS, CSV_HEADER};
pub use evaluate::{asymptote_bits, estimated_seconds, evaluate, leading_bits, plan, Plan};
pub use run::{estimate_cost, run_sweep, SweepOutput};
pub use spec::{Grid, SweepConfig, SweepMethod, SweepSpec, DEFAULT_BUDGET_SECS};
pub use verify::{
    check_channel_normalization, check_density_normalization, random_phases, reference_estimates, run_verify,
    statevector_tv_distance, CheckOutcome, VerifyLevel, VerifyReport, VERIFY_SEED,
};
