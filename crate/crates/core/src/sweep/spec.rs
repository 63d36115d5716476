use crate::distributions::{ProbeSpec, StrategyKind};
use crate::error::{Error, Result};
use crate::numerics::{McSpec, QuadratureSpec};
use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Default wall-clock budget for a sweep, in seconds.
pub const DEFAULT_BUDGET_SECS: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMethod {
    Quad,
    Mc,
    ClosedForm,
    #[default]
    Auto,
}

impl SweepMethod {
    pub fn name(self) -> &'static str {
        match self {
            SweepMethod::Quad => "quad",
            SweepMethod::Mc => "mc",
            SweepMethod::ClosedForm => "closed-form",
            SweepMethod::Auto => "auto",
        }
    }

    /// Whether `kind` has an evaluator for this method.
    pub fn supports(self, kind: StrategyKind) -> bool {
        use StrategyKind::*;
        match self {
            SweepMethod::Quad | SweepMethod::Auto => true,
            SweepMethod::ClosedForm => matches!(kind, SepHamming | SepDetectionQpea),
            SweepMethod::Mc => !matches!(kind, SepHamming | SepDetectionQpea),
        }
    }
}

impl fmt::Display for SweepMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(SweepMethod::Quad),
            "mc" => Ok(SweepMethod::Mc),
            "closed-form" => Ok(SweepMethod::ClosedForm),
            "auto" => Ok(SweepMethod::Auto),
            other => Err(Error::Config(format!(
                "unknown method '{other}' (expected quad, mc, closed-form or auto)"
            ))),
        }
    }
}

/// Grid of strategy parameters. `DT` is the Cartesian product, `d` outermost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grid {
    N(Vec<u64>),
    T(Vec<u32>),
    DT { d: Vec<u64>, t: Vec<u32> },
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::N(v) => v.len(),
            Grid::T(v) => v.len(),
            Grid::DT { d, t } => d.len() * t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self) -> Result<()> {
        match self {
            Grid::N(v) => increasing("n", v),
            Grid::T(v) => increasing("t", v),
            Grid::DT { d, t } => {
                increasing("d", d)?;
                increasing("t", t)
            }
        }
    }

    /// One [`ProbeSpec`] per grid point, in grid order.
    pub fn points(&self, kind: StrategyKind) -> Result<Vec<ProbeSpec>> {
        self.validate()?;
        use StrategyKind::*;
        let wrong = |axis: &str| Error::Config(format!("strategy {kind} does not take a {axis} grid"));
        match (kind, self) {
            (QpeaQubit, Grid::N(ns)) => ns.iter().map(|&n| ProbeSpec::qpea(n)).collect(),
            (QpeaQubit, Grid::T(ts)) => ts.iter().map(|&t| ProbeSpec::qpea_register(t)).collect(),
            (ParallelEntangled | SepDetectionQpea, Grid::T(ts)) => ts.iter().map(|&t| register_spec(kind, t)).collect(),
            (ParallelEntangled | SepDetectionQpea, Grid::N(ns)) => {
                ns.iter().map(|&n| register_spec(kind, register_width(n)?)).collect()
            }
            (QpeaDDim, Grid::DT { d, t }) => d
                .iter()
                .flat_map(|&d| t.iter().map(move |&t| ProbeSpec::qpea_ddim(d, t)))
                .collect(),
            (PeggBarnett | TwoLevelSubspace, Grid::DT { d, t }) => {
                if t.as_slice() != [1] {
                    return Err(Error::Config(format!("strategy {kind} takes a d grid with t = 1")));
                }
                d.iter()
                    .map(|&d| {
                        if kind == PeggBarnett {
                            ProbeSpec::pegg_barnett(d)
                        } else {
                            ProbeSpec::two_level(d)
                        }
                    })
                    .collect()
            }
            (SepOptimalPovm, Grid::N(ns)) => ns.iter().map(|&n| ProbeSpec::sep_optimal(n)).collect(),
            (SepHamming, Grid::N(ns)) => ns.iter().map(|&n| ProbeSpec::sep_hamming(n)).collect(),
            (_, Grid::N(_)) => Err(wrong("n")),
            (_, Grid::T(_)) => Err(wrong("t")),
            (_, Grid::DT { .. }) => Err(wrong("d")),
        }
        .map_err(as_config)
    }
}

fn register_spec(kind: StrategyKind, t: u32) -> Result<ProbeSpec> {
    if kind == StrategyKind::ParallelEntangled {
        ProbeSpec::parallel_entangled(t)
    } else {
        ProbeSpec::sep_detection(t)
    }
}

fn register_width(n: u64) -> Result<u32> {
    let m = n.checked_add(1).filter(|m| m.is_power_of_two() && *m >= 2);
    m.map(|m| m.trailing_zeros())
        .ok_or_else(|| Error::Config(format!("N = {n} is not of the form 2^t - 1")))
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Domain(msg) => Error::Config(msg),
        other => other,
    }
}

fn increasing<T: PartialOrd + fmt::Display>(axis: &str, v: &[T]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Config(format!("{axis} grid is empty")));
    }
    if let Some(w) = v.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::Config(format!(
            "{axis} grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// A validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub strategy: StrategyKind,
    pub grid: Grid,
    pub method: SweepMethod,
    pub quadrature: QuadratureSpec,
    /// Master Monte Carlo settings; each grid point gets `mc.for_task(index)`.
    pub mc: McSpec,
    /// CSV destination; `None` leaves writing to the caller.
    pub output_path: Option<PathBuf>,
    /// Append `offset_bits,ratio` columns.
    pub emit_asymptote_columns: bool,
    /// Fill `runtime_ms`. Off by default so that output is byte-stable.
    pub record_timing: bool,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub budget_secs: f64,
    /// Run even when the cost estimate exceeds the budget.
    pub force: bool,
}

impl SweepSpec {
    pub fn new(strategy: StrategyKind, grid: Grid) -> Self {
        Self {
            strategy,
            grid,
            method: SweepMethod::Auto,
            quadrature: QuadratureSpec::default(),
            mc: McSpec::default(),
            output_path: None,
            emit_asymptote_columns: false,
            record_timing: false,
            workers: None,
            budget_secs: DEFAULT_BUDGET_SECS,
            force: false,
        }
    }

    /// Check everything that can be checked without computing; returns the grid points.
    pub fn validate(&self) -> Result<Vec<ProbeSpec>> {
        if !self.method.supports(self.strategy) {
            return Err(Error::Config(format!(
                "method {} is not available for strategy {}",
                self.method, self.strategy
            )));
        }
        self.quadrature.validate().map_err(as_config)?;
        self.mc.validate()?;
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.budget_secs.is_nan() || self.budget_secs <= 0.0 {
            return Err(Error::Config("budget must be a positive number of seconds".into()));
        }
        self.grid.points(self.strategy)
    }
}

/// Sweep settings as read from a TOML file or assembled from flags.
///
/// Every field is optional so that layers (environment, file, flags) can be
/// merged before conversion into a [`SweepSpec`].
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub strategy: Option<String>,
    pub n: Option<Vec<u64>>,
    pub t: Option<Vec<u32>>,
    pub d: Option<Vec<u64>>,
    pub method: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub batch: Option<u64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_depth: Option<u32>,
    pub output: Option<PathBuf>,
    pub emit_asymptote_columns: Option<bool>,
    pub timing: Option<bool>,
    pub workers: Option<usize>,
    pub budget_secs: Option<f64>,
    pub force: Option<bool>,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("sweep file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Fields set in `over` replace those in `self`. Grid axes are replaced
    /// as a group when `over` sets any of them.
    pub fn merge(self, over: SweepConfig) -> SweepConfig {
        let grid_override = over.n.is_some() || over.t.is_some() || over.d.is_some();
        let (n, t, d) = if grid_override {
            (over.n, over.t, over.d)
        } else {
            (self.n, self.t, self.d)
        };
        SweepConfig {
            strategy: over.strategy.or(self.strategy),
            n,
            t,
            d,
            method: over.method.or(self.method),
            seed: over.seed.or(self.seed),
            samples: over.samples.or(self.samples),
            batch: over.batch.or(self.batch),
            rel_tol: over.rel_tol.or(self.rel_tol),
            abs_tol: over.abs_tol.or(self.abs_tol),
            max_depth: over.max_depth.or(self.max_depth),
            output: over.output.or(self.output),
            emit_asymptote_columns: over.emit_asymptote_columns.or(self.emit_asymptote_columns),
            timing: over.timing.or(self.timing),
            workers: over.workers.or(self.workers),
            budget_secs: over.budget_secs.or(self.budget_secs),
            force: over.force.or(self.force),
        }
    }

    pub fn into_spec(self) -> Result<SweepSpec> {
        let strategy: StrategyKind = self
            .strategy
            .as_deref()
            .ok_or_else(|| Error::Config("no strategy given".into()))?
            .parse()?;
        let grid = match (self.n, self.t, self.d) {
            (None, None, None) => return Err(Error::Config("no grid given (n, t or d)".into())),
            (Some(n), None, None) => Grid::N(n),
            (None, Some(t), None) => Grid::T(t),
            (None, t, Some(d)) => Grid::DT {
                d,
                t: t.unwrap_or_else(|| vec![1]),
            },
            (Some(_), _, _) => return Err(Error::Config("give either n or t/d, not both".into())),
        };
        let mut spec = SweepSpec::new(strategy, grid);
        if let Some(m) = self.method {
            spec.method = m.parse()?;
        }
        let q = &mut spec.quadrature;
        q.rel_tol = self.rel_tol.unwrap_or(q.rel_tol);
        q.abs_tol = self.abs_tol.unwrap_or(q.abs_tol);
        q.max_depth = self.max_depth.unwrap_or(q.max_depth);
        let mc = &mut spec.mc;
        mc.seed = self.seed.unwrap_or(mc.seed);
        mc.samples = self.samples.unwrap_or(mc.samples);
        mc.batch = self.batch.unwrap_or(mc.batch);
        spec.output_path = self.output;
        spec.emit_asymptote_columns = self.emit_asymptote_columns.unwrap_or(false);
        spec.record_timing = self.timing.unwrap_or(false);
        spec.workers = self.workers;
        spec.budget_secs = self.budget_secs.unwrap_or(DEFAULT_BUDGET_SECS);
        spec.force = self.force.unwrap_or(false);
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in [
            SweepMethod::Quad,
            SweepMethod::Mc,
            SweepMethod::ClosedForm,
            SweepMethod::Auto,
        ] {
            assert_eq!(m.name().parse::<SweepMethod>().unwrap(), m);
        }
        assert!("gauss".parse::<SweepMethod>().is_err());
    }

    #[test]
    fn empty_or_unsorted_grid_rejected() {
        let spec = SweepSpec::new(StrategyKind::QpeaQubit, Grid::N(vec![]));
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
        let spec = SweepSpec::new(StrategyKind::QpeaQubit, Grid::N(vec![3, 3]));
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
        let spec = SweepSpec::new(
            StrategyKind::QpeaDDim,
            Grid::DT {
                d: vec![2, 3],
                t: vec![2, 1],
            },
        );
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn closed_form_only_for_hamming_and_detection() {
        let mut spec = SweepSpec::new(StrategyKind::QpeaQubit, Grid::N(vec![3]));
        spec.method = SweepMethod::ClosedForm;
        assert!(spec.validate().is_err());
        let mut spec = SweepSpec::new(StrategyKind::SepHamming, Grid::N(vec![3]));
        spec.method = SweepMethod::ClosedForm;
        assert!(spec.validate().is_ok());
        let mut spec = SweepSpec::new(StrategyKind::SepDetectionQpea, Grid::T(vec![3]));
        spec.method = SweepMethod::ClosedForm;
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn grid_points_in_order() {
        let grid = Grid::DT {
            d: vec![2, 3],
            t: vec![1, 2],
        };
        let pts = grid.points(StrategyKind::QpeaDDim).unwrap();
        let dt: Vec<_> = pts.iter().map(|p| (p.d, p.t.unwrap())).collect();
        assert_eq!(dt, [(2, 1), (2, 2), (3, 1), (3, 2)]);
        let pts = Grid::N(vec![1, 7, 127]).points(StrategyKind::SepDetectionQpea).unwrap();
        assert_eq!(pts.iter().map(|p| p.t.unwrap()).collect::<Vec<_>>(), [1, 3, 7]);
        assert!(Grid::N(vec![6]).points(StrategyKind::ParallelEntangled).is_err());
        assert!(Grid::T(vec![2]).points(StrategyKind::SepOptimalPovm).is_err());
        assert!(Grid::DT { d: vec![4], t: vec![2] }
            .points(StrategyKind::TwoLevelSubspace)
            .is_err());
    }

    #[test]
    fn config_layers_and_conversion() {
        let file =
            SweepConfig::from_toml("strategy = \"sep-hamming\"\nn = [10, 100]\nmethod = \"closed-form\"\nseed = 4\n")
                .unwrap();
        let flags = SweepConfig {
            seed: Some(9),
            ..Default::default()
        };
        let spec = file.merge(flags).into_spec().unwrap();
        assert_eq!(spec.strategy, StrategyKind::SepHamming);
        assert_eq!(spec.grid, Grid::N(vec![10, 100]));
        assert_eq!(spec.method, SweepMethod::ClosedForm);
        assert_eq!(spec.mc.seed, 9);
    }

    #[test]
    fn config_rejects_unknown_keys_and_mixed_grids() {
        assert!(SweepConfig::from_toml("strategy = \"qpea\"\nsamplez = 3\n").is_err());
        let cfg = SweepConfig::from_toml("strategy = \"qpea\"\nn = [1]\nt = [1]\n").unwrap();
        assert!(matches!(cfg.into_spec(), Err(Error::Config(_))));
        let cfg = SweepConfig::from_toml("strategy = \"warp\"\nn = [1]\n").unwrap();
        assert!(matches!(cfg.into_spec(), Err(Error::Config(_))));
    }
}
