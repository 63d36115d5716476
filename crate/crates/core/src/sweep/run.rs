use super::csv::{to_csv, ResultRow};
use super::evaluate::{estimated_seconds, evaluate, plan, Plan};
use super::spec::SweepSpec;
use crate::distributions::ProbeSpec;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::fs::File;
use std::io::Write;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<ResultRow>,
    pub csv: String,
}

/// Projected wall-clock seconds for the whole grid on `workers` threads.
pub fn estimate_cost(spec: &SweepSpec) -> Result<f64> {
    let points = spec.validate()?;
    let plans = plans(&points, spec)?;
    Ok(cost(&points, &plans, spec))
}

fn plans(points: &[ProbeSpec], spec: &SweepSpec) -> Result<Vec<Plan>> {
    points.iter().map(|p| plan(p, spec.method)).collect()
}

fn workers(spec: &SweepSpec) -> usize {
    spec.workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn cost(points: &[ProbeSpec], plans: &[Plan], spec: &SweepSpec) -> f64 {
    let total: f64 = points
        .iter()
        .zip(plans)
        .enumerate()
        .map(|(i, (p, &plan))| estimated_seconds(p, plan, &spec.mc.for_task(i as u64)))
        .sum();
    total / workers(spec).min(points.len()).max(1) as f64
}

/// Evaluate every grid point and render the CSV.
///
/// The spec, the cost estimate and the output path are all checked before
/// any point is computed. Points run on a pool of `spec.workers` threads and
/// come back in grid order; Monte Carlo points use `spec.mc.for_task(i)` for
/// grid index `i`. The CSV is also written to `spec.output_path` when set.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput> {
    let points = spec.validate()?;
    let plans = plans(&points, spec)?;
    let projected = cost(&points, &plans, spec);
    if projected > spec.budget_secs && !spec.force {
        return Err(Error::Config(format!(
            "projected runtime {projected:.0} s exceeds the budget of {:.0} s; pass --force to run anyway",
            spec.budget_secs
        )));
    }
    let mut file = match &spec.output_path {
        Some(path) => Some(File::create(path).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?),
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers(spec))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let rows = pool.install(|| {
        points
            .par_iter()
            .zip(plans.par_iter())
            .enumerate()
            .map(|(i, (point, &plan))| {
                let start = Instant::now();
                let est = evaluate(point, plan, &spec.quadrature, &spec.mc.for_task(i as u64))?;
                let ms = spec.record_timing.then(|| start.elapsed().as_secs_f64() * 1e3);
                ResultRow::from_estimate(&est, ms)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let csv = to_csv(&rows, spec.emit_asymptote_columns);
    if let Some(f) = file.as_mut() {
        f.write_all(csv.as_bytes())?;
        f.flush()?;
    }
    Ok(SweepOutput { rows, csv })
}
