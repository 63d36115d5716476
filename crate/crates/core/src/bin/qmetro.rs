//! `qmetro`: mutual-information sweeps, single evaluations, bounds and the
//! verification suite.
//!
//! Exit status: 0 on success, 1 when a verification check or a computation
//! fails, 2 for invalid configuration. `QMETRO_SEED` and `QMETRO_WORKERS`
//! provide defaults below config files and flags.

use clap::{Args, Parser, Subcommand};
use qmetro::bounds::{heisenberg_bound, holevo_separable_entropy, sql_bound};
use qmetro::sweep::{evaluate, fmt_g12, plan, run_sweep, run_verify, to_csv, ResultRow, SweepConfig, VerifyLevel};
use qmetro::{Error, Result};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qmetro",
    version,
    about = "Information-theoretic bounds for quantum phase estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutual information of one strategy at one size, as a one-row CSV.
    Mi(MiArgs),
    /// Evaluate a strategy over a grid and write CSV.
    Sweep(SweepArgs),
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value = "fast")]
        level: String,
    },
    /// Heisenberg, separable Holevo and SQL lines as CSV.
    Bounds {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
    },
}

#[derive(Args, Default)]
struct Numerics {
    /// quad, mc, closed-form or auto.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    max_depth: Option<u32>,
}

impl Numerics {
    fn into_config(self) -> SweepConfig {
        SweepConfig {
            method: self.method,
            seed: self.seed,
            samples: self.samples,
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_depth: self.max_depth,
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct MiArgs {
    /// qpea, parallel-entangled, qpea-ddim, pegg-barnett, sep-optimal,
    /// sep-hamming, sep-detection or two-level.
    strategy: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    d: Option<u64>,
    #[command(flatten)]
    numerics: Numerics,
    /// Run even when the cost estimate exceeds the budget.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML sweep file; flags override its entries.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    t_list: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    d_list: Option<Vec<u64>>,
    #[command(flatten)]
    numerics: Numerics,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Append offset_bits and ratio columns.
    #[arg(long)]
    asymptote_columns: bool,
    /// Fill runtime_ms (output is then no longer byte-stable).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    workers: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    force: bool,
}

fn env_defaults() -> Result<SweepConfig> {
    fn read<T: std::str::FromStr>(name: &str) -> Result<Option<T>> {
        match std::env::var(name) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("{name}={v} is not a valid value"))),
            Err(_) => Ok(None),
        }
    }
    Ok(SweepConfig {
        seed: read("QMETRO_SEED")?,
        workers: read("QMETRO_WORKERS")?,
        ..Default::default()
    })
}

fn cmd_mi(args: MiArgs) -> Result<String> {
    let flags = SweepConfig {
        strategy: Some(args.strategy),
        n: args.n.map(|n| vec![n]),
        t: args.t.map(|t| vec![t]),
        d: args.d.map(|d| vec![d]),
        force: args.force.then_some(true),
        ..args.numerics.into_config()
    };
    let spec = env_defaults()?.merge(flags).into_spec()?;
    let points = spec.validate()?;
    let point = points
        .first()
        .ok_or_else(|| Error::Config("no grid point given".into()))?;
    let plan = plan(point, spec.method)?;
    let cost = qmetro::sweep::estimated_seconds(point, plan, &spec.mc);
    if cost > spec.budget_secs && !spec.force {
        return Err(Error::Config(format!(
            "projected runtime {cost:.0} s exceeds the budget of {:.0} s; pass --force to run anyway",
            spec.budget_secs
        )));
    }
    let est = evaluate(point, plan, &spec.quadrature, &spec.mc)?;
    Ok(to_csv(&[ResultRow::from_estimate(&est, None)?], true))
}

fn cmd_sweep(args: SweepArgs) -> Result<Option<String>> {
    let file = match &args.spec {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    let flags = SweepConfig {
        strategy: args.strategy,
        n: args.n_list,
        t: args.t_list,
        d: args.d_list,
        output: args.output,
        emit_asymptote_columns: args.asymptote_columns.then_some(true),
        timing: args.timing.then_some(true),
        workers: args.workers,
        budget_secs: args.budget,
        force: args.force.then_some(true),
        ..args.numerics.into_config()
    };
    let spec = env_defaults()?.merge(file).merge(flags).into_spec()?;
    let out = run_sweep(&spec)?;
    Ok(spec.output_path.is_none().then_some(out.csv))
}

fn cmd_bounds(n_list: &[u64]) -> Result<String> {
    let mut out = String::from("N,heisenberg_bits,holevo_separable_bits,sql_bits\n");
    for &n in n_list {
        out.push_str(&format!(
            "{n},{},{},{}\n",
            fmt_g12(heisenberg_bound(n)?),
            fmt_g12(holevo_separable_entropy(n)?),
            fmt_g12(sql_bound(n)?)
        ));
    }
    Ok(out)
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Config(_) | Error::Domain(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn emit(text: &str) -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmetro: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mi(args) => cmd_mi(args).map(Some),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Bounds { n_list } => cmd_bounds(&n_list).map(Some),
        Command::Verify { level } => match level.parse::<VerifyLevel>() {
            Ok(level) => {
                let report = run_verify(level);
                print!("{report}");
                return if report.all_passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                };
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(Some(text)) => emit(&text),
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmetro: {e}");
            exit_for(&e)
        }
    }
}
