//! Acceptance suite: each criterion prints one PASS/FAIL line with its
//! measured values and wall-clock time. Exits nonzero if any criterion fails.

use qmetro::bounds::verify_bound_dominance;
use qmetro::distributions::{
    CovariantDensity, DensityMode, DiscreteChannel, HammingChannel, QpeaChannel, SepDetectionChannel,
    SepOptimalDensity, TwoLevelDensity,
};
use qmetro::mi::{
    hamming_sql_offset, mi_hamming_closed, mi_hamming_quadrature, mi_qpea_ddim, mi_qpea_reduced, mi_sep_detection_qpea,
    mi_sep_optimal, mi_sep_optimal_mc, mi_two_level, sep_detection_group_mi, MiEstimate,
};
use qmetro::numerics::{McSpec, QuadratureSpec};
use qmetro::sweep::{check_channel_normalization, check_density_normalization, random_phases, statevector_tv_distance};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

type Labelled<'a> = Vec<(String, &'a dyn DiscreteChannel)>;

/// Outcome of one criterion: pass flag and a one-line summary.
type Verdict = Result<(bool, String), String>;

struct Suite {
    q: QuadratureSpec,
    /// Estimates from criteria 1-6, checked against the bounds in criterion 8.
    produced: Vec<MiEstimate>,
    failures: usize,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce(&mut Self) -> Verdict) {
        let start = Instant::now();
        let verdict = f(self);
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = verdict.unwrap_or_else(|e| (false, format!("error: {e}")));
        if let Some(limit) = limit {
            if elapsed > limit {
                passed = false;
                detail.push_str(&format!("; over the {} s limit", limit.as_secs()));
            }
        }
        if !passed {
            self.failures += 1;
        }
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {id:>2} {name:<28} [{:>8.3} s] {detail}",
            elapsed.as_secs_f64()
        );
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn qpea_heisenberg(s: &mut Suite) -> Verdict {
    let start = Instant::now();
    let small = mi_qpea_reduced(127, &s.q).map_err(err)?;
    let t_small = start.elapsed();
    let start = Instant::now();
    let large = mi_qpea_reduced(99_999, &s.q).map_err(err)?;
    let t_large = start.elapsed();
    let target_small = 128f64.log2() - 1.2199;
    let target_large = 1e5f64.log2() - 1.2199;
    let ok = (small.bits - target_small).abs() <= 0.02
        && (large.bits - target_large).abs() <= 0.005
        && t_small.as_secs() < 60
        && t_large.as_secs() < 60;
    s.produced.extend([small, large]);
    Ok((
        ok,
        format!(
            "N=127: {:.6} vs {target_small:.4} ({:.2} s); N=99999: {:.6} vs {target_large:.6} ({:.2} s)",
            small.bits,
            t_small.as_secs_f64(),
            large.bits,
            t_large.as_secs_f64()
        ),
    ))
}

fn sep_optimal_sql(s: &mut Suite) -> Verdict {
    let quad = mi_sep_optimal(1000, DensityMode::Exact, &s.q).map_err(err)?;
    let mc = mi_sep_optimal_mc(1000, &McSpec::new(1_000_000, 2024).map_err(err)?).map_err(err)?;
    let target = 0.5 * 1000f64.log2() + 0.6042;
    let ok = (quad.bits - target).abs() <= 0.05 && (quad.bits - mc.bits).abs() <= 3.0 * mc.err;
    s.produced.extend([quad, mc]);
    Ok((
        ok,
        format!(
            "quad {:.6} vs {target:.6}; mc {:.6} +- {:.2e}",
            quad.bits, mc.bits, mc.err
        ),
    ))
}

fn hamming_closed_form(s: &mut Suite) -> Verdict {
    let f = hamming_sql_offset(100_000).map_err(err)?;
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let closed = mi_hamming_closed(n).map_err(err)?;
        let quad = mi_hamming_quadrature(n, &s.q).map_err(err)?;
        worst = worst.max((closed.bits - quad.bits).abs());
        s.produced.extend([closed, quad]);
    }
    s.produced.push(mi_hamming_closed(100_000).map_err(err)?);
    let ok = (f - (-0.395)).abs() <= 0.01 && worst <= 1e-6;
    Ok((
        ok,
        format!("f(1e5) = {f:.6}; max |closed - quad| for N <= 10 = {worst:.2e}"),
    ))
}

fn separable_detection(s: &mut Suite) -> Verdict {
    let per_group = 1.0 + (std::f64::consts::E / 4.0).log2();
    let mut worst = 0.0f64;
    for j in 0..=6 {
        let g = sep_detection_group_mi(j, &s.q).map_err(err)?;
        worst = worst.max((g.bits - per_group).abs());
    }
    let total = mi_sep_detection_qpea(7).map_err(err)?;
    let sql = 0.5 * 127f64.log2();
    // 0.442695 is rounded to 6 decimals, so the total is compared at that precision
    let ok = worst <= 1e-8 && (total.bits - 7.0 * 0.442695).abs() <= 7.0 * 5e-7 && total.bits < sql;
    s.produced.push(total);
    Ok((
        ok,
        format!(
            "max |group - (1 + log2(e/4))| = {worst:.2e}; t=7 total {:.7} < {sql:.6}",
            total.bits
        ),
    ))
}

fn ddim_scaling(s: &mut Suite) -> Verdict {
    let mut gaps = Vec::new();
    for d in [4u64, 64, 1024] {
        let r = mi_qpea_ddim(d, 1, &s.q).map_err(err)?;
        gaps.push(r.bits - (d as f64).log2() - (-1.2199));
        s.produced.push(r);
    }
    let monotone = gaps.windows(2).all(|w| w[1].abs() < w[0].abs());
    let mut worst = 0.0f64;
    for t in 1..=10u32 {
        let a = mi_qpea_ddim(2, t, &s.q).map_err(err)?;
        let b = mi_qpea_reduced((1 << t) - 1, &s.q).map_err(err)?;
        worst = worst.max((a.bits - b.bits).abs());
        s.produced.push(a);
    }
    let ok = monotone && gaps[2].abs() < 0.02 && worst <= 1e-9;
    Ok((
        ok,
        format!(
            "gaps at d = 4, 64, 1024: {:.4}, {:.4}, {:.4}; max |ddim(2,t) - reduced| = {worst:.1e}",
            gaps[0], gaps[1], gaps[2]
        ),
    ))
}

fn two_level(s: &mut Suite) -> Verdict {
    let mut values = Vec::new();
    for d in [2u64, 3, 17, 101] {
        let r = mi_two_level(d, &s.q).map_err(err)?;
        values.push(r.bits);
        s.produced.push(r);
    }
    let off = values.iter().map(|v| (v - 0.442695).abs()).fold(0.0, f64::max);
    let exact_off = values
        .iter()
        .map(|v| (v - (std::f64::consts::LOG2_E - 1.0)).abs())
        .fold(0.0, f64::max);
    let mut spread = 0.0f64;
    for a in &values {
        for b in &values {
            spread = spread.max((a - b).abs());
        }
    }
    // 0.442695 carries 6 decimals; the exact value log2(e) - 1 is held to 1e-8
    let ok = off <= 1e-6 && exact_off <= 1e-8 && spread <= 1e-9;
    Ok((
        ok,
        format!("max |MI - (log2 e - 1)| = {exact_off:.2e}; max |MI - 0.442695| = {off:.2e}; spread {spread:.2e}"),
    ))
}

fn oracle_equivalence(_: &mut Suite) -> Verdict {
    let mut worst = 0.0f64;
    for t in 1..=8u32 {
        for phi in random_phases(1000 + u64::from(t), 50) {
            worst = worst.max(statevector_tv_distance(t, phi).map_err(err)?);
        }
    }
    Ok((
        worst < 1e-9,
        format!("max TV distance over t <= 8, 50 phases each: {worst:.2e}"),
    ))
}

fn bound_dominance(s: &mut Suite) -> Verdict {
    let report = verify_bound_dominance(&s.produced).map_err(err)?;
    let failed: Vec<_> = report
        .entries
        .iter()
        .filter(|e| !e.passed)
        .map(|e| e.label.clone())
        .collect();
    let separable = report.entries.iter().filter(|e| e.holevo.is_some()).count();
    Ok((
        failed.is_empty(),
        format!(
            "{} results ({separable} separable); violations: {failed:?}",
            report.entries.len()
        ),
    ))
}

fn normalization(s: &mut Suite) -> Verdict {
    let phis = random_phases(99, 100);
    let mut lines = Vec::new();
    let mut ok = true;

    let qpea: Vec<(String, QpeaChannel)> = [1u64, 3, 7, 15, 63, 255]
        .iter()
        .map(|&n| Ok((format!("N={n}"), QpeaChannel::qubit(n)?)))
        .collect::<qmetro::Result<_>>()
        .map_err(err)?;
    let mut ddim = Vec::new();
    for d in 2..=5u64 {
        for t in 1..=4u32 {
            ddim.push((format!("d={d},t={t}"), QpeaChannel::ddim(d, t).map_err(err)?));
        }
    }
    let hamming: Vec<(String, HammingChannel)> = [1u64, 3, 7, 15, 63, 255]
        .iter()
        .map(|&n| Ok((format!("N={n}"), HammingChannel::new(n)?)))
        .collect::<qmetro::Result<_>>()
        .map_err(err)?;
    let groups: Vec<(String, SepDetectionChannel)> = (0..8u32)
        .map(|j| Ok((format!("j={j}"), SepDetectionChannel::new(j)?)))
        .collect::<qmetro::Result<_>>()
        .map_err(err)?;

    let discrete: [(&'static str, Labelled); 4] = [
        (
            "qpea",
            qpea.iter()
                .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
                .collect(),
        ),
        (
            "ddim",
            ddim.iter()
                .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
                .collect(),
        ),
        (
            "hamming",
            hamming
                .iter()
                .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
                .collect(),
        ),
        (
            "sepdet",
            groups
                .iter()
                .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
                .collect(),
        ),
    ];
    for (id, channels) in &discrete {
        let out = check_channel_normalization(id, channels, &phis, 1e-10);
        ok &= out.passed;
        lines.push(format!("{id} {}", if out.passed { "ok" } else { "FAILED" }));
    }

    let sizes = [1u64, 2, 3, 5, 10, 50, 100, 500, 1000, 2000];
    let sep: Vec<(String, SepOptimalDensity)> = sizes
        .iter()
        .map(|&n| Ok((format!("N={n}"), SepOptimalDensity::new(n, DensityMode::Exact)?)))
        .collect::<qmetro::Result<_>>()
        .map_err(err)?;
    let two: Vec<(String, TwoLevelDensity)> = sizes[1..]
        .iter()
        .map(|&d| Ok((format!("d={d}"), TwoLevelDensity::new(d)?)))
        .collect::<qmetro::Result<_>>()
        .map_err(err)?;
    let sep_view: Vec<(String, &dyn CovariantDensity)> = sep
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn CovariantDensity))
        .collect();
    let two_view: Vec<(String, &dyn CovariantDensity)> = two
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn CovariantDensity))
        .collect();
    for (id, densities) in [("sep-optimal", sep_view), ("two-level", two_view)] {
        let out = check_density_normalization(id, &densities, &s.q, 1e-8);
        ok &= out.passed;
        lines.push(format!("{id} {}", if out.passed { "ok" } else { "FAILED" }));
    }
    Ok((ok, lines.join(", ")))
}

fn determinism(_: &mut Suite) -> Verdict {
    let dir = std::env::temp_dir().join(format!("qmetro-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let spec = dir.join("sweep.toml");
    std::fs::write(
        &spec,
        "strategy = \"sep-optimal\"\nn = [10, 100, 1000]\nmethod = \"mc\"\nsamples = 200000\nseed = 17\n\
         emit_asymptote_columns = true\n",
    )
    .map_err(err)?;
    let run = |name: &str, workers: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_qmetro"))
            .arg("sweep")
            .arg("--spec")
            .arg(&spec)
            .arg("--output")
            .arg(&out)
            .args(["--workers", workers])
            .status()
            .map_err(err)?;
        if !status.success() {
            return Err(format!("sweep exited with {status}"));
        }
        std::fs::read(&out).map_err(err)
    };
    let a = run("a.csv", "4")?;
    let b = run("b.csv", "4")?;
    let c = run("c.csv", "1")?;
    let _ = std::fs::remove_dir_all(&dir);
    let rows = a.iter().filter(|&&b| b == b'\n').count();
    let ok = a == b && a == c && rows == 4;
    Ok((
        ok,
        format!(
            "{} bytes, {rows} lines; identical across repeat and worker count: {}",
            a.len(),
            a == b && a == c
        ),
    ))
}

fn main() -> ExitCode {
    let mut suite = Suite {
        q: QuadratureSpec::default(),
        produced: Vec::new(),
        failures: 0,
    };
    let secs = Duration::from_secs;
    suite.run(1, "QPEA Heisenberg scaling", Some(secs(120)), qpea_heisenberg);
    suite.run(2, "separable-optimal SQL", Some(secs(120)), sep_optimal_sql);
    suite.run(3, "Hamming closed form", Some(secs(30)), hamming_closed_form);
    suite.run(4, "separable-detection QPEA", None, separable_detection);
    suite.run(5, "d-dimensional scaling", None, ddim_scaling);
    suite.run(6, "two-level subspace", None, two_level);
    suite.run(7, "state-vector oracle", None, oracle_equivalence);
    suite.run(8, "bound dominance", None, bound_dominance);
    suite.run(9, "normalization", None, normalization);
    suite.run(10, "CSV determinism", None, determinism);
    if suite.failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 10 criteria failed", suite.failures);
        ExitCode::FAILURE
    }
}
