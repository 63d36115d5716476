use crate::bounds::{heisenberg_bound, holevo_separable_entropy, qpea_statevector, sql_bound, verify_bound_dominance};
use crate::distributions::{
    hamming_marginal_weights, qpea_prob, CovariantDensity, DensityMode, DiscreteChannel, HammingChannel, QpeaChannel,
    SepDetectionChannel, SepOptimalDensity, TwoLevelDensity,
};
use crate::error::{Error, Result};
use crate::mi::{
    hamming_sql_offset, mi_hamming_closed, mi_hamming_quadrature, mi_qpea_ddim, mi_qpea_naive, mi_qpea_reduced,
    mi_sep_detection_qpea, mi_sep_optimal, mi_sep_optimal_mc, mi_two_level, sep_detection_group_mi, MiEstimate,
};
use crate::numerics::constants::{c_probe, c_qpea, c_sql_ent, C_SEP_SEP};
use crate::numerics::{integrate_adaptive, McSpec, QuadratureSpec};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// Seed for the random phases used by the checks.
pub const VERIFY_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            other => Err(Error::Config(format!(
                "unknown level '{other}' (expected fast or full)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(id: &'static str, passed: bool, detail: String) -> Self {
        Self { id, passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub level: VerifyLevel,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {:<18} {}", c.id, c.detail)?;
        }
        let failed = self.failed().count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// `count` phases uniform in `[0, 1)` from a fixed seed.
pub fn random_phases(seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random::<f64>()).collect()
}

/// Every channel must sum to 1 within `tol` at each phase in `phis` and at
/// each of its singular grid points, with every probability in `[0, 1]`.
/// A NaN anywhere fails the check.
pub fn check_channel_normalization(
    id: &'static str,
    channels: &[(String, &dyn DiscreteChannel)],
    phis: &[f64],
    tol: f64,
) -> CheckOutcome {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for (label, ch) in channels {
        let grid = ch.singular_grid();
        for &phi in phis.iter().chain(&grid) {
            let mut sum = 0.0;
            let mut in_range = true;
            for m in 0..ch.outcome_count() {
                let p = ch.prob(m, phi);
                in_range &= (-tol..=1.0 + tol).contains(&p);
                sum += p;
            }
            let dev = if in_range && !sum.is_nan() {
                (sum - 1.0).abs()
            } else {
                f64::INFINITY
            };
            if dev > worst {
                worst = dev;
                worst_at = format!("{label} phi={phi}");
            }
        }
    }
    let passed = worst <= tol;
    CheckOutcome::new(
        id,
        passed,
        format!("worst |sum - 1| = {worst:.2e} ({worst_at}), tol {tol:.0e}"),
    )
}

/// Every density must integrate to 1 within `tol` over one period.
pub fn check_density_normalization(
    id: &'static str,
    densities: &[(String, &dyn CovariantDensity)],
    q: &QuadratureSpec,
    tol: f64,
) -> CheckOutcome {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for (label, density) in densities {
        let spec = q.with_extra_nodes(density.quadrature_nodes());
        let dev = match integrate_adaptive(|x| density.density(x), 0.0, 1.0, &spec) {
            Ok(r) if !r.value.is_nan() => (r.value - 1.0).abs(),
            _ => f64::INFINITY,
        };
        if dev > worst {
            worst = dev;
            worst_at = label.clone();
        }
    }
    CheckOutcome::new(
        id,
        worst <= tol,
        format!("worst |int - 1| = {worst:.2e} ({worst_at}), tol {tol:.0e}"),
    )
}

fn run(id: &'static str, check: impl FnOnce() -> Result<(bool, String)>) -> CheckOutcome {
    match check() {
        Ok((passed, detail)) => CheckOutcome::new(id, passed, detail),
        Err(e) => CheckOutcome::new(id, false, format!("error: {e}")),
    }
}

fn normalization_checks(out: &mut Vec<CheckOutcome>) -> Result<()> {
    let phis = random_phases(VERIFY_SEED, 100);
    let tol = 1e-10;

    let qpea: Vec<_> = [1u64, 3, 7, 15, 63, 255]
        .iter()
        .map(|&n| Ok((format!("N={n}"), QpeaChannel::qubit(n)?)))
        .collect::<Result<_>>()?;
    let view: Vec<(String, &dyn DiscreteChannel)> = qpea
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
        .collect();
    out.push(check_channel_normalization("NORM-QPEA", &view, &phis, tol));

    let mut ddim = Vec::new();
    for d in 2..=5u64 {
        for t in 1..=4u32 {
            ddim.push((format!("d={d} t={t}"), QpeaChannel::ddim(d, t)?));
        }
    }
    let view: Vec<(String, &dyn DiscreteChannel)> = ddim
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
        .collect();
    out.push(check_channel_normalization("NORM-DDIM", &view, &phis, tol));

    let hamming: Vec<_> = [1u64, 3, 7, 15, 63, 255]
        .iter()
        .map(|&n| Ok((format!("N={n}"), HammingChannel::new(n)?)))
        .collect::<Result<_>>()?;
    let view: Vec<(String, &dyn DiscreteChannel)> = hamming
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
        .collect();
    out.push(check_channel_normalization("NORM-HAMMING", &view, &phis, tol));

    let groups: Vec<_> = (0..8u32)
        .map(|j| Ok((format!("j={j}"), SepDetectionChannel::new(j)?)))
        .collect::<Result<_>>()?;
    let view: Vec<(String, &dyn DiscreteChannel)> = groups
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn DiscreteChannel))
        .collect();
    out.push(check_channel_normalization("NORM-SEPDET", &view, &phis, tol));

    out.push(run("NORM-HAMMING-W", || {
        let mut worst = 0.0f64;
        for n in [1u64, 10, 100, 1000, 10_000] {
            let s: f64 = hamming_marginal_weights(n)?.iter().sum();
            worst = worst.max((s - 1.0).abs());
        }
        Ok((worst <= tol, format!("worst |sum w - 1| = {worst:.2e} for N <= 1e4")))
    }));

    let q = QuadratureSpec::default();
    let sep: Vec<_> = [1u64, 10, 100, 1000, 2000]
        .iter()
        .map(|&n| Ok((format!("N={n}"), SepOptimalDensity::new(n, DensityMode::Exact)?)))
        .collect::<Result<_>>()?;
    let view: Vec<(String, &dyn CovariantDensity)> = sep
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn CovariantDensity))
        .collect();
    out.push(check_density_normalization("NORM-SEPOPT", &view, &q, 1e-8));

    let two: Vec<_> = [2u64, 3, 17, 101, 2000]
        .iter()
        .map(|&d| Ok((format!("d={d}"), TwoLevelDensity::new(d)?)))
        .collect::<Result<_>>()?;
    let view: Vec<(String, &dyn CovariantDensity)> = two
        .iter()
        .map(|(l, c)| (l.clone(), c as &dyn CovariantDensity))
        .collect();
    out.push(check_density_normalization("NORM-TWOLEVEL", &view, &q, 1e-8));
    Ok(())
}

/// Total-variation distance between the simulated circuit and the closed form.
pub fn statevector_tv_distance(t: u32, phi: f64) -> Result<f64> {
    let sim = qpea_statevector(t, phi)?;
    let n = (1u64 << t) - 1;
    let mut tv = 0.0;
    for (m, p) in sim.iter().enumerate() {
        tv += (p - qpea_prob(m as u64, phi, n)?).abs();
    }
    Ok(0.5 * tv)
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

/// Estimates whose bound dominance is checked at each level.
pub fn reference_estimates(level: VerifyLevel) -> Result<Vec<MiEstimate>> {
    let q = QuadratureSpec::default();
    let mut v = Vec::new();
    for n in [1u64, 3, 7, 15, 127] {
        v.push(mi_qpea_reduced(n, &q)?);
    }
    for n in [10u64, 100, 1000] {
        v.push(mi_sep_optimal(n, DensityMode::Exact, &q)?);
        v.push(mi_hamming_closed(n)?);
    }
    for t in 1..=7 {
        v.push(mi_sep_detection_qpea(t)?);
    }
    for d in [4u64, 64] {
        v.push(mi_qpea_ddim(d, 1, &q)?);
    }
    for d in [2u64, 3, 17, 101] {
        v.push(mi_two_level(d, &q)?);
    }
    if level == VerifyLevel::Full {
        v.push(mi_qpea_reduced(99_999, &q)?);
        v.push(mi_hamming_closed(100_000)?);
        v.push(mi_qpea_ddim(1024, 1, &q)?);
        v.push(mi_sep_optimal_mc(1000, &McSpec::new(1_000_000, VERIFY_SEED)?)?);
    }
    Ok(v)
}

/// Run the verification suite. `fast` covers oracle equivalence,
/// normalization, identities and bound checks; `full` adds the large-N targets.
pub fn run_verify(level: VerifyLevel) -> VerifyReport {
    let q = QuadratureSpec::default();
    let mut checks = Vec::new();

    checks.push(run("CONST-QPEA", || {
        let c = c_qpea();
        Ok((within(c, -1.219_897_727_2, 1e-9), format!("c_qpea = {c:.12}")))
    }));

    if let Err(e) = normalization_checks(&mut checks) {
        checks.push(CheckOutcome::new("NORM-SETUP", false, format!("error: {e}")));
    }

    checks.push(run("ORACLE-SV", || {
        let mut worst = 0.0f64;
        for t in 1..=8 {
            for (i, phi) in random_phases(VERIFY_SEED + t as u64, 50).into_iter().enumerate() {
                // include exact grid phases as well
                let phi = if i == 0 { 3.0 / (1u64 << t) as f64 } else { phi };
                worst = worst.max(statevector_tv_distance(t, phi)?);
            }
        }
        Ok((worst < 1e-9, format!("worst TV distance {worst:.2e} over t <= 8")))
    }));

    checks.push(run("EQ-QPEA-NAIVE", || {
        let mut worst = f64::NEG_INFINITY;
        for n in [1u64, 3, 7, 15, 31, 63] {
            let a = mi_qpea_reduced(n, &q)?;
            let b = mi_qpea_naive(n, &q)?;
            worst = worst.max((a.bits - b.bits).abs() - (a.err + b.err));
        }
        Ok((
            worst <= 1e-12,
            format!("max |reduced - naive| - combined err = {worst:.2e}"),
        ))
    }));

    checks.push(run("EQ-HAMMING-QUAD", || {
        let mut worst = 0.0f64;
        for n in 1..=10 {
            let a = mi_hamming_closed(n)?;
            let b = mi_hamming_quadrature(n, &q)?;
            worst = worst.max((a.bits - b.bits).abs());
        }
        Ok((
            worst < 1e-6,
            format!("max |closed - quadrature| = {worst:.2e} for N <= 10"),
        ))
    }));

    checks.push(run("GROUP-SEPDET", || {
        let mut worst = 0.0f64;
        for j in 0..=6 {
            worst = worst.max((sep_detection_group_mi(j, &q)?.bits - c_probe()).abs());
        }
        Ok((worst < 1e-8, format!("max |group MI - (1 + log2(e/4))| = {worst:.2e}")))
    }));

    checks.push(run("TWO-LEVEL-D", || {
        let values: Vec<f64> = [2u64, 3, 17, 101]
            .iter()
            .map(|&d| Ok(mi_two_level(d, &q)?.bits))
            .collect::<Result<_>>()?;
        let spread = values
            .iter()
            .fold(0.0f64, |m, a| values.iter().fold(m, |m, b| m.max((a - b).abs())));
        let off = values.iter().fold(0.0f64, |m, v| m.max((v - c_probe()).abs()));
        Ok((
            off < 1e-8 && spread < 1e-9,
            format!("max |MI - c_probe| = {off:.2e}, spread {spread:.2e}"),
        ))
    }));

    checks.push(run("DDIM-QUBIT", || {
        let mut worst = 0.0f64;
        for t in 1..=10 {
            let a = mi_qpea_ddim(2, t, &q)?;
            let b = mi_qpea_reduced((1 << t) - 1, &q)?;
            worst = worst.max((a.bits - b.bits).abs());
        }
        Ok((
            worst < 1e-9,
            format!("max |ddim(2, t) - reduced(2^t - 1)| = {worst:.2e}"),
        ))
    }));

    checks.push(run("MC-SEPOPT", || {
        let a = mi_sep_optimal(100, DensityMode::Exact, &q)?;
        let b = mi_sep_optimal_mc(100, &McSpec::new(200_000, VERIFY_SEED)?)?;
        let gap = (a.bits - b.bits).abs();
        Ok((
            gap <= 3.0 * b.err,
            format!("N=100 quad {:.6} vs mc {:.6} +- {:.1e}", a.bits, b.bits, b.err),
        ))
    }));

    checks.push(run("BOUNDS-ORDER", || {
        let mut ok = true;
        let mut n = 2u64;
        while n <= 10_000 {
            let (h, s, l) = (heisenberg_bound(n)?, holevo_separable_entropy(n)?, sql_bound(n)?);
            ok &= h >= s && s >= l;
            n = n * 5 / 4 + 1;
        }
        Ok((ok, "Heisenberg >= separable Holevo >= SQL on N in 2..1e4".into()))
    }));

    if level == VerifyLevel::Full {
        checks.push(run("QPEA-T7", || {
            let r = mi_qpea_reduced(127, &q)?;
            Ok((within(r.bits, 5.7801, 0.02), format!("N=127: {:.6} vs 5.7801", r.bits)))
        }));
        checks.push(run("QPEA-1E5", || {
            let r = mi_qpea_reduced(99_999, &q)?;
            let target = 1e5f64.log2() + c_qpea();
            Ok((
                within(r.bits, target, 0.005),
                format!("N=99999: {:.6} vs {target:.6}", r.bits),
            ))
        }));
        checks.push(run("SEPOPT-1000", || {
            let a = mi_sep_optimal(1000, DensityMode::Exact, &q)?;
            let target = 0.5 * 1000f64.log2() + c_sql_ent();
            let b = mi_sep_optimal_mc(1000, &McSpec::new(1_000_000, VERIFY_SEED)?)?;
            let ok = within(a.bits, target, 0.05) && (a.bits - b.bits).abs() <= 3.0 * b.err;
            Ok((
                ok,
                format!("quad {:.6} vs {target:.6}, mc {:.6} +- {:.1e}", a.bits, b.bits, b.err),
            ))
        }));
        checks.push(run("HAMMING-F-1E5", || {
            let f = hamming_sql_offset(100_000)?;
            Ok((
                within(f, C_SEP_SEP, 0.01),
                format!("f(1e5) = {f:.6} vs {C_SEP_SEP} +- 0.01"),
            ))
        }));
        checks.push(run("SEPDET-T7", || {
            let r = mi_sep_detection_qpea(7)?;
            let ok = within(r.bits, 7.0 * c_probe(), 1e-8) && r.bits < 0.5 * 127f64.log2();
            Ok((ok, format!("t=7: {:.9} (below SQL {:.6})", r.bits, 0.5 * 127f64.log2())))
        }));
        checks.push(run("DDIM-1024", || {
            let gaps: Vec<f64> = [4u64, 64, 1024]
                .iter()
                .map(|&d| Ok((mi_qpea_ddim(d, 1, &q)?.bits - (d as f64).log2() - c_qpea()).abs()))
                .collect::<Result<_>>()?;
            let ok = gaps.windows(2).all(|w| w[1] < w[0]) && gaps[2] < 0.02;
            let shown: Vec<String> = gaps.iter().map(|g| format!("{g:.2e}")).collect();
            Ok((ok, format!("|gap| at d = 4, 64, 1024: {}", shown.join(", "))))
        }));
    }

    checks.push(run("BOUND-DOMINANCE", || {
        let report = verify_bound_dominance(&reference_estimates(level)?)?;
        let n = report.entries.len();
        let failed: Vec<_> = report
            .entries
            .iter()
            .filter(|e| !e.passed)
            .map(|e| e.label.clone())
            .collect();
        Ok((failed.is_empty(), format!("{n} estimates, violations: {failed:?}")))
    }));

    VerifyReport { level, checks }
}
