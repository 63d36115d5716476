use super::{heisenberg_bound, holevo_separable_entropy};
use crate::error::{Error, Result};
use crate::mi::MiEstimate;
use std::fmt;

/// Slack, in units of the estimate's error, granted to every bound check.
pub const ERR_SLACK: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub label: String,
    pub n: Option<u64>,
    pub bits: f64,
    pub err: f64,
    pub heisenberg: Option<f64>,
    /// `heisenberg + 3 err - bits`; negative means violated.
    pub heisenberg_margin: Option<f64>,
    pub holevo: Option<f64>,
    pub holevo_margin: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundReport {
    pub entries: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let status = if e.passed { "pass" } else { "FAIL" };
            write!(f, "{status} {:<20} bits={:.6} err={:.1e}", e.label, e.bits, e.err)?;
            if let (Some(b), Some(m)) = (e.heisenberg, e.heisenberg_margin) {
                write!(f, " heisenberg={b:.6} margin={m:.6}")?;
            }
            if let (Some(b), Some(m)) = (e.holevo, e.holevo_margin) {
                write!(f, " holevo={b:.6} margin={m:.6}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Check each estimate against `log2(N+1)` and, for separable strategies,
/// against the separable Holevo quantity, both with `3 err` slack.
///
/// Violations are report entries, not errors. An estimate without a strategy
/// attached cannot be placed against a bound and is reported as failed.
pub fn verify_bound_dominance(results: &[MiEstimate]) -> Result<BoundReport> {
    if results.is_empty() {
        return Err(Error::Domain("no estimates to verify".into()));
    }
    let mut report = BoundReport::default();
    for est in results {
        let Some(spec) = est.spec else {
            report.entries.push(BoundCheck {
                label: "unknown".into(),
                n: None,
                bits: est.bits,
                err: est.err,
                heisenberg: None,
                heisenberg_margin: None,
                holevo: None,
                holevo_margin: None,
                passed: false,
            });
            continue;
        };
        let slack = ERR_SLACK * est.err;
        let heis = heisenberg_bound(spec.n)?;
        let heis_margin = heis + slack - est.bits;
        let (holevo, holevo_margin) = if spec.kind.is_separable() {
            let h = holevo_separable_entropy(spec.n)?;
            (Some(h), Some(h + slack - est.bits))
        } else {
            (None, None)
        };
        let passed = heis_margin >= 0.0 && holevo_margin.is_none_or(|m| m >= 0.0);
        report.entries.push(BoundCheck {
            label: format!("{} N={}", spec.kind, spec.n),
            n: Some(spec.n),
            bits: est.bits,
            err: est.err,
            heisenberg: Some(heis),
            heisenberg_margin: Some(heis_margin),
            holevo,
            holevo_margin,
            passed,
        });
    }
    Ok(report)
}
