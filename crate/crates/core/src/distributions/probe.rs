use super::qpea::ddim_outcomes;
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Estimation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Sequential QPEA on `t` qubits, `N = 2^t - 1` applications.
    QpeaQubit,
    /// N00N-group parallel QPEA; same output distribution as [`StrategyKind::QpeaQubit`].
    ParallelEntangled,
    /// d-ary QPEA with `t` digits.
    QpeaDDim,
    /// Single d-level probe in a Pegg–Barnett state (d-ary QPEA with `t = 1`).
    PeggBarnett,
    /// N separable qubits, optimal covariant (entangled) measurement.
    SepOptimalPovm,
    /// N separable qubits, product `|+>/|->` measurement.
    SepHamming,
    /// Parallel QPEA groups read out qubit by qubit.
    SepDetectionQpea,
    /// d-level probe restricted to `span{|0>, |d-1>}`.
    TwoLevelSubspace,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 8] = [
        StrategyKind::QpeaQubit,
        StrategyKind::ParallelEntangled,
        StrategyKind::QpeaDDim,
        StrategyKind::PeggBarnett,
        StrategyKind::SepOptimalPovm,
        StrategyKind::SepHamming,
        StrategyKind::SepDetectionQpea,
        StrategyKind::TwoLevelSubspace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::QpeaQubit => "qpea",
            StrategyKind::ParallelEntangled => "parallel-entangled",
            StrategyKind::QpeaDDim => "qpea-ddim",
            StrategyKind::PeggBarnett => "pegg-barnett",
            StrategyKind::SepOptimalPovm => "sep-optimal",
            StrategyKind::SepHamming => "sep-hamming",
            StrategyKind::SepDetectionQpea => "sep-detection",
            StrategyKind::TwoLevelSubspace => "two-level",
        }
    }

    /// Strategies whose probes enter the interaction unentangled and are
    /// therefore held to the separable Holevo quantity.
    pub fn is_separable(self) -> bool {
        matches!(
            self,
            StrategyKind::SepOptimalPovm | StrategyKind::SepHamming | StrategyKind::SepDetectionQpea
        )
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrategyKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = StrategyKind::ALL.iter().map(|k| k.name()).collect();
            Error::Config(format!("unknown strategy '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// A strategy together with its size parameters.
///
/// `n` is the number of `U_phi` applications counted so that `log2(n + 1)`
/// is the Heisenberg bound: for d-ary strategies `n = d^t - 1`, for the
/// two-level probe `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProbeSpec {
    pub kind: StrategyKind,
    pub d: u64,
    /// Digit count; `None` for strategies without a digit register.
    pub t: Option<u32>,
    pub n: u64,
}

impl ProbeSpec {
    /// Qubit QPEA with arbitrary `N >= 1`. `t` is recorded only when `N + 1`
    /// is a power of two.
    pub fn qpea(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("QPEA needs N >= 1".into()));
        }
        let t = (n + 1).is_power_of_two().then(|| (n + 1).trailing_zeros());
        Ok(Self {
            kind: StrategyKind::QpeaQubit,
            d: 2,
            t,
            n,
        })
    }

    pub fn qpea_register(t: u32) -> Result<Self> {
        Ok(Self {
            kind: StrategyKind::QpeaQubit,
            ..Self::register(t)?
        })
    }

    pub fn parallel_entangled(t: u32) -> Result<Self> {
        Ok(Self {
            kind: StrategyKind::ParallelEntangled,
            ..Self::register(t)?
        })
    }

    pub fn sep_detection(t: u32) -> Result<Self> {
        Ok(Self {
            kind: StrategyKind::SepDetectionQpea,
            ..Self::register(t)?
        })
    }

    fn register(t: u32) -> Result<Self> {
        if !(1..=52).contains(&t) {
            return Err(Error::Domain(format!("qubit count t = {t} must be in 1..=52")));
        }
        Ok(Self {
            kind: StrategyKind::QpeaQubit,
            d: 2,
            t: Some(t),
            n: (1u64 << t) - 1,
        })
    }

    pub fn qpea_ddim(d: u64, t: u32) -> Result<Self> {
        let outcomes = ddim_outcomes(d, t)?;
        Ok(Self {
            kind: StrategyKind::QpeaDDim,
            d,
            t: Some(t),
            n: outcomes - 1,
        })
    }

    pub fn pegg_barnett(d: u64) -> Result<Self> {
        Ok(Self {
            kind: StrategyKind::PeggBarnett,
            ..Self::qpea_ddim(d, 1)?
        })
    }

    pub fn sep_optimal(n: u64) -> Result<Self> {
        Self::separable(StrategyKind::SepOptimalPovm, n)
    }

    pub fn sep_hamming(n: u64) -> Result<Self> {
        Self::separable(StrategyKind::SepHamming, n)
    }

    fn separable(kind: StrategyKind, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("separable strategies need N >= 1".into()));
        }
        Ok(Self { kind, d: 2, t: None, n })
    }

    pub fn two_level(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("probe dimension d = {d} must be >= 2")));
        }
        Ok(Self {
            kind: StrategyKind::TwoLevelSubspace,
            d,
            t: Some(1),
            n: 1,
        })
    }

    /// Number of distinct estimate values, where finite.
    pub fn outcome_count(&self) -> Option<u64> {
        match self.kind {
            StrategyKind::QpeaQubit
            | StrategyKind::ParallelEntangled
            | StrategyKind::QpeaDDim
            | StrategyKind::PeggBarnett => Some(self.n + 1),
            StrategyKind::SepHamming => Some(self.n + 1),
            StrategyKind::SepDetectionQpea => self.t.map(|t| 1u64 << t.min(63)),
            StrategyKind::SepOptimalPovm | StrategyKind::TwoLevelSubspace => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in StrategyKind::ALL {
            assert_eq!(k.name().parse::<StrategyKind>().unwrap(), k);
        }
        assert!("bogus".parse::<StrategyKind>().is_err());
    }

    #[test]
    fn register_sizes() {
        let p = ProbeSpec::qpea_register(7).unwrap();
        assert_eq!((p.n, p.t), (127, Some(7)));
        assert_eq!(ProbeSpec::qpea(99_999).unwrap().t, None);
        assert_eq!(ProbeSpec::qpea(7).unwrap().t, Some(3));
        assert_eq!(ProbeSpec::qpea_ddim(3, 2).unwrap().n, 8);
        assert_eq!(ProbeSpec::pegg_barnett(1024).unwrap().n, 1023);
        assert_eq!(ProbeSpec::two_level(17).unwrap().n, 1);
        assert!(ProbeSpec::qpea_register(0).is_err());
        assert!(ProbeSpec::sep_hamming(0).is_err());
        assert!(ProbeSpec::two_level(1).is_err());
    }
}
