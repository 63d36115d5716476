//! Seeded Monte Carlo integration over the unit interval.
//!
//! Random abscissae come from ChaCha8 (`rand_chacha::ChaCha8Rng`) keyed by
//! `seed`, and each batch starts at a fixed keystream word offset. A run is
//! therefore a pure function of `(seed, samples, batch)` no matter how many
//! threads evaluate the batches. [`McSpec::for_task`] derives per-task seeds
//! from a master seed with SplitMix64.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSpec {
    pub samples: u64,
    pub seed: u64,
    /// Samples per batch; batches are the unit of parallel work.
    pub batch: u64,
}

impl Default for McSpec {
    fn default() -> Self {
        Self {
            samples: 1_000_000,
            seed: 0,
            batch: 65_536,
        }
    }
}

impl McSpec {
    pub fn new(samples: u64, seed: u64) -> Result<Self> {
        let spec = Self {
            samples,
            seed,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::Config(format!(
                "Monte Carlo needs at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.batch == 0 {
            return Err(Error::Config("Monte Carlo batch size must be positive".into()));
        }
        Ok(())
    }

    /// Spec for task `index` of a batch run, seeded by `splitmix64(seed, index)`.
    pub fn for_task(&self, index: u64) -> Self {
        Self {
            seed: derive_seed(self.seed, index),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McIntegral {
    /// Sample mean.
    pub value: f64,
    /// Standard deviation of the mean.
    pub err: f64,
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    // Chan et al. pairwise combination.
    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        let mean = if delta == 0.0 {
            self.mean
        } else {
            self.mean + delta * other.n as f64 / n as f64
        };
        let m2 = self.m2 + other.m2 + delta * delta * self.n as f64 * other.n as f64 / n as f64;
        Moments { n, mean, m2 }
    }
}

/// SplitMix64 output for position `index + 1` of the sequence started at `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform on the open interval (0, 1) from the top 53 bits of a word.
#[inline]
fn open_unit(word: u64) -> f64 {
    ((word >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Estimate `int_0^1 f(x) dx` by the mean of `f` at uniform random points.
pub fn integrate_mc<F: Fn(f64) -> f64 + Sync>(f: F, spec: &McSpec) -> Result<McIntegral> {
    spec.validate()?;
    let base = ChaCha8Rng::seed_from_u64(spec.seed);

    let batches = spec.samples.div_ceil(spec.batch);
    let parts: Vec<Result<Moments>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = base.clone();
            // one u64 consumes two 32-bit keystream words
            rng.set_word_pos(2 * u128::from(b) * u128::from(spec.batch));
            let count = spec.batch.min(spec.samples - b * spec.batch);
            let mut m = Moments::default();
            for _ in 0..count {
                let x = open_unit(rng.next_u64());
                let y = f(x);
                if !y.is_finite() {
                    return Err(Error::NonFinite { x });
                }
                m.push(y);
            }
            Ok(m)
        })
        .collect();

    let mut total = Moments::default();
    for p in parts {
        total = total.merge(p?);
    }
    let n = total.n as f64;
    let variance = total.m2 / (n - 1.0);
    Ok(McIntegral {
        value: total.mean,
        err: (variance / n).sqrt(),
        samples: total.n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::sin_pi;

    #[test]
    fn constant_has_zero_variance() {
        for seed in [0, 1, 99] {
            let r = integrate_mc(|_| 1.0, &McSpec::new(1000, seed).unwrap()).unwrap();
            assert_eq!(r.value, 1.0);
            assert_eq!(r.err, 0.0);
        }
    }

    #[test]
    fn linear_mean_within_three_sigma() {
        let r = integrate_mc(|x| x, &McSpec::new(1_000_000, 42).unwrap()).unwrap();
        assert!((r.value - 0.5).abs() < 3.0 * r.err, "{r:?}");
        let expected_err = (1.0 / 12f64).sqrt() / 1e3;
        assert!((r.err / expected_err - 1.0).abs() < 0.01, "{r:?}");
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let spec = McSpec::new(300_000, 7).unwrap();
        let a = integrate_mc(|x| (x * 10.0).sin(), &spec).unwrap();
        let b = integrate_mc(|x| (x * 10.0).sin(), &spec).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.err.to_bits(), b.err.to_bits());
    }

    #[test]
    fn batch_layout_does_not_change_samples() {
        let a = McSpec {
            batch: 1000,
            ..McSpec::new(10_000, 3).unwrap()
        };
        let b = McSpec { batch: 10_000, ..a };
        let ra = integrate_mc(|x| x * x, &a).unwrap();
        let rb = integrate_mc(|x| x * x, &b).unwrap();
        assert!((ra.value - rb.value).abs() < 1e-14);
    }

    #[test]
    fn splitmix_reference_output() {
        assert_eq!(derive_seed(0, 0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(derive_seed(0, 1), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn task_seeds_differ() {
        let spec = McSpec::new(1000, 5).unwrap();
        let a = integrate_mc(|x| x, &spec.for_task(0)).unwrap();
        let b = integrate_mc(|x| x, &spec.for_task(1)).unwrap();
        assert_ne!(a.value, b.value);
    }

    #[test]
    fn error_scales_as_inverse_sqrt_samples() {
        let f = |x: f64| sin_pi(2.0 * x).powi(2);
        let small = integrate_mc(f, &McSpec::new(10_000, 11).unwrap()).unwrap();
        let large = integrate_mc(f, &McSpec::new(1_000_000, 11).unwrap()).unwrap();
        let ratio = large.err / small.err;
        assert!((0.05..=0.2).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn too_few_samples_rejected() {
        assert!(McSpec::new(1, 0).is_err());
        assert!(integrate_mc(
            |x| x,
            &McSpec {
                samples: 1,
                ..McSpec::default()
            }
        )
        .is_err());
    }
}
