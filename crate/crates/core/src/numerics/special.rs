//! Elementary special functions used across the crate.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// `sin(pi x)` with argument reduction done in units of pi, so integer `x`
/// gives exactly zero and large `x` keeps full relative accuracy.
pub fn sin_pi(x: f64) -> f64 {
    let odd = if x < 0.0 { -1.0 } else { 1.0 };
    let r = x.abs().rem_euclid(2.0);
    let (r, sign) = if r >= 1.0 { (r - 1.0, -odd) } else { (r, odd) };
    let v = if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else {
        (PI * (1.0 - r)).sin()
    };
    sign * v
}

/// `cos(pi x)`, exact zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let mut r = x.abs().rem_euclid(2.0);
    if r > 1.0 {
        r = 2.0 - r;
    }
    if r <= 0.25 {
        (PI * r).cos()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).sin()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

/// `x log2 x`, continuously extended with `plogp(0) = 0`.
///
/// Non-positive inputs map to 0 so that round-off below zero in a density
/// never produces NaN.
#[inline]
pub fn plogp(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// `ln(n!)` via log-gamma.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    libm::lgamma(n as f64 + 1.0)
}

/// Natural log of the binomial coefficient `C(n, k)`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::Domain(format!("binomial C({n}, {k}) with k > n")));
    }
    if k == 0 || k == n {
        return Ok(0.0);
    }
    Ok(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy_bits(weights: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        if w.is_nan() || w < 0.0 {
            return Err(Error::Domain(format!("weight {i} is {w}")));
        }
        sum += w;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("weights sum to {sum}, not 1")));
    }
    Ok(-weights.iter().map(|&w| plogp(w)).sum::<f64>())
}
