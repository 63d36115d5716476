use super::{wrap_unit, CovariantDensity};
use crate::error::{Error, Result};
use crate::numerics::cos_pi;

/// `2 cos^2(pi theta (d - 1))`: probe restricted to the span of `|0>` and `|d-1>`.
pub fn two_level_density(theta: f64, d: u64) -> Result<f64> {
    if d < 2 {
        return Err(Error::Domain(format!("probe dimension d = {d} must be >= 2")));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta {theta} is not finite")));
    }
    Ok(TwoLevelDensity { d }.density(theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoLevelDensity {
    d: u64,
}

impl TwoLevelDensity {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Domain(format!("probe dimension d = {d} must be >= 2")));
        }
        Ok(Self { d })
    }

    pub fn dimension(&self) -> u64 {
        self.d
    }
}

impl CovariantDensity for TwoLevelDensity {
    fn density(&self, theta: f64) -> f64 {
        2.0 * cos_pi(wrap_unit(theta) * (self.d - 1) as f64).powi(2)
    }

    fn peak_width(&self) -> f64 {
        1.0 / (self.d - 1) as f64
    }

    fn quadrature_nodes(&self) -> Vec<f64> {
        // zeros at (k + 1/2)/(d - 1) and the maxima between them
        let periods = (self.d - 1) as f64;
        (1..2 * (self.d - 1)).map(|k| k as f64 / (2.0 * periods)).collect()
    }
}

/// The flat density: estimate independent of the phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UniformDensity;

impl CovariantDensity for UniformDensity {
    fn density(&self, _theta: f64) -> f64 {
        1.0
    }

    fn peak_width(&self) -> f64 {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_adaptive, QuadratureSpec};

    #[test]
    fn examples() {
        assert_eq!(two_level_density(0.0, 5).unwrap(), 2.0);
        for d in [2u64, 3, 7, 101] {
            let theta = 1.0 / (2.0 * (d - 1) as f64);
            assert!(two_level_density(theta, d).unwrap().abs() < 1e-30);
        }
        assert!(two_level_density(0.1, 1).is_err());
    }

    #[test]
    fn normalized_for_integer_dimensions() {
        for d in [2u64, 3, 17, 101] {
            let dens = TwoLevelDensity::new(d).unwrap();
            let spec = QuadratureSpec::default().with_extra_nodes(dens.quadrature_nodes());
            let r = integrate_adaptive(|x| dens.density(x), 0.0, 1.0, &spec).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "d={d}: {}", r.value);
        }
    }
}
