use super::{Method, MiEstimate};
use crate::distributions::DiscreteChannel;
use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive, plogp, QuadratureSpec};
use rayon::prelude::*;
use std::f64::consts::LOG2_E;

const MAX_OUTCOMES: usize = 1 << 16;

/// `sum_m int p(m|phi) log2 p(m|phi) dphi - sum_m p(m) log2 p(m)`, with every
/// marginal `p(m)` and every entropy integral done by quadrature.
pub fn mi_discrete_naive(ch: &dyn DiscreteChannel, q: &QuadratureSpec) -> Result<MiEstimate> {
    let outcomes = ch.outcome_count();
    if outcomes == 0 || outcomes > MAX_OUTCOMES {
        return Err(Error::Domain(format!(
            "naive MI supports 1..={MAX_OUTCOMES} outcomes, got {outcomes}"
        )));
    }
    let spec = q.with_extra_nodes(ch.singular_grid());

    let per_outcome: Vec<Result<(f64, f64, f64, f64)>> = (0..outcomes)
        .into_par_iter()
        .map(|m| {
            let ent = integrate_adaptive(|phi| plogp(ch.prob(m, phi)), 0.0, 1.0, &spec)?;
            let marg = integrate_adaptive(|phi| ch.prob(m, phi), 0.0, 1.0, &spec)?;
            Ok((ent.value, ent.err, marg.value, marg.err))
        })
        .collect();

    let mut bits = 0.0;
    let mut err = 0.0;
    for r in per_outcome {
        let (ent, ent_err, marg, marg_err) = r?;
        bits += ent - plogp(marg);
        // d(p log2 p)/dp = log2 p + log2 e
        let slope = if marg > 0.0 { (marg.log2() + LOG2_E).abs() } else { 0.0 };
        err += ent_err + slope * marg_err;
    }
    Ok(MiEstimate::new(bits, err, Method::QuadNaive))
}
