//! Identity checking over sampling plans, counterexample search and the grid
//! bound that turns a monomial-grid check into a proof.

mod bound;
mod plan;
mod verdict;

pub use bound::{evidence_bound, EvidenceBound};
pub use plan::SamplingPlan;
pub use verdict::Verdict;

use rayon::prelude::*;
use thiserror::Error;

use crate::freeterm::Interpretation;
use crate::models::{Carrier, Model, ModelError, ModelValue};
use crate::QFreePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("sampling plan does not fit the model: {0}")]
    Plan(String),
}

fn arity_of(p: &QFreePoly) -> usize {
    let used = p.terms().map(|(t, _)| t.max_var()).max().unwrap_or(0);
    used.max(p.arity()) as usize
}

/// Check `p` (ordinary products) on every assignment of `plan`.
pub fn check_identity(p: &QFreePoly, m: &Model, plan: &SamplingPlan) -> Result<Verdict, VerifyError> {
    check_words(p, Interpretation::Plain, m, plan)
}

/// Check a polynomial written in words of `interp` on every planned
/// assignment. The reported failure is the first one in plan order.
pub fn check_words(p: &QFreePoly, interp: Interpretation, m: &Model, plan: &SamplingPlan) -> Result<Verdict, VerifyError> {
    let arity = arity_of(p);
    let samples = plan.assignments(m.carrier(), arity).map_err(VerifyError::Plan)?;
    if let Some(a) = samples.first() {
        for v in a {
            m.check_value(v)?;
        }
    }
    let first = samples
        .par_iter()
        .enumerate()
        .map(|(i, a)| m.eval_words(p, interp, a).map(|v| (i, v)))
        .find_map_first(|r| match r {
            Ok((_, v)) if v.is_zero() => None,
            other => Some(other),
        });
    match first {
        Some(Ok((i, value))) => Ok(Verdict::fails(samples[i][..arity].to_vec(), value, i + 1)),
        Some(Err(e)) => Err(e.into()),
        None => Ok(Verdict::holds(samples.len(), plan.to_string(), proof_grade(p, interp, m, plan))),
    }
}

fn proof_grade(p: &QFreePoly, interp: Interpretation, m: &Model, plan: &SamplingPlan) -> bool {
    match (plan, m.carrier()) {
        (SamplingPlan::MonomialGrid { min_exp: 0, max_exp }, Carrier::Poly) => {
            let plain = crate::freeterm::lift(p, interp);
            matches!(evidence_bound(&plain, m), EvidenceBound::Proven(b) if b <= *max_exp)
        }
        (SamplingPlan::BasisTuples, Carrier::Basis(_)) => p.is_multilinear(),
        _ => false,
    }
}

/// Search for a violating assignment within `budget` evaluations: a monomial
/// grid (or all basis tuples) first, then pseudorandom samples.
pub fn find_counterexample(
    p: &QFreePoly,
    interp: Interpretation,
    m: &Model,
    budget: usize,
    seed: u64,
) -> Result<Option<(Vec<ModelValue>, ModelValue)>, VerifyError> {
    let arity = arity_of(p);
    let mut plans = Vec::new();
    let mut used = 0;
    match m.carrier() {
        Carrier::Poly if arity > 0 => {
            let mut max_exp = 0u32;
            while ((max_exp + 2) as usize).pow(arity as u32) <= budget / 2 {
                max_exp += 1;
            }
            let g = SamplingPlan::grid(max_exp);
            used = g.len(Carrier::Poly, arity);
            plans.push(g);
        }
        Carrier::Basis(_) if SamplingPlan::BasisTuples.len(m.carrier(), arity) <= budget => {
            used = SamplingPlan::BasisTuples.len(m.carrier(), arity);
            plans.push(SamplingPlan::BasisTuples);
        }
        _ => {}
    }
    if budget > used {
        plans.push(SamplingPlan::RandomVectors { count: budget - used, seed, bound: 3 });
    }
    for plan in plans {
        if let Verdict::Fails { witness, value, .. } = check_words(p, interp, m, &plan)? {
            return Ok(Some((witness, value)));
        }
    }
    Ok(None)
}
