use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::models::{Carrier, ModelValue};
use crate::{QPoly, Rat};

/// How assignments are drawn for an identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SamplingPlan {
    /// Monomials `x^e` with `min_exp <= e <= max_exp` in every variable.
    /// Tuples of pairwise distinct exponents come first, each block in
    /// lexicographic order.
    MonomialGrid { min_exp: u32, max_exp: u32 },
    /// Pseudorandom values with integer coefficients in `[-bound, bound]`.
    RandomVectors { count: usize, seed: u64, bound: i64 },
    /// Every tuple of basis vectors.
    BasisTuples,
    ExplicitList(Vec<Vec<ModelValue>>),
}

impl SamplingPlan {
    pub fn grid(max_exp: u32) -> Self {
        SamplingPlan::MonomialGrid { min_exp: 0, max_exp }
    }

    pub fn random(count: usize, seed: u64) -> Self {
        SamplingPlan::RandomVectors { count, seed, bound: 3 }
    }

    /// `MonomialGrid(6)` for polynomials, 200 random vectors for sequences,
    /// all basis tuples for the basis algebra.
    pub fn default_for(carrier: Carrier, seed: u64) -> Self {
        match carrier {
            Carrier::Poly => SamplingPlan::grid(6),
            Carrier::Seq(_) => SamplingPlan::random(200, seed),
            Carrier::Basis(_) => SamplingPlan::BasisTuples,
        }
    }

    /// Number of assignments the plan produces for `arity` variables.
    pub fn len(&self, carrier: Carrier, arity: usize) -> usize {
        match self {
            SamplingPlan::MonomialGrid { min_exp, max_exp } => {
                (max_exp.saturating_sub(*min_exp) as usize + 1).pow(arity as u32)
            }
            SamplingPlan::RandomVectors { count, .. } => *count,
            SamplingPlan::BasisTuples => match carrier {
                Carrier::Basis(m) => m.pow(arity as u32),
                _ => 0,
            },
            SamplingPlan::ExplicitList(v) => v.len(),
        }
    }

    pub fn is_empty(&self, carrier: Carrier, arity: usize) -> bool {
        self.len(carrier, arity) == 0
    }

    /// Materialize the assignments in plan order.
    pub fn assignments(&self, carrier: Carrier, arity: usize) -> Result<Vec<Vec<ModelValue>>, String> {
        match (self, carrier) {
            (SamplingPlan::MonomialGrid { min_exp, max_exp }, Carrier::Poly) => {
                if min_exp > max_exp {
                    return Err(format!("empty exponent range {min_exp}..={max_exp}"));
                }
                Ok(grid_tuples(*min_exp, *max_exp, arity)
                    .into_iter()
                    .map(|t| t.into_iter().map(|e| ModelValue::Poly(QPoly::x_pow(e))).collect())
                    .collect())
            }
            (SamplingPlan::MonomialGrid { .. }, c) => Err(format!("monomial grid needs polynomials, model carries {c}")),
            (SamplingPlan::BasisTuples, Carrier::Basis(m)) => Ok(index_tuples(m, arity)
                .into_iter()
                .map(|t| t.into_iter().map(|i| ModelValue::basis_vector(i + 1, m)).collect())
                .collect()),
            (SamplingPlan::BasisTuples, c) => Err(format!("basis tuples need a basis algebra, model carries {c}")),
            (SamplingPlan::RandomVectors { count, seed, bound }, c) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..*count).map(|_| (0..arity).map(|_| random_value(&mut rng, c, *bound)).collect()).collect())
            }
            (SamplingPlan::ExplicitList(v), _) => {
                if let Some(bad) = v.iter().find(|a| a.len() < arity) {
                    return Err(format!("explicit assignment has {} values, need {arity}", bad.len()));
                }
                Ok(v.clone())
            }
        }
    }
}

impl fmt::Display for SamplingPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplingPlan::MonomialGrid { min_exp: 0, max_exp } => write!(f, "MonomialGrid({max_exp})"),
            SamplingPlan::MonomialGrid { min_exp, max_exp } => write!(f, "MonomialGrid({min_exp}..={max_exp})"),
            SamplingPlan::RandomVectors { count, seed, bound } => write!(f, "RandomVectors({count}, seed {seed}, bound {bound})"),
            SamplingPlan::BasisTuples => f.write_str("BasisTuples"),
            SamplingPlan::ExplicitList(v) => write!(f, "ExplicitList({})", v.len()),
        }
    }
}

fn random_int(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    Rat::from_integer(rng.gen_range(-bound..=bound).into())
}

fn random_value(rng: &mut ChaCha8Rng, carrier: Carrier, bound: i64) -> ModelValue {
    match carrier {
        Carrier::Seq(n) => ModelValue::Seq((0..n).map(|_| random_int(rng, bound)).collect()),
        Carrier::Basis(m) => ModelValue::Basis((0..m).map(|_| random_int(rng, bound)).collect()),
        Carrier::Poly => {
            let k = rng.gen_range(1..=3);
            let terms: Vec<(u32, Rat)> = (0..k).map(|_| (rng.gen_range(0..=4), random_int(rng, bound))).collect();
            ModelValue::Poly(terms.into_iter().fold(QPoly::zero(), |acc, (e, c)| &acc + &QPoly::monomial(c, e)))
        }
    }
}

fn index_tuples(m: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| (0..m).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// Grid tuples in plan order: pairwise-distinct exponent tuples first.
pub(crate) fn grid_tuples(lo: u32, hi: u32, arity: usize) -> Vec<Vec<u32>> {
    let all: Vec<Vec<u32>> = index_tuples((hi - lo + 1) as usize, arity)
        .into_iter()
        .map(|t| t.into_iter().map(|i| i as u32 + lo).collect())
        .collect();
    let distinct = |t: &Vec<u32>| t.iter().enumerate().all(|(i, a)| !t[..i].contains(a));
    let (mut first, rest): (Vec<_>, Vec<_>) = all.into_iter().partition(distinct);
    first.extend(rest);
    first
}
