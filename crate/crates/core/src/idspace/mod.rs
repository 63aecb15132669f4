//! Identity spaces: monomial bases under symmetry, exact evaluation
//! matrices over a model, kernels and span decompositions.

mod basis;
mod matrix;
mod modular;
mod span;

pub use basis::{enumerate_basis, MonomialBasis, Symmetry, MAX_BASIS_DEGREE};
pub use matrix::{Matrix, NullspaceBasis, RowReducer};
pub use modular::{nullspace_exact, rank_exact};
pub use span::{commutativity_consequences, consequence_span, coordinate_matrix, decompose, span_dimension, Decomposition};

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::models::{Model, ModelError, ModelValue};
use crate::verify::SamplingPlan;
use crate::{QMatrix, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdSpaceError {
    #[error("basis degree {0} is not supported (1..=6)")]
    UnsupportedDegree(usize),
    #[error("unknown symmetry '{0}' (none, comm, anticomm, rcomReduced)")]
    UnknownSymmetry(String),
    #[error("monomial {0} is not in the basis")]
    NotInBasis(String),
    #[error("consequences only go from degree d to d or d+1, not {from} to {to}")]
    DegreeGap { from: usize, to: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid coordinate selector: {0}")]
    Selector(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("sampling: {0}")]
    Plan(String),
}

/// Which coordinates of each evaluated value become matrix rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordinateSelector {
    All,
    /// 1-based sequence or basis component, or the coefficient of `x^k`.
    Component(u32),
}

impl fmt::Display for CoordinateSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateSelector::All => f.write_str("all"),
            CoordinateSelector::Component(k) => write!(f, "component {k}"),
        }
    }
}

/// Rows of evaluations of every basis monomial, in sample order.
pub fn build_matrix(
    basis: &MonomialBasis,
    m: &Model,
    samples: &[Vec<ModelValue>],
    selector: CoordinateSelector,
) -> Result<QMatrix, IdSpaceError> {
    let interp = basis.symmetry().interpretation();
    for s in samples {
        if s.len() < basis.degree() {
            return Err(IdSpaceError::Plan(format!("sample has {} values, need {}", s.len(), basis.degree())));
        }
        for v in s {
            m.check_value(v)?;
        }
    }
    let blocks: Vec<Vec<Vec<Rat>>> = samples
        .par_iter()
        .map(|s| {
            let vals = m.eval_terms(basis.monomials(), interp, s);
            let coords: Vec<Vec<(u32, Rat)>> = vals.iter().map(ModelValue::coordinates).collect();
            let keys: Vec<u32> = match selector {
                CoordinateSelector::Component(k) => vec![k],
                CoordinateSelector::All => {
                    coords.iter().flatten().map(|(k, _)| *k).collect::<BTreeSet<u32>>().into_iter().collect()
                }
            };
            keys.iter()
                .map(|k| {
                    coords
                        .iter()
                        .map(|c| c.iter().find(|(j, _)| j == k).map_or_else(num_traits::Zero::zero, |(_, x)| x.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(QMatrix::from_rows(basis.len(), blocks.into_iter().flatten().collect()))
}

/// A model's identity space on a basis together with the evidence for it.
#[derive(Clone, Debug)]
pub struct IdentitySpace {
    pub matrix: QMatrix,
    pub kernel: NullspaceBasis<Rat>,
    pub samples: usize,
}

/// Evaluate on `initial`, then add deterministic pseudorandom batches until
/// the rank is unchanged for three consecutive batches.
pub fn identity_space(
    basis: &MonomialBasis,
    m: &Model,
    initial: &[Vec<ModelValue>],
    selector: CoordinateSelector,
    seed: u64,
) -> Result<IdentitySpace, IdSpaceError> {
    let mut matrix = build_matrix(basis, m, initial, selector)?;
    let mut samples = initial.len();
    let mut reduced = modular::ModReducer::new(basis.len());
    for i in 0..matrix.rows() {
        reduced.insert(matrix.row(i));
    }
    let per_sample = match selector {
        CoordinateSelector::Component(_) => 1,
        CoordinateSelector::All => match m.carrier() {
            crate::models::Carrier::Seq(n) | crate::models::Carrier::Basis(n) => n,
            crate::models::Carrier::Poly => 1,
        },
    };
    let batch = (basis.len() / (4 * per_sample)).max(4);
    let mut stable = 0;
    let mut round = 0u64;
    while stable < 3 && reduced.rank() < basis.len() {
        let plan = SamplingPlan::RandomVectors { count: batch, seed: seed.wrapping_add(round), bound: 2 };
        round += 1;
        let new = plan.assignments(m.carrier(), basis.degree()).map_err(IdSpaceError::Plan)?;
        let rows = build_matrix(basis, m, &new, selector)?;
        samples += new.len();
        let mut grew = false;
        for i in 0..rows.rows() {
            grew |= reduced.insert(rows.row(i)).unwrap_or(true);
        }
        matrix.extend_rows(rows);
        stable = if grew { 0 } else { stable + 1 };
    }
    let kernel = nullspace_exact(&matrix);
    Ok(IdentitySpace { matrix, kernel, samples })
}

/// The twelve sample assignments of the classical degree-four table:
/// `a = (0,1,0,1)` with the listed `b, c, d`.
pub fn table1_samples() -> Vec<Vec<ModelValue>> {
    const BCD: [[[i64; 4]; 3]; 12] = [
        [[1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 1, 1]],
        [[1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 2, 1]],
        [[1, 0, 1, 0], [0, 1, 1, 1], [1, 2, 1, 1]],
        [[1, 0, 1, 0], [0, 1, 1, 2], [1, 1, 2, 1]],
        [[1, 0, 1, 0], [0, 1, 1, 2], [1, 2, 1, 1]],
        [[1, 0, 1, 0], [0, 1, 2, 1], [1, 1, 1, 1]],
        [[1, 0, 1, 0], [0, 1, 2, 1], [1, 2, 1, 1]],
        [[1, 0, 1, 0], [0, 1, 2, 2], [1, 1, 2, 1]],
        [[1, 0, 1, 0], [0, 1, 2, 2], [1, 2, 2, 1]],
        [[1, 0, 2, 0], [0, 1, 1, 1], [1, 1, 1, 1]],
        [[1, 0, 2, 0], [0, 1, 1, 1], [1, 1, 2, 1]],
        [[1, 0, 2, 0], [0, 1, 1, 1], [1, 2, 1, 1]],
    ];
    BCD.iter()
        .map(|row| {
            let mut s = vec![ModelValue::seq_from_ints(&[0, 1, 0, 1])];
            s.extend(row.iter().map(|v| ModelValue::seq_from_ints(v)));
            s
        })
        .collect()
}
