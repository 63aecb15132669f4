use itertools::Itertools;
use num_traits::Zero;

use crate::freeterm::Term;
use crate::{QFreePoly, QMatrix, Rat};

use super::{IdSpaceError, MonomialBasis, NullspaceBasis, Symmetry};

/// Consequences of `f` in degree `target`: every variable permutation, and
/// for one degree up also left and right multiplication by a fresh variable
/// and substitution of a product with a fresh variable into each slot.
/// Everything is reduced by `symmetry`; zero results are dropped.
pub fn consequence_span(f: &QFreePoly, target: usize, symmetry: Symmetry) -> Result<Vec<QFreePoly>, IdSpaceError> {
    if f.is_zero() {
        return Ok(Vec::new());
    }
    let d = f.degree().unwrap_or(0);
    if !f.is_homogeneous() {
        return Err(IdSpaceError::NotHomogeneous);
    }
    let arity = d as u32;
    let base = f.clone().with_arity(arity);
    let seeds = if target == d {
        vec![base]
    } else if target == d + 1 {
        let n = arity + 1;
        let fresh = QFreePoly::var(n, n);
        let g = base.clone().with_arity(n);
        let mut s = vec![fresh.mul(&g), g.mul(&fresh)];
        for i in 1..=arity {
            for left in [false, true] {
                let args: Vec<QFreePoly> = (1..=arity)
                    .map(|j| {
                        let v = QFreePoly::var(j, n);
                        match (j == i, left) {
                            (false, _) => v,
                            (true, false) => v.mul(&fresh),
                            (true, true) => fresh.mul(&v),
                        }
                    })
                    .collect();
                s.push(base.substitute(&args).expect("argument count matches").with_arity(n));
            }
        }
        s
    } else {
        return Err(IdSpaceError::DegreeGap { from: d, to: target });
    };
    let n = target as u32;
    let mut out = Vec::new();
    for seed in &seeds {
        for sigma in (1..=n).permutations(target) {
            let p = symmetry.reduce(&seed.permute(&sigma).expect("permutation length matches arity"));
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Differences `t - t'` where `t'` swaps the children of one node of `t`,
/// over all plain multilinear monomials of `degree`.
pub fn commutativity_consequences(degree: usize) -> Result<Vec<QFreePoly>, IdSpaceError> {
    fn swaps(t: &Term) -> Vec<Term> {
        match t {
            Term::Var(_) => vec![],
            Term::Mul(l, r) => {
                let mut v = vec![Term::mul((**r).clone(), (**l).clone())];
                v.extend(swaps(l).into_iter().map(|l2| Term::mul(l2, (**r).clone())));
                v.extend(swaps(r).into_iter().map(|r2| Term::mul((**l).clone(), r2)));
                v
            }
        }
    }
    let basis = super::enumerate_basis(degree, Symmetry::None)?;
    let n = degree as u32;
    let mut out = Vec::new();
    for t in basis.monomials() {
        for s in swaps(t) {
            if &s != t {
                out.push(QFreePoly::monomial(t.clone(), n) - QFreePoly::monomial(s, n));
            }
        }
    }
    Ok(out)
}

/// Coordinate matrix with one row per polynomial.
pub fn coordinate_matrix(polys: &[QFreePoly], basis: &MonomialBasis) -> Result<QMatrix, IdSpaceError> {
    let rows = polys.iter().map(|p| basis.coordinates(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_rows(basis.len(), rows))
}

pub fn span_dimension(polys: &[QFreePoly], basis: &MonomialBasis) -> Result<usize, IdSpaceError> {
    Ok(coordinate_matrix(polys, basis)?.rank())
}

/// `target = sum_i coefficients[i] * span[i] + sum_k kernel_coefficients[k] * kernel[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub coefficients: Vec<Rat>,
    pub kernel_coefficients: Vec<Rat>,
    /// The kernel part, as a polynomial in the basis.
    pub residual: QFreePoly,
}

impl Decomposition {
    pub fn uses_kernel(&self) -> bool {
        !self.residual.is_zero()
    }
}

/// Express `target` through `span` after normal-form reduction, optionally
/// modulo the identity space `kernel`. `None` when it is not in the span.
pub fn decompose(
    target: &QFreePoly,
    span: &[QFreePoly],
    kernel: Option<&NullspaceBasis<Rat>>,
    basis: &MonomialBasis,
) -> Result<Option<Decomposition>, IdSpaceError> {
    let mut columns = span.iter().map(|p| basis.coordinates(p)).collect::<Result<Vec<_>, _>>()?;
    let kvecs = kernel.map_or(&[][..], |k| k.vectors.as_slice());
    if let Some(v) = kvecs.iter().find(|v| v.len() != basis.len()) {
        return Err(IdSpaceError::DimensionMismatch { expected: basis.len(), found: v.len() });
    }
    columns.extend(kvecs.iter().cloned());
    let b = basis.coordinates(target)?;
    if columns.is_empty() {
        return Ok(b.iter().all(Zero::is_zero).then(|| Decomposition {
            coefficients: vec![],
            kernel_coefficients: vec![],
            residual: QFreePoly::zero(basis.degree() as u32),
        }));
    }
    let a = QMatrix::from_rows(basis.len(), columns).transpose();
    let Some(x) = a.solve(&b) else { return Ok(None) };
    let (coefficients, kernel_coefficients) = (x[..span.len()].to_vec(), x[span.len()..].to_vec());
    let mut res = vec![Rat::zero(); basis.len()];
    for (c, v) in kernel_coefficients.iter().zip(kvecs) {
        for (r, e) in res.iter_mut().zip(v) {
            *r += c * e;
        }
    }
    Ok(Some(Decomposition { coefficients, kernel_coefficients, residual: basis.to_poly(&res) }))
}
