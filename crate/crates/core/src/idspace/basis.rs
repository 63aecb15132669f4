use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::freeterm::{bracketings, normal_form, Interpretation, RewriteSystem, Term};
use crate::{QFreePoly, Rat};

use super::IdSpaceError;

/// Symmetry imposed on the monomials of a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    /// Commutative (Jordan) words.
    Comm,
    /// Anticommutative (Lie) words.
    Anticomm,
    /// Plain monomials modulo right-commutativity.
    RcomReduced,
}

impl Symmetry {
    /// How basis monomials are evaluated in a model.
    pub fn interpretation(self) -> Interpretation {
        match self {
            Symmetry::None | Symmetry::RcomReduced => Interpretation::Plain,
            Symmetry::Comm => Interpretation::JordanWords,
            Symmetry::Anticomm => Interpretation::LieWords,
        }
    }

    pub fn rewrite_system(self) -> Option<RewriteSystem> {
        match self {
            Symmetry::None => None,
            Symmetry::Comm => Some(RewriteSystem::CommSort),
            Symmetry::Anticomm => Some(RewriteSystem::AnticommSort),
            Symmetry::RcomReduced => Some(RewriteSystem::RcomSort),
        }
    }

    pub fn reduce(self, p: &QFreePoly) -> QFreePoly {
        match self.rewrite_system() {
            Some(rs) => normal_form(p, rs).expect("sort systems apply in every degree"),
            None => p.clone(),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::None => "none",
            Symmetry::Comm => "comm",
            Symmetry::Anticomm => "anticomm",
            Symmetry::RcomReduced => "rcomReduced",
        })
    }
}

impl std::str::FromStr for Symmetry {
    type Err = IdSpaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Symmetry::None),
            "comm" => Ok(Symmetry::Comm),
            "anticomm" => Ok(Symmetry::Anticomm),
            "rcomReduced" | "rcom" => Ok(Symmetry::RcomReduced),
            other => Err(IdSpaceError::UnknownSymmetry(other.to_string())),
        }
    }
}

/// Ordered canonical multilinear monomials of one degree.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: usize,
    symmetry: Symmetry,
    monomials: Vec<Term>,
    index: HashMap<Term, usize>,
}

pub const MAX_BASIS_DEGREE: usize = 6;

pub fn enumerate_basis(degree: usize, symmetry: Symmetry) -> Result<MonomialBasis, IdSpaceError> {
    if degree == 0 || degree > MAX_BASIS_DEGREE {
        return Err(IdSpaceError::UnsupportedDegree(degree));
    }
    let arity = degree as u32;
    let mut set = BTreeSet::new();
    for perm in (1..=arity).permutations(degree) {
        for t in bracketings(&perm) {
            let reduced = symmetry.reduce(&QFreePoly::monomial(t, arity));
            set.extend(reduced.terms().map(|(t, _)| t.clone()));
        }
    }
    let mut monomials: Vec<Term> = set.into_iter().collect();
    monomials.sort_by(|a, b| a.basis_cmp(b));
    let index = monomials.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    Ok(MonomialBasis { degree, symmetry, monomials, index })
}

impl MonomialBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn monomials(&self) -> &[Term] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of `p` after reduction to the basis normal form.
    pub fn coordinates(&self, p: &QFreePoly) -> Result<Vec<Rat>, IdSpaceError> {
        let mut v = vec![Rat::zero(); self.len()];
        for (t, c) in self.symmetry.reduce(p).terms() {
            let i = self.position(t).ok_or_else(|| IdSpaceError::NotInBasis(t.to_string()))?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn to_poly(&self, v: &[Rat]) -> QFreePoly {
        let pairs = self.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t.clone(), c.clone()));
        QFreePoly::from_terms(pairs, self.degree as u32)
    }

    /// Monomials in DSL syntax in basis order.
    pub fn render(&self) -> Vec<String> {
        let interp = self.symmetry.interpretation();
        self.monomials.iter().map(|t| interp.render(t)).collect()
    }
}
