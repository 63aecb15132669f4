use std::collections::BTreeMap;

use crate::freeterm::Term;
use crate::models::{ClosedForm, Model};
use crate::QFreePoly;

/// Grid bound for which vanishing on `MonomialGrid(B)` is a proof.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceBound {
    Proven(u32),
    /// The model or polynomial is outside the closed-form analysis.
    Heuristic,
}

/// A linear form `sum_v mult_v e_v + c` appearing in a denominator.
type LinearFactor = (Vec<(u32, u32)>, u32);

struct TermShape {
    /// Numerator degree bound per variable.
    num: BTreeMap<u32, u32>,
    den: BTreeMap<LinearFactor, u32>,
}

/// Variable multiplicities and number of internal nodes of a subterm.
fn walk(t: &Term, cf: &ClosedForm, shape: &mut TermShape) -> (BTreeMap<u32, u32>, u32) {
    match t {
        Term::Var(i) => (BTreeMap::from([(*i, 1)]), 0),
        Term::Mul(l, r) => {
            let (lc, li) = walk(l, cf, shape);
            let (rc, ri) = walk(r, cf, shape);
            for (side, offsets, nd) in [(&lc, &cf.den_left, cf.num_deg.0), (&rc, &cf.den_right, cf.num_deg.1)] {
                for v in side.keys() {
                    *shape.num.entry(*v).or_default() += nd;
                }
                let internal = if std::ptr::eq(side, &lc) { li } else { ri };
                for off in offsets {
                    let key = (side.iter().map(|(v, m)| (*v, *m)).collect(), off + internal * cf.shift);
                    *shape.den.entry(key).or_default() += 1;
                }
            }
            let mut content = lc;
            for (v, m) in rc {
                *content.entry(v).or_default() += m;
            }
            (content, li + ri + 1)
        }
    }
}

/// Per-variable degree bound of the numerator of the exponent-indexed
/// coefficient of `p`, after clearing the least common denominator.
pub(crate) fn degree_bounds(p: &QFreePoly, cf: &ClosedForm) -> Option<BTreeMap<u32, i64>> {
    let mut shapes = Vec::new();
    let mut content: Option<BTreeMap<u32, u32>> = None;
    for (t, _) in p.terms() {
        let mut s = TermShape { num: BTreeMap::new(), den: BTreeMap::new() };
        let (c, _) = walk(t, cf, &mut s);
        match &content {
            None => content = Some(c),
            Some(prev) if *prev != c => return None,
            _ => {}
        }
        shapes.push(s);
    }
    let Some(content) = content else { return Some(BTreeMap::new()) };
    let mut lcm: BTreeMap<LinearFactor, u32> = BTreeMap::new();
    for s in &shapes {
        for (f, m) in &s.den {
            let e = lcm.entry(f.clone()).or_default();
            *e = (*e).max(*m);
        }
    }
    let deg_in = |den: &BTreeMap<LinearFactor, u32>, v: u32| -> i64 {
        den.iter().filter(|((vs, _), _)| vs.iter().any(|(w, _)| *w == v)).map(|(_, m)| i64::from(*m)).sum()
    };
    Some(
        content
            .keys()
            .map(|&v| {
                let excess = shapes
                    .iter()
                    .map(|s| i64::from(s.num.get(&v).copied().unwrap_or(0)) - deg_in(&s.den, v))
                    .max()
                    .unwrap_or(0);
                (v, (excess + deg_in(&lcm, v)).max(0))
            })
            .collect(),
    )
}

/// The smallest grid bound `B` such that vanishing on `MonomialGrid(B)`
/// forces the coefficient of `p` to vanish for all exponent tuples.
///
/// Every product in the polynomial family sends `x^I, x^J` to
/// `c(I,J) x^(I+J+s)` with `c` a ratio of a polynomial and linear factors.
/// Composing along each term gives a rational function of the exponents
/// whose cleared numerator has degree at most `delta_v` in variable `v`; a
/// polynomial of that shape vanishing on `{0..B}^d` with `B >= delta_v` is
/// zero.
pub fn evidence_bound(p: &QFreePoly, m: &Model) -> EvidenceBound {
    let Some(spec) = m.poly_spec() else { return EvidenceBound::Heuristic };
    match degree_bounds(p, &spec.closed_form()) {
        Some(d) => EvidenceBound::Proven(d.values().copied().max().unwrap_or(0) as u32),
        None => EvidenceBound::Heuristic,
    }
}
