use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::QFreePoly;

use super::term::Term;
use super::FreeTermError;

/// A named rule set acting on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RewriteSystem {
    /// `(u*a)*b -> (u*b)*a` when `a > b`, at every position.
    RcomSort,
    /// Orient every node of a commutative word.
    CommSort,
    /// Orient every node of an anticommutative word, tracking signs.
    AnticommSort,
    /// The four degree-five rules, applied verbatim.
    Deg5Rules,
}

impl fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewriteSystem::RcomSort => "rcomSort",
            RewriteSystem::CommSort => "commSort",
            RewriteSystem::AnticommSort => "anticommSort",
            RewriteSystem::Deg5Rules => "deg5Rules",
        })
    }
}

/// Signed monomial result: `None` is zero, `Some((t, true))` is `-t`.
pub type Signed = Option<(Term, bool)>;

pub fn normal_form(p: &QFreePoly, rs: RewriteSystem) -> Result<QFreePoly, FreeTermError> {
    if rs == RewriteSystem::Deg5Rules {
        if let Some((t, _)) = p.terms().find(|(t, _)| t.degree() != 5) {
            return Err(FreeTermError::RuleSetDegree { rules: rs, degree: t.degree() });
        }
    }
    Ok(p.map_signed(|t| normal_form_term(t, rs)))
}

pub fn normal_form_term(t: &Term, rs: RewriteSystem) -> Signed {
    match rs {
        RewriteSystem::RcomSort => Some((rcom_nf(t), false)),
        RewriteSystem::CommSort => Some((comm_nf(t), false)),
        RewriteSystem::AnticommSort => anticomm_nf(t),
        RewriteSystem::Deg5Rules => Some((deg5_nf(t.clone()), false)),
    }
}

fn rcom_nf(t: &Term) -> Term {
    let mut args = Vec::new();
    let mut cur = t;
    while let Term::Mul(l, r) = cur {
        args.push(rcom_nf(r));
        cur = l;
    }
    args.sort();
    args.into_iter().fold(cur.clone(), Term::mul)
}

fn comm_nf(t: &Term) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::Mul(l, r) => {
            let (l, r) = (comm_nf(l), comm_nf(r));
            if l.bracket_cmp(&r) == Ordering::Greater {
                Term::mul(r, l)
            } else {
                Term::mul(l, r)
            }
        }
    }
}

fn anticomm_nf(t: &Term) -> Signed {
    match t {
        Term::Var(_) => Some((t.clone(), false)),
        Term::Mul(l, r) => {
            let (l, sl) = anticomm_nf(l)?;
            let (r, sr) = anticomm_nf(r)?;
            match l.bracket_cmp(&r) {
                Ordering::Equal => None,
                Ordering::Greater => Some((Term::mul(r, l), !(sl ^ sr))),
                Ordering::Less => Some((Term::mul(l, r), sl ^ sr)),
            }
        }
    }
}

fn deg5_nf(mut t: Term) -> Term {
    while let Some(next) = deg5_step(&t) {
        t = next;
    }
    t
}

fn is_var(t: &Term) -> Option<u32> {
    match t {
        Term::Var(i) => Some(*i),
        _ => None,
    }
}

fn leaf_pair(t: &Term) -> Option<(u32, u32)> {
    match t {
        Term::Mul(l, r) => Some((is_var(l)?, is_var(r)?)),
        _ => None,
    }
}

/// `x*(y*z)` with all three variables, rewritten to `(y*z)*x`.
fn flip_var_pair(t: &Term) -> Option<Term> {
    match t {
        Term::Mul(x, yz) if is_var(x).is_some() && leaf_pair(yz).is_some() => Some(Term::mul((**yz).clone(), (**x).clone())),
        _ => None,
    }
}

/// Apply one of the four rules at the root, if any matches.
fn deg5_root(t: &Term) -> Option<Term> {
    let Term::Mul(l, r) = t else { return None };
    // a_j a_i -> a_i a_j, i < j
    if let (Some(j), Some(i)) = (is_var(l), is_var(r)) {
        if i < j {
            return Some(Term::mul(Term::Var(i), Term::Var(j)));
        }
    }
    // (a_i a_j)(a_s a_k) -> (a_s a_k)(a_i a_j), i > s, i < j, s < k
    if let (Some((i, j)), Some((s, k))) = (leaf_pair(l), leaf_pair(r)) {
        if i > s && i < j && s < k {
            return Some(Term::mul((**r).clone(), (**l).clone()));
        }
    }
    // (x(yz))(uv) -> ((yz)x)(uv)
    if leaf_pair(r).is_some() {
        if let Some(flipped) = flip_var_pair(l) {
            return Some(Term::mul(flipped, (**r).clone()));
        }
    }
    // ((x(yz))u)v -> (((yz)x)u)v
    if is_var(r).is_some() {
        if let Term::Mul(inner, u) = &**l {
            if is_var(u).is_some() {
                if let Some(flipped) = flip_var_pair(inner) {
                    return Some(Term::mul(Term::mul(flipped, (**u).clone()), (**r).clone()));
                }
            }
        }
    }
    None
}

/// One rewrite at the outermost-leftmost matching position.
fn deg5_step(t: &Term) -> Option<Term> {
    if let Some(s) = deg5_root(t) {
        return Some(s);
    }
    match t {
        Term::Var(_) => None,
        Term::Mul(l, r) => {
            if let Some(l2) = deg5_step(l) {
                return Some(Term::mul(l2, (**r).clone()));
            }
            deg5_step(r).map(|r2| Term::mul((**l).clone(), r2))
        }
    }
}

type Path = Vec<bool>;

fn subterm<'a>(t: &'a Term, path: &[bool]) -> &'a Term {
    path.iter().fold(t, |cur, &right| match cur {
        Term::Mul(l, r) => {
            if right {
                r
            } else {
                l
            }
        }
        Term::Var(_) => unreachable!("path leaves the tree"),
    })
}

fn replace(t: &Term, path: &[bool], new: Term) -> Term {
    match (path.split_first(), t) {
        (None, _) => new,
        (Some((&right, rest)), Term::Mul(l, r)) => {
            if right {
                Term::mul((**l).clone(), replace(r, rest, new))
            } else {
                Term::mul(replace(l, rest, new), (**r).clone())
            }
        }
        (Some(_), Term::Var(_)) => unreachable!("path leaves the tree"),
    }
}

fn positions(t: &Term, prefix: &mut Path, out: &mut Vec<Path>) {
    out.push(prefix.clone());
    if let Term::Mul(l, r) = t {
        prefix.push(false);
        positions(l, prefix, out);
        prefix.pop();
        prefix.push(true);
        positions(r, prefix, out);
        prefix.pop();
    }
}

/// Single-step rule at the root of `t`: the rewritten subterm and whether the
/// sign flips, or `Err(())` when the monomial vanishes.
fn single_step(t: &Term, rs: RewriteSystem) -> Option<Result<(Term, bool), ()>> {
    match rs {
        RewriteSystem::RcomSort => match t {
            Term::Mul(l, b) => match &**l {
                Term::Mul(u, a) if a > b => Some(Ok((Term::mul(Term::mul((**u).clone(), (**b).clone()), (**a).clone()), false))),
                _ => None,
            },
            _ => None,
        },
        RewriteSystem::CommSort | RewriteSystem::AnticommSort => match t {
            Term::Mul(l, r) => match l.bracket_cmp(r) {
                Ordering::Greater => Some(Ok((Term::mul((**r).clone(), (**l).clone()), rs == RewriteSystem::AnticommSort))),
                Ordering::Equal if rs == RewriteSystem::AnticommSort => Some(Err(())),
                _ => None,
            },
            _ => None,
        },
        RewriteSystem::Deg5Rules => deg5_root(t).map(|s| Ok((s, false))),
    }
}

/// Reduce by repeatedly applying a single rule at a uniformly random redex.
///
/// Used to test that the deterministic normal form does not depend on the
/// order of rule applications.
pub fn reduce_randomized<R: Rng>(t: &Term, rs: RewriteSystem, rng: &mut R) -> Signed {
    let mut cur = t.clone();
    let mut neg = false;
    loop {
        let mut all = Vec::new();
        positions(&cur, &mut Vec::new(), &mut all);
        let redexes: Vec<_> = all
            .into_iter()
            .filter_map(|p| single_step(subterm(&cur, &p), rs).map(|r| (p, r)))
            .collect();
        if redexes.is_empty() {
            return Some((cur, neg));
        }
        let (path, step) = &redexes[rng.gen_range(0..redexes.len())];
        match step {
            Err(()) => return None,
            Ok((s, flip)) => {
                cur = replace(&cur, path, s.clone());
                neg ^= flip;
            }
        }
    }
}
