use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::{Rat, Scalar};

use super::term::Term;
use super::FreeTermError;

/// Linear combination of free monomials with a declared arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreePoly<T> {
    terms: BTreeMap<Term, T>,
    arity: u32,
}

impl<T: Scalar> FreePoly<T> {
    pub fn zero(arity: u32) -> Self {
        FreePoly { terms: BTreeMap::new(), arity }
    }

    pub fn monomial(t: Term, arity: u32) -> Self {
        Self::term(T::one(), t, arity)
    }

    pub fn term(c: T, t: Term, arity: u32) -> Self {
        let mut p = Self::zero(arity.max(t.max_var()));
        p.add_term(t, c);
        p
    }

    pub fn var(i: u32, arity: u32) -> Self {
        Self::monomial(Term::var(i), arity)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Term, T)>, arity: u32) -> Self {
        let mut p = Self::zero(arity);
        for (t, c) in pairs {
            p.arity = p.arity.max(t.max_var());
            p.add_term(t, c);
        }
        p
    }

    pub fn add_term(&mut self, t: Term, c: T) {
        if c.is_zero() {
            return;
        }
        self.arity = self.arity.max(t.max_var());
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn with_arity(mut self, arity: u32) -> Self {
        self.arity = arity.max(self.max_var());
        self
    }

    fn max_var(&self) -> u32 {
        self.terms.keys().map(Term::max_var).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &T)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> T {
        self.terms.get(t).cloned().unwrap_or_else(T::zero)
    }

    /// Degree of the first monomial, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Term::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Term::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|t| t.is_multilinear(self.arity))
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        FreePoly {
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v.clone() * c.clone())).collect(),
            arity: self.arity,
        }
    }

    /// Formal product, distributed over monomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity.max(other.arity));
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(Term::mul(s.clone(), t.clone()), a.clone() * b.clone());
            }
        }
        out
    }

    /// Relabel variables: `Var(i)` becomes `Var(sigma[i-1])`.
    ///
    /// With `sigma = [i1, ..., ik]` this is the instance `f(a_i1, ..., a_ik)`.
    pub fn permute(&self, sigma: &[u32]) -> Result<Self, FreeTermError> {
        if sigma.len() != self.arity as usize {
            return Err(FreeTermError::ArityMismatch { expected: self.arity as usize, found: sigma.len() });
        }
        let f = |i: u32| sigma[(i - 1) as usize];
        Ok(self.map_terms(|t| t.relabel(&f), self.arity.max(sigma.iter().copied().max().unwrap_or(0))))
    }

    /// Substitute polynomial `args[i-1]` for every occurrence of `Var(i)`.
    pub fn substitute(&self, args: &[FreePoly<T>]) -> Result<Self, FreeTermError> {
        if args.len() != self.arity as usize {
            return Err(FreeTermError::ArityMismatch { expected: self.arity as usize, found: args.len() });
        }
        let arity = args.iter().map(|a| a.arity).max().unwrap_or(0);
        let mut out = Self::zero(arity);
        for (t, c) in &self.terms {
            let expanded = substitute_term(t, args, arity);
            for (s, d) in expanded.terms {
                out.add_term(s, d * c.clone());
            }
        }
        Ok(out)
    }

    /// Apply a monomial-level map and merge coefficients.
    pub fn map_terms(&self, f: impl Fn(&Term) -> Term, arity: u32) -> Self {
        let mut out = Self::zero(arity);
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }

    /// Apply a signed monomial-level map (`None` means the monomial vanishes).
    pub fn map_signed(&self, f: impl Fn(&Term) -> Option<(Term, bool)>) -> Self {
        let mut out = Self::zero(self.arity);
        for (t, c) in &self.terms {
            if let Some((s, negate)) = f(t) {
                out.add_term(s, if negate { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FreePoly<U> {
        FreePoly::from_terms(self.terms.iter().map(|(t, c)| (t.clone(), f(c))), self.arity)
    }
}

fn substitute_term<T: Scalar>(t: &Term, args: &[FreePoly<T>], arity: u32) -> FreePoly<T> {
    match t {
        Term::Var(i) => args[(*i - 1) as usize].clone().with_arity(arity),
        Term::Mul(l, r) => substitute_term(l, args, arity).mul(&substitute_term(r, args, arity)),
    }
}

impl<T: Scalar> Add for &FreePoly<T> {
    type Output = FreePoly<T>;
    fn add(self, rhs: Self) -> FreePoly<T> {
        let mut out = self.clone();
        out.arity = out.arity.max(rhs.arity);
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &FreePoly<T> {
    type Output = FreePoly<T>;
    fn sub(self, rhs: Self) -> FreePoly<T> {
        let mut out = self.clone();
        out.arity = out.arity.max(rhs.arity);
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Neg for &FreePoly<T> {
    type Output = FreePoly<T>;
    fn neg(self) -> FreePoly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Add for FreePoly<T> {
    type Output = FreePoly<T>;
    fn add(self, rhs: Self) -> FreePoly<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for FreePoly<T> {
    type Output = FreePoly<T>;
    fn sub(self, rhs: Self) -> FreePoly<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for FreePoly<T> {
    type Output = FreePoly<T>;
    fn neg(self) -> FreePoly<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for FreePoly<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(FreePoly::zero(0), |acc, p| &acc + &p)
    }
}

impl fmt::Display for FreePoly<Rat> {
    /// DSL syntax, e.g. `(a*b)*c - (a*c)*b`; zero prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (t, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{}*", crate::qexact::format_rat(&mag))?;
            }
            match t {
                Term::Var(_) => write!(f, "{t}")?,
                Term::Mul(..) if mag.is_one() => write!(f, "{t}")?,
                Term::Mul(..) => write!(f, "({t})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreePoly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
