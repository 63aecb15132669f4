use std::cmp::Ordering;
use std::fmt;

/// A monomial of the free nonassociative magma: a binary tree over variables.
///
/// Variables are 1-based indices. Ordering is the fixed term order used by
/// every rewrite system: degree, then leftmost leaf, then children left to
/// right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u32),
    Mul(Box<Term>, Box<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(i: u32) -> Term {
        assert!(i >= 1, "variables are 1-based");
        Term::Var(i)
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Mul(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn leftmost(&self) -> u32 {
        match self {
            Term::Var(i) => *i,
            Term::Mul(l, _) => l.leftmost(),
        }
    }

    /// Leaf labels from left to right.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(8);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::Mul(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Term::Var(i) => *i,
            Term::Mul(l, r) => l.max_var().max(r.max_var()),
        }
    }

    /// True when every variable in `1..=arity` occurs exactly once.
    pub fn is_multilinear(&self, arity: u32) -> bool {
        let mut leaves = self.leaves();
        if leaves.len() != arity as usize {
            return false;
        }
        leaves.sort_unstable();
        leaves.iter().copied().eq(1..=arity)
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> Term {
        match self {
            Term::Var(i) => Term::Var(f(*i)),
            Term::Mul(l, r) => Term::mul(l.relabel(f), r.relabel(f)),
        }
    }

    /// Left-child degrees of the internal nodes in preorder; the tree shape
    /// used for ordering monomial bases.
    pub fn shape_key(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_shape(&mut out);
        out
    }

    fn collect_shape(&self, out: &mut Vec<usize>) {
        if let Term::Mul(l, r) = self {
            out.push(l.degree());
            l.collect_shape(out);
            r.collect_shape(out);
        }
    }

    /// Order used to list bases: deeper left subtrees first, then leaf
    /// sequence. For commutative and anticommutative words this reproduces
    /// the customary listing `((ab)c)d, ..., (ab)(cd), ...`.
    pub fn basis_cmp(&self, other: &Term) -> Ordering {
        other.shape_key().cmp(&self.shape_key()).then_with(|| self.leaves().cmp(&other.leaves()))
    }

    /// Order used to orient the two children of a commutative or
    /// anticommutative node: heavier child first, otherwise term order.
    pub fn bracket_cmp(&self, other: &Term) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.leftmost().cmp(&other.leftmost()))
            .then_with(|| match (self, other) {
                (Term::Var(a), Term::Var(b)) => a.cmp(b),
                (Term::Mul(l1, r1), Term::Mul(l2, r2)) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
                // unreachable after the degree comparison
                (Term::Var(_), Term::Mul(..)) => Ordering::Less,
                (Term::Mul(..), Term::Var(_)) => Ordering::Greater,
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Name of variable `i` in rendered output: `a`..`z`, then `t27`, `t28`, ...
pub fn var_name(i: u32) -> String {
    if (1..=26).contains(&i) {
        char::from(b'a' + (i - 1) as u8).to_string()
    } else {
        format!("t{i}")
    }
}

impl fmt::Display for Term {
    /// DSL syntax with every nested product parenthesized, e.g. `(a*b)*c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Var(i) => f.write_str(&var_name(*i)),
                Term::Mul(..) => write!(f, "({t})"),
            }
        }
        match self {
            Term::Var(i) => f.write_str(&var_name(*i)),
            Term::Mul(l, r) => {
                side(l, f)?;
                f.write_str("*")?;
                side(r, f)
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All planar binary trees with leaves labelled `labels` in the given order.
pub fn bracketings(labels: &[u32]) -> Vec<Term> {
    if labels.len() == 1 {
        return vec![Term::Var(labels[0])];
    }
    let mut out = Vec::new();
    for split in 1..labels.len() {
        let lefts = bracketings(&labels[..split]);
        let rights = bracketings(&labels[split..]);
        for l in &lefts {
            for r in &rights {
                out.push(Term::mul(l.clone(), r.clone()));
            }
        }
    }
    out
}
