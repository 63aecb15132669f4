use std::fmt;

use num_traits::{One, Zero};

use crate::qexact::{binomial, format_rat};
use crate::{QPoly, Rat};

use super::ModelError;

/// Bilinear products on `Q[x]` built from derivation and integration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolyMulSpec {
    /// `a * int(b)`.
    Circ,
    /// `sum_i C(n,i) int_i(a) int_{n-i+k}(b)`.
    Star { k: u32, n: u32 },
    /// `sum_i C(n,i) (1 - 2i/n) int_i(a) int_{n-i}(b)`, `n >= 1`.
    Bracket { n: u32 },
    /// `a int_2(b) + eps int(a) int(b)`.
    Meps(Rat),
    /// `int(a) int(b)`.
    Double,
    /// `int(a) int(b) + eps a int_2(b)`.
    Deformed(Rat),
    /// `d(a) int(b)`.
    Diamond,
    /// `a b - d(a) int(b)`.
    NovSub,
    /// `a b`.
    Plain,
}

/// Shape of the monomial closed form `x^I * x^J -> c(I,J) x^(I+J+shift)`,
/// where `c = P(I,J) / (prod (I + l) * prod (J + r))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub shift: u32,
    /// Degree bound of the numerator in `I` and in `J`.
    pub num_deg: (u32, u32),
    /// Offsets `l` of the denominator factors `I + l`.
    pub den_left: Vec<u32>,
    /// Offsets `r` of the denominator factors `J + r`.
    pub den_right: Vec<u32>,
}

fn rat(n: u64) -> Rat {
    Rat::from_integer(n.into())
}

/// `1 / ((e+1)(e+2)...(e+k))`, the coefficient of `int_k(x^e)`.
fn inv_rising(e: u32, k: u32) -> Rat {
    let mut d = Rat::one();
    for t in 1..=k {
        d *= rat(u64::from(e + t));
    }
    d.recip()
}

impl PolyMulSpec {
    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            PolyMulSpec::Bracket { n: 0 } => Err(ModelError::InvalidParameter("bracket requires n >= 1".into())),
            _ => Ok(()),
        }
    }

    pub fn closed_form(&self) -> ClosedForm {
        let cf = |shift, num_deg, den_left: Vec<u32>, den_right: Vec<u32>| ClosedForm { shift, num_deg, den_left, den_right };
        match self {
            PolyMulSpec::Circ => cf(1, (0, 0), vec![], vec![1]),
            PolyMulSpec::Star { k, n } => cf(n + k, (*n, *n), (1..=*n).collect(), (1..=n + k).collect()),
            PolyMulSpec::Bracket { n } => cf(*n, (*n, *n), (1..=*n).collect(), (1..=*n).collect()),
            PolyMulSpec::Meps(_) | PolyMulSpec::Deformed(_) => cf(2, (1, 1), vec![1], vec![1, 2]),
            PolyMulSpec::Double => cf(2, (0, 0), vec![1], vec![1]),
            PolyMulSpec::Diamond => cf(0, (1, 0), vec![], vec![1]),
            PolyMulSpec::NovSub => cf(0, (1, 1), vec![], vec![1]),
            PolyMulSpec::Plain => cf(0, (0, 0), vec![], vec![]),
        }
    }

    /// `c(I,J)` of the closed form.
    pub fn coefficient(&self, i: u32, j: u32) -> Rat {
        match self {
            PolyMulSpec::Circ => inv_rising(j, 1),
            PolyMulSpec::Star { k, n } => (0..=*n)
                .map(|t| binomial(u64::from(*n), u64::from(t)) * inv_rising(i, t) * inv_rising(j, n - t + k))
                .sum(),
            PolyMulSpec::Bracket { n } => (0..=*n)
                .map(|t| {
                    let w = Rat::one() - Rat::new((2 * t).into(), (*n).into());
                    binomial(u64::from(*n), u64::from(t)) * w * inv_rising(i, t) * inv_rising(j, n - t)
                })
                .sum(),
            PolyMulSpec::Meps(eps) => inv_rising(j, 2) + eps * inv_rising(i, 1) * inv_rising(j, 1),
            PolyMulSpec::Double => inv_rising(i, 1) * inv_rising(j, 1),
            PolyMulSpec::Deformed(eps) => inv_rising(i, 1) * inv_rising(j, 1) + eps * inv_rising(j, 2),
            PolyMulSpec::Diamond => rat(u64::from(i)) * inv_rising(j, 1),
            PolyMulSpec::NovSub => Rat::one() - rat(u64::from(i)) * inv_rising(j, 1),
            PolyMulSpec::Plain => Rat::one(),
        }
    }

    /// Product of two polynomials via the monomial closed form.
    pub fn product(&self, a: &QPoly, b: &QPoly) -> QPoly {
        let shift = self.closed_form().shift;
        let mut out = QPoly::zero();
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let c = self.coefficient(i, j);
                if !c.is_zero() {
                    out = &out + &QPoly::monomial(c * ca * cb, i + j + shift);
                }
            }
        }
        out
    }

    /// Product computed from the defining formula with explicit calculus
    /// operations: slower, used to validate the closed forms.
    pub fn product_direct(&self, a: &QPoly, b: &QPoly) -> QPoly {
        match self {
            PolyMulSpec::Circ => a * &b.integrate(1),
            PolyMulSpec::Star { k, n } => (0..=*n).fold(QPoly::zero(), |acc, t| {
                let term = &a.integrate(t) * &b.integrate(n - t + k);
                &acc + &term.scale(&binomial(u64::from(*n), u64::from(t)))
            }),
            PolyMulSpec::Bracket { n } => (0..=*n).fold(QPoly::zero(), |acc, t| {
                let w = Rat::one() - Rat::new((2 * t).into(), (*n).into());
                let term = &a.integrate(t) * &b.integrate(n - t);
                &acc + &term.scale(&(binomial(u64::from(*n), u64::from(t)) * w))
            }),
            PolyMulSpec::Meps(eps) => &(a * &b.integrate(2)) + &(&a.integrate(1) * &b.integrate(1)).scale(eps),
            PolyMulSpec::Double => &a.integrate(1) * &b.integrate(1),
            PolyMulSpec::Deformed(eps) => &(&a.integrate(1) * &b.integrate(1)) + &(a * &b.integrate(2)).scale(eps),
            PolyMulSpec::Diamond => &a.derivative() * &b.integrate(1),
            PolyMulSpec::NovSub => &(a * b) - &(&a.derivative() * &b.integrate(1)),
            PolyMulSpec::Plain => a * b,
        }
    }

    /// Whether the product is `a * R(b)` or built from `R(a) R(b)` for `R = int`.
    pub fn integration_operator(&self) -> bool {
        matches!(self, PolyMulSpec::Circ | PolyMulSpec::Double | PolyMulSpec::Deformed(_))
    }

    pub fn selector(&self) -> &'static str {
        match self {
            PolyMulSpec::Circ => "circ",
            PolyMulSpec::Star { .. } => "star",
            PolyMulSpec::Bracket { .. } => "bracket",
            PolyMulSpec::Meps(_) => "meps",
            PolyMulSpec::Double => "double",
            PolyMulSpec::Deformed(_) => "deformed",
            PolyMulSpec::Diamond => "diamond",
            PolyMulSpec::NovSub => "novsub",
            PolyMulSpec::Plain => "plain",
        }
    }
}

impl fmt::Display for PolyMulSpec {
    /// The model spec string, e.g. `poly:mul=star,k=2,n=0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly:mul={}", self.selector())?;
        match self {
            PolyMulSpec::Star { k, n } => write!(f, ",k={k},n={n}"),
            PolyMulSpec::Bracket { n } => write!(f, ",n={n}"),
            PolyMulSpec::Meps(e) | PolyMulSpec::Deformed(e) => write!(f, ",eps={}", format_rat(e)),
            _ => Ok(()),
        }
    }
}
