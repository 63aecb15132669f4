use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::qexact::format_rat;
use crate::{QPoly, Rat};

/// An element of a concrete model.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ModelValue {
    Seq(Vec<Rat>),
    Poly(QPoly),
    /// Coordinates over `e_1, ..., e_m`.
    Basis(Vec<Rat>),
}

impl ModelValue {
    pub fn seq_from_ints(xs: &[i64]) -> Self {
        ModelValue::Seq(xs.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    /// The basis vector `e_i` (1-based) of an `m`-dimensional model.
    pub fn basis_vector(i: usize, m: usize) -> Self {
        let mut v = vec![Rat::zero(); m];
        v[i - 1] = Rat::from_integer(1.into());
        ModelValue::Basis(v)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ModelValue::Seq(v) | ModelValue::Basis(v) => v.iter().all(Zero::is_zero),
            ModelValue::Poly(p) => p.is_zero(),
        }
    }

    pub fn zero_like(&self) -> Self {
        match self {
            ModelValue::Seq(v) => ModelValue::Seq(vec![Rat::zero(); v.len()]),
            ModelValue::Basis(v) => ModelValue::Basis(vec![Rat::zero(); v.len()]),
            ModelValue::Poly(_) => ModelValue::Poly(QPoly::zero()),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        match self {
            ModelValue::Seq(v) => ModelValue::Seq(v.iter().map(|x| x * c).collect()),
            ModelValue::Basis(v) => ModelValue::Basis(v.iter().map(|x| x * c).collect()),
            ModelValue::Poly(p) => ModelValue::Poly(p.scale(c)),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelValue::Seq(_) => "seq",
            ModelValue::Poly(_) => "poly",
            ModelValue::Basis(_) => "basis",
        }
    }

    /// Scalar coordinates used as matrix rows: sequence or basis entries, or
    /// polynomial coefficients indexed by degree.
    pub fn coordinates(&self) -> Vec<(u32, Rat)> {
        match self {
            ModelValue::Seq(v) | ModelValue::Basis(v) => {
                v.iter().enumerate().map(|(i, x)| (i as u32 + 1, x.clone())).collect()
            }
            ModelValue::Poly(p) => p.terms().map(|(d, c)| (d, c.clone())).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        match (self, other) {
            (ModelValue::Seq(a), ModelValue::Seq(b)) => {
                assert_eq!(a.len(), b.len(), "sequence lengths differ");
                ModelValue::Seq(a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            }
            (ModelValue::Basis(a), ModelValue::Basis(b)) => {
                assert_eq!(a.len(), b.len(), "basis dimensions differ");
                ModelValue::Basis(a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            }
            _ => panic!("carrier mismatch: {} vs {}", self.kind(), other.kind()),
        }
    }
}

impl Add for &ModelValue {
    type Output = ModelValue;
    fn add(self, rhs: Self) -> ModelValue {
        match (self, rhs) {
            (ModelValue::Poly(a), ModelValue::Poly(b)) => ModelValue::Poly(a + b),
            _ => self.zip(rhs, |x, y| x + y),
        }
    }
}

impl Sub for &ModelValue {
    type Output = ModelValue;
    fn sub(self, rhs: Self) -> ModelValue {
        match (self, rhs) {
            (ModelValue::Poly(a), ModelValue::Poly(b)) => ModelValue::Poly(a - b),
            _ => self.zip(rhs, |x, y| x - y),
        }
    }
}

impl fmt::Display for ModelValue {
    /// `(0, 1, 1, 2)` for sequences, `1 + x^2` for polynomials,
    /// `2*e1 - e3` for basis vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelValue::Seq(v) => {
                let parts: Vec<String> = v.iter().map(format_rat).collect();
                write!(f, "({})", parts.join(", "))
            }
            ModelValue::Poly(p) => write!(f, "{p}"),
            ModelValue::Basis(v) => {
                let mut first = true;
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c < &Rat::zero();
                    let mag = if neg { -c } else { c.clone() };
                    let sep = match (first, neg) {
                        (true, true) => "-",
                        (true, false) => "",
                        (false, true) => " - ",
                        (false, false) => " + ",
                    };
                    let coef = if mag == Rat::from_integer(1.into()) { String::new() } else { format!("{}*", format_rat(&mag)) };
                    write!(f, "{sep}{coef}e{}", i + 1)?;
                    first = false;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for ModelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
