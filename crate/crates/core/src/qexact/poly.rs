use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::{Rat, Scalar};

use super::rat::{format_rat, parse_rat};
use super::ParseError;

/// Sparse univariate polynomial: degree -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: BTreeMap<u32, T>,
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c * x^degree`.
    pub fn monomial(c: T, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Poly { coeffs }
    }

    /// `x^degree`.
    pub fn x_pow(degree: u32) -> Self {
        Self::monomial(T::one(), degree)
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, T)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in pairs {
            p.add_term(d, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: u32) -> T {
        self.coeffs.get(&degree).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The constant term `a(0)`.
    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    fn add_term(&mut self, degree: u32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&degree) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.coeffs.remove(&degree);
                }
            }
            None => {
                self.coeffs.insert(degree, c);
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|(d, v)| (*d, v.clone() * c.clone())).collect() }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.coeffs {
            if *d > 0 {
                out.add_term(d - 1, c.clone() * T::of_u64(u64::from(*d)));
            }
        }
        out
    }

    /// `k`-fold antiderivative with every constant of integration set to 0.
    pub fn integrate(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (d, c) in &self.coeffs {
            // x^d -> x^(d+k) / ((d+1)(d+2)...(d+k))
            let mut denom = T::one();
            for t in 1..=k {
                denom = denom * T::of_u64(u64::from(d + t));
            }
            out.add_term(d + k, c.clone() / denom);
        }
        out
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(|(d, c)| (*d, f(c))))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

impl fmt::Display for Poly<Rat> {
    /// `c0 + c1*x + c2*x^2 + ...`, ascending degree, negative terms written with ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.coeffs.iter().enumerate() {
            let negative = c < &Rat::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let xpart = match d {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            };
            if *d == 0 {
                write!(f, "{}", format_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{xpart}")?;
            } else {
                write!(f, "{}*{xpart}", format_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly<Rat> {
    type Err = ParseError;

    /// Accepts the `Display` form, plus `+ -c*x^k` and whitespace variations.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseError::new("empty polynomial"));
        }
        let mut out = Poly::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 0;
        let mut pieces = Vec::new();
        while i <= bytes.len() {
            let boundary = i == bytes.len()
                || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'+' && bytes[i - 1] != b'-');
            if boundary {
                pieces.push(&s[start..i]);
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let (sign, body) = strip_signs(piece);
            if body.is_empty() {
                return Err(ParseError::new(format!("dangling sign in `{s}`")));
            }
            let (coef, degree) = parse_term(body)?;
            out.add_term(degree, if sign { -coef } else { coef });
        }
        Ok(out)
    }
}

// Returns (negative, rest) after consuming a run of leading `+`/`-`.
fn strip_signs(piece: &str) -> (bool, &str) {
    let mut negative = false;
    let mut rest = piece;
    while let Some(c) = rest.chars().next() {
        match c {
            '+' => rest = &rest[1..],
            '-' => {
                negative = !negative;
                rest = &rest[1..];
            }
            _ => break,
        }
    }
    (negative, rest)
}

fn parse_term(body: &str) -> Result<(Rat, u32), ParseError> {
    let (coef_str, xpart) = match body.find('x') {
        Some(pos) => {
            let coef = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            (coef, Some(&body[pos..]))
        }
        None => (body, None),
    };
    let coef = if coef_str.is_empty() { Rat::one() } else { parse_rat(coef_str)? };
    let degree = match xpart {
        None => 0,
        Some("x") => 1,
        Some(x) => {
            let exp = x
                .strip_prefix("x^")
                .ok_or_else(|| ParseError::new(format!("malformed power `{x}`")))?;
            exp.parse::<u32>().map_err(|_| ParseError::new(format!("malformed exponent `{exp}`")))?
        }
    };
    Ok((coef, degree))
}
