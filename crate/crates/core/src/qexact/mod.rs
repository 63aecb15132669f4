//! Exact rationals and sparse univariate polynomials over them.
//!
//! The integration operator fixes every constant of integration at zero, so
//! `integrate(a, k)` is the `k`-fold integral from 0 to x.

mod poly;
mod rat;

pub use poly::Poly;
pub use rat::{format_combination, format_rat, parse_rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u64, k: u64) -> crate::Rat {
    use num_traits::One;
    if k > n {
        return crate::Rat::from_integer(0.into());
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    crate::Rat::from_integer(acc)
}

/// `n!` as an exact rational.
pub fn factorial(n: u64) -> crate::Rat {
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 2..=n {
        acc *= i;
    }
    crate::Rat::from_integer(acc)
}
