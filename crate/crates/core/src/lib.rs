//! Exact verification, search and decomposition of multilinear polynomial
//! identities of algebras built from Rota–Baxter operators.
//!
//! The polynomial, free-term and matrix layers are generic over a
//! [`Scalar`] field; everything else works over exact rationals [`Rat`].

mod scalar;

pub mod freeterm;
pub mod idspace;
pub mod models;
pub mod qexact;
pub mod repro;
pub mod verify;

pub use scalar::Scalar;

/// Exact rational numbers.
pub type Rat = num_rational::BigRational;
/// Univariate polynomials in `x` over the rationals.
pub type QPoly = qexact::Poly<Rat>;
/// Rational linear combinations of free nonassociative monomials.
pub type QFreePoly = freeterm::FreePoly<Rat>;
/// Dense rational matrices.
pub type QMatrix = idspace::Matrix<Rat>;
