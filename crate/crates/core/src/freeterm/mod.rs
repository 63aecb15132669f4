//! Free nonassociative terms, multilinear polynomials over them, the identity
//! DSL and sort-based normal forms.

mod expr;
mod macros;
mod parser;
mod poly;
mod rewrite;
mod term;

pub use expr::{Expr, Interpretation};
pub use macros::{MacroDef, MacroTable, JOR5_MULTIPLIERS};
pub use parser::{parse, parse_definitions, DslError, DslErrorKind, Parsed};
pub use poly::FreePoly;
pub use rewrite::{normal_form, normal_form_term, reduce_randomized, RewriteSystem, Signed};
pub use term::{bracketings, var_name, Term};

use thiserror::Error;

use crate::QFreePoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeTermError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unbound macro `{0}`")]
    UnboundMacro(String),
    #[error("macro `{name}` takes {expected} arguments, got {found}")]
    MacroArity { name: String, expected: usize, found: usize },
    #[error("bracket {bracket} is not available in {interp} words")]
    BracketNotAvailable { bracket: &'static str, interp: Interpretation },
    #[error("{rules} does not apply to degree {degree}")]
    RuleSetDegree { rules: RewriteSystem, degree: usize },
}

/// Expand a builtin identity by name.
pub fn builtin(name: &str, interp: Interpretation) -> Result<QFreePoly, FreeTermError> {
    let table = MacroTable::builtins();
    let e = table.instance(name).ok_or_else(|| FreeTermError::UnboundMacro(name.to_string()))?;
    Ok(e.expand(&table, interp)?.with_arity(table.get(name).map_or(0, |d| d.arity() as u32)))
}

/// Convert a polynomial in Lie or Jordan words into ordinary products.
pub fn lift(words: &QFreePoly, interp: Interpretation) -> QFreePoly {
    fn go(t: &Term, interp: Interpretation, arity: u32) -> QFreePoly {
        match t {
            Term::Var(i) => QFreePoly::var(*i, arity),
            Term::Mul(l, r) => {
                let (a, b) = (go(l, interp, arity), go(r, interp, arity));
                match interp {
                    Interpretation::Plain => a.mul(&b),
                    Interpretation::LieWords => a.mul(&b) - b.mul(&a),
                    Interpretation::JordanWords => a.mul(&b) + b.mul(&a),
                }
            }
        }
    }
    let arity = words.arity();
    let mut out = QFreePoly::zero(arity);
    for (t, c) in words.terms() {
        out = &out + &go(t, interp, arity).scale(c);
    }
    out
}

/// The instance `f(a_sigma1, ..., a_sigmak)` of a polynomial.
pub fn instance(f: &QFreePoly, sigma: &[u32]) -> Result<QFreePoly, FreeTermError> {
    f.permute(sigma)
}
