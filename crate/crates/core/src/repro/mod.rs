//! Named reproductions of concrete computations, each a fixed list of
//! [`ReportItem`]s comparing an exact computed value with a stated one.

mod kx;
mod linear;
mod report;
mod rules;
mod triangular;

pub use linear::TABLE1_ROWS;
pub use report::{Report, ReportItem, Source, Status};

use num_traits::One;
use thiserror::Error;

use crate::freeterm::{builtin, parse, FreeTermError, Interpretation, MacroTable};
use crate::idspace::IdSpaceError;
use crate::models::{Model, ModelError, ModelValue};
use crate::verify::{check_words, SamplingPlan, Verdict, VerifyError};
use crate::{QFreePoly, QPoly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReproError {
    #[error("unknown report `{0}`")]
    UnknownReport(String),
    #[error(transparent)]
    FreeTerm(#[from] FreeTermError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    IdSpace(#[from] IdSpaceError),
}

/// Available reports with one-line descriptions, in run order.
pub const REPORTS: &[(&str, &str)] = &[
    ("rbalgebra", "Baxter laws, basic identities of a R(b) on partial sums, Jordan skew-symmetries"),
    ("table1", "fourth components of the degree-4 Lie polynomial on the twelve sample sequences"),
    ("deg4lie", "rank, kernel and tortkara decompositions of the degree-4 Lie system"),
    ("deg4rcom", "degree-4 right-commutative identities through f4 instances"),
    ("deg5jordan", "degree-5 Jordan identities through f5 instances"),
    ("counterexamples", "f5+ and f4' on a int_2 b"),
    ("starfamily", "closed forms and identities of the integral products on Q[x]"),
    ("epsalgebra", "the triangular algebra e_i o e_j = eps_ij e_i"),
    ("novikov", "d(a) int(b) and ab - d(a) int(b)"),
    ("zinbielsearch", "identity spaces of int(a) int(b) and identities of a int_2 b"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproOptions {
    pub seed: u64,
    /// Also run the degree-5 search of the double product (minutes).
    pub zinbiel_degree5: bool,
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions { seed: 42, zinbiel_degree5: false }
    }
}

pub fn run_report(name: &str, opts: &ReproOptions) -> Result<Report, ReproError> {
    let items = match name {
        "rbalgebra" => rules::rb_algebra(opts)?,
        "table1" => linear::table1()?,
        "deg4lie" => linear::deg4_lie(opts)?,
        "deg4rcom" => linear::deg4_rcom(opts)?,
        "deg5jordan" => linear::deg5_jordan(opts)?,
        "counterexamples" => kx::counterexamples(opts)?,
        "starfamily" => kx::star_family()?,
        "epsalgebra" => triangular::eps_algebra(opts)?,
        "novikov" => kx::novikov(opts)?,
        "zinbielsearch" => linear::zinbiel_search(opts)?,
        other => return Err(ReproError::UnknownReport(other.to_string())),
    };
    Ok(Report { name: name.to_string(), items })
}

pub(crate) fn named(name: &str, interp: Interpretation) -> QFreePoly {
    builtin(name, interp).expect("builtin identity")
}

/// Expand DSL text against the builtin table.
pub(crate) fn dsl(text: &str, interp: Interpretation) -> QFreePoly {
    let table = MacroTable::builtins();
    parse(text, &table).expect("fixed DSL text parses").expand(interp).expect("fixed DSL text expands")
}

pub(crate) fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub(crate) fn xp(e: u32) -> ModelValue {
    ModelValue::Poly(QPoly::x_pow(e))
}

pub(crate) fn poly(c: Rat, e: u32) -> QPoly {
    QPoly::monomial(c, e)
}

pub(crate) fn one() -> Rat {
    Rat::one()
}

pub(crate) fn verdict_word(v: &Verdict) -> &'static str {
    if v.holds_flag() {
        "holds"
    } else {
        "fails"
    }
}

/// Check `p` on `plan` and compare the verdict with `expect_holds`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn check_item(
    name: &str,
    claim: &str,
    p: &QFreePoly,
    interp: Interpretation,
    m: &Model,
    plan: &SamplingPlan,
    expect_holds: bool,
    source: Source,
) -> Result<ReportItem, ReproError> {
    let v = check_words(p, interp, m, plan)?;
    let expected = if expect_holds { "holds" } else { "fails" };
    Ok(ReportItem::compare(name, claim, verdict_word(&v), expected, source).with_detail(format!("{m}: {v}")))
}

/// Run `checks` and summarize them as one item: `holds` when every check holds.
pub(crate) fn all_hold(
    name: &str,
    claim: &str,
    checks: Vec<(String, Verdict)>,
    source: Source,
) -> ReportItem {
    match checks.iter().find(|(_, v)| !v.holds_flag()) {
        None => ReportItem::compare(name, claim, "holds", "holds", source)
            .with_detail(format!("{} checks: {}", checks.len(), checks.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>().join(", "))),
        Some((label, v)) => ReportItem::compare(name, claim, "fails", "holds", source).with_detail(format!("{label}: {v}")),
    }
}

/// Format a vector of rationals as `(a, b, ...)`.
pub(crate) fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(crate::qexact::format_rat).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn fmt_combination(coeffs: &[Rat], names: &[String]) -> String {
    crate::qexact::format_combination(coeffs, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_report_is_rejected() {
        assert_eq!(run_report("nope", &ReproOptions::default()), Err(ReproError::UnknownReport("nope".into())));
    }

    #[test]
    fn combination_format() {
        let names: Vec<String> = ["g1", "g2", "g3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(fmt_combination(&[q(1, 1), q(0, 1), q(-2, 1)], &names), "g1 - 2*g3");
        assert_eq!(fmt_combination(&[q(-1, 1), q(1, 2), q(0, 1)], &names), "-g1 + 1/2*g2");
        assert_eq!(fmt_combination(&vec![q(0, 1); 3], &names), "0");
    }

    #[test]
    fn item_status_follows_serialization() {
        assert!(ReportItem::compare("n", "c", "x^2", "x^2", Source::Trivial).is_match());
        assert_eq!(ReportItem::compare("n", "c", "x^2", "2*x", Source::Trivial).status, Status::Mismatch);
    }
}
