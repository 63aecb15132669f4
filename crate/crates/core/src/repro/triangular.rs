use num_traits::Zero;

use crate::freeterm::Interpretation;
use crate::models::{eps_model, EpsSpec, ModelValue};
use crate::verify::SamplingPlan;
use crate::Rat;

use super::{all_hold, fmt_vec, named, q, ReportItem, ReproError, ReproOptions, Source};

const DIM: usize = 6;

/// Random parameter vectors followed by degenerate ones: all zero, all one,
/// a single nonzero entry, and repeated entries.
fn eps_vectors(seed: u64) -> Vec<EpsSpec> {
    let mut out: Vec<EpsSpec> = (0..20).map(|t| EpsSpec::random(DIM, seed.wrapping_add(t))).collect();
    let k = DIM - 1;
    out.push(EpsSpec::new(vec![Rat::zero(); k]));
    out.push(EpsSpec::new(vec![q(1, 1); k]));
    let mut single = vec![Rat::zero(); k];
    single[2] = q(-3, 2);
    out.push(EpsSpec::new(single));
    out.push(EpsSpec::new(vec![q(2, 1), q(2, 1), q(-1, 3), q(-1, 3), q(2, 1)]));
    out
}

/// The six-term coefficient of `e_i` in `f4(e_i, e_j, e_s, e_k)`; `corrected`
/// flips the sign of both terms coming from `(e_i, e_s, e_j e_k)`.
fn g_coefficient(e: &EpsSpec, i: usize, j: usize, s: usize, k: usize, corrected: bool) -> Rat {
    let p = |a: usize, b: usize, c: usize, d: usize, x: usize, y: usize| e.eps_ij(a, b) * e.eps_ij(c, d) * e.eps_ij(x, y);
    let third = p(i, s, i, j, j, k) - p(i, s, s, j, j, k);
    let rest = p(i, j, j, s, j, k) + p(i, j, i, s, s, k) - p(i, s, s, j, s, k) - p(i, j, j, s, s, k);
    if corrected {
        rest - third
    } else {
        rest + third
    }
}

fn basis(i: usize) -> ModelValue {
    ModelValue::basis_vector(i, DIM)
}

fn scaled(c: Rat, i: usize) -> ModelValue {
    basis(i).scale(&c)
}

pub fn eps_algebra(opts: &ReproOptions) -> Result<Vec<ReportItem>, ReproError> {
    let specs = eps_vectors(opts.seed);
    let mut items = Vec::new();
    for (label, ident) in [("right-commutative", "rcom"), ("f4", "f4")] {
        let p = named(ident, Interpretation::Plain);
        let checks = specs
            .iter()
            .map(|s| Ok((fmt_vec(&s.eps), crate::verify::check_identity(&p, &eps_model(s.clone())?, &SamplingPlan::BasisTuples)?)))
            .collect::<Result<Vec<_>, ReproError>>()?;
        items.push(all_hold(
            &format!("triangular {label}"),
            &format!("{ident} holds on all basis tuples, m = {DIM}"),
            checks,
            Source::Published,
        ));
    }

    let f4 = named("f4", Interpretation::Plain);
    let range = 1..=DIM;
    for (corrected, name, source) in [(false, "six-term coefficient as printed", Source::Published), (true, "six-term coefficient corrected", Source::Derived)] {
        let mut first_bad = None;
        'search: for s in &specs {
            let m = eps_model(s.clone())?;
            for i in range.clone() {
                for j in range.clone() {
                    for t in range.clone() {
                        for k in range.clone() {
                            let g = g_coefficient(s, i, j, t, k, corrected);
                            let v = m.eval(&f4, &[basis(i), basis(j), basis(t), basis(k)])?;
                            if !g.is_zero() || v != scaled(g.clone(), i) {
                                first_bad = Some(format!(
                                    "at (i, j, s, k) = ({i}, {j}, {t}, {k}), eps = {}: G = {}, f4 = {v}",
                                    fmt_vec(&s.eps),
                                    crate::qexact::format_rat(&g)
                                ));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        let claim = if corrected {
            "f4(e_i, e_j, e_s, e_k) = G e_i with the (e_i, e_s, e_j e_k) terms entering with their signs, and G = 0"
        } else {
            "f4(e_i, e_j, e_s, e_k) = G e_i with G as printed, and G = 0"
        };
        let expected = "G is the f4 coefficient and vanishes";
        items.push(ReportItem::compare(name, claim, first_bad.as_deref().map_or(expected, |_| "differs"), expected, source).with_detail(
            first_bad.unwrap_or_else(|| format!("all index tuples, {} parameter vectors", specs.len())),
        ));
    }

    let mut lie_ok = true;
    let mut jordan_off_ok = true;
    let mut diagonal = Vec::new();
    let mut diagonal_ok = true;
    for s in &specs {
        let m = eps_model(s.clone())?;
        for i in range.clone() {
            for j in range.clone() {
                let (a, b) = (basis(i), basis(j));
                let lie = m.word_product(Interpretation::LieWords, &a, &b);
                let jor = m.word_product(Interpretation::JordanWords, &a, &b);
                if i == j {
                    let stated = if i < DIM { scaled(q(2, 1) * &s.eps[i - 1], i) } else { m.zero() };
                    diagonal_ok &= jor == stated;
                    lie_ok &= lie.is_zero();
                    if diagonal.is_empty() && !s.eps.iter().all(Zero::is_zero) {
                        diagonal.push(format!("{{e_{i}, e_{i}}} = {jor} for eps = {}", fmt_vec(&s.eps)));
                    }
                    continue;
                }
                let (lo, hi) = (i.min(j), i.max(j));
                let e = s.eps[lo - 1].clone();
                let lie_stated = if i > j { scaled(e.clone(), i) } else { scaled(-e.clone(), j) };
                lie_ok &= lie == lie_stated;
                jordan_off_ok &= jor == scaled(e, hi);
            }
        }
    }
    items.push(ReportItem::compare(
        "triangular commutator",
        "[e_i, e_j] = eps_j e_i for i > j and -eps_i e_j for i < j",
        if lie_ok { "agrees" } else { "differs" },
        "agrees",
        Source::Published,
    ));
    items.push(ReportItem::compare(
        "triangular anticommutator off the diagonal",
        "{e_i, e_j} = eps_min(i,j) e_max(i,j) for i != j",
        if jordan_off_ok { "agrees" } else { "differs" },
        "agrees",
        Source::Published,
    ));
    items.push(
        ReportItem::informational(
            "triangular anticommutator on the diagonal",
            "{e_i, e_i} = 2 eps_i e_i",
            if diagonal_ok { "2 eps_i e_i" } else { "0" },
            "2 eps_i e_i",
            Source::Published,
        )
        .with_detail(format!("eps_ii = 0 by definition, so e_i o e_i = 0; {}", diagonal.join("; "))),
    );

    let s = &specs[0];
    let m = eps_model(s.clone())?;
    let e31 = m.product(&basis(3), &basis(1));
    let e13 = m.product(&basis(1), &basis(3));
    items.push(ReportItem::compare("e3 o e1", "e_3 o e_1 = eps_1 e_3", e31.to_string(), scaled(s.eps[0].clone(), 3).to_string(), Source::Trivial));
    items.push(ReportItem::compare("e1 o e3", "e_1 o e_3 = 0", e13.to_string(), m.zero().to_string(), Source::Trivial));
    Ok(items)
}
