use crate::freeterm::Interpretation;
use crate::models::{poly_model, rbo_law_check, rescale_rbo, seq_model, Model, ModelValue, PolyMulSpec};
use crate::verify::SamplingPlan;
use crate::Rat;

use super::{check_item, dsl, named, q, verdict_word, ReportItem, ReproError, ReproOptions, Source};

const LEN: usize = 6;
const SAMPLES: usize = 200;

fn pairs(m: &Model, plan: &SamplingPlan) -> Vec<(ModelValue, ModelValue)> {
    plan.assignments(m.carrier(), 2)
        .expect("plan fits the carrier")
        .into_iter()
        .map(|v| (v[0].clone(), v[1].clone()))
        .collect()
}

/// `a R(bc) - R(ab) c`.
fn r_associator(m: &Model, a: &ModelValue, b: &ModelValue, c: &ModelValue) -> ModelValue {
    let mul = |x: &ModelValue, y: &ModelValue| m.carrier_product(x, y).expect("carrier product");
    let r = |x: &ModelValue| m.rbo(x).expect("operator");
    &mul(a, &r(&mul(b, c))) - &mul(&r(&mul(a, b)), c)
}

pub fn rb_algebra(opts: &ReproOptions) -> Result<Vec<ReportItem>, ReproError> {
    let seq = seq_model(LEN);
    let plan = SamplingPlan::random(SAMPLES, opts.seed);
    let mut items = Vec::new();

    let mut law = |name: &str, m: &Model, plan: &SamplingPlan, expect: bool| -> Result<(), ReproError> {
        let v = rbo_law_check(m, &pairs(m, plan))?;
        let w = m.weight().map_or_else(|| "none".to_string(), crate::qexact::format_rat);
        items.push(
            ReportItem::compare(name, format!("Baxter law at weight {w}"), verdict_word(&v), if expect { "holds" } else { "fails" }, Source::Published)
                .with_detail(format!("{m}: {v}")),
        );
        Ok(())
    };
    law("partial sums", &seq, &plan, true)?;
    law("integration", &poly_model(PolyMulSpec::Circ)?, &SamplingPlan::grid(6), true)?;
    for eps in [q(1, 1), q(-1, 1), q(4, 1), q(1, 9)] {
        let m = rescale_rbo(&seq, &eps)?;
        law(&format!("rescaled partial sums, eps = {}", crate::qexact::format_rat(&eps)), &m, &plan, true)?;
    }
    let wrong = seq.with_declared_weight(Rat::from_integer(0.into()));
    let v = rbo_law_check(&wrong, &pairs(&wrong, &plan))?;
    items.push(
        ReportItem::compare("partial sums at weight 0", "Baxter law at the wrong weight", verdict_word(&v), "fails", Source::Trivial)
            .with_detail(v.to_string()),
    );

    for (ident, interp, claim) in [
        ("rcom", Interpretation::Plain, "right-commutative"),
        ("f4", Interpretation::Plain, "f4 holds"),
        ("f4p", Interpretation::Plain, "f4' holds"),
        ("tortkara", Interpretation::LieWords, "Tortkara under the commutator"),
        ("f5plus", Interpretation::JordanWords, "f5+ holds under the anticommutator"),
    ] {
        items.push(check_item(&format!("AR {ident}"), claim, &named(ident, interp), interp, &seq, &plan, true, Source::Published)?);
    }

    let jordan = Interpretation::JordanWords;
    for (name, text, holds) in [
        ("fskew swap of first pair", "fskew(a,b,c,u,v) + fskew(b,a,c,u,v)", true),
        ("fskew swap of last pair", "fskew(a,b,c,u,v) + fskew(a,b,c,v,u)", true),
        ("fskew nonzero", "fskew(a,b,c,u,v)", false),
    ] {
        let p = dsl(text, jordan);
        let claim = if holds { format!("{text} = 0") } else { format!("{text} is not an identity") };
        let source = if holds { Source::Published } else { Source::Derived };
        items.push(check_item(name, &claim, &p, jordan, &seq, &plan, holds, source)?);
    }

    let jassoc = dsl("jassoc(a,b,c)", jordan);
    let mut models = vec![(seq.clone(), q(-1, 1))];
    for eps in [q(4, 1), q(-1, 3)] {
        models.push((rescale_rbo(&seq, &eps)?, -eps));
    }
    for (m, lambda) in models {
        let mut computed = "holds".to_string();
        for a in plan.assignments(m.carrier(), 3).expect("plan fits the carrier") {
            let lhs = m.eval_words(&jassoc, jordan, &a)?;
            let rhs = r_associator(&m, &a[0], &a[1], &a[2]).scale(&-lambda.clone());
            if lhs != rhs {
                computed = format!("fails at {}, {}, {}", a[0], a[1], a[2]);
                break;
            }
        }
        let w = crate::qexact::format_rat(&lambda);
        items.push(ReportItem::compare(
            format!("Jordan associator at weight {w}"),
            "<a,b,c> = -lambda (a R(bc) - R(ab) c)",
            computed,
            "holds",
            Source::Published,
        ));
    }
    Ok(items)
}
