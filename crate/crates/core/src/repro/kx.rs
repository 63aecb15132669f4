use num_traits::Zero;

use crate::freeterm::Interpretation;
use crate::models::{poly_model, ModelValue, PolyMulSpec};
use crate::qexact::{binomial, factorial};
use crate::verify::{check_identity, check_words, evidence_bound, find_counterexample, EvidenceBound, SamplingPlan, Verdict};
use crate::{QFreePoly, QPoly, Rat};

use super::{all_hold, check_item, dsl, named, one, poly, q, verdict_word, xp, ReportItem, ReproError, ReproOptions, Source};

fn r(n: u32) -> Rat {
    Rat::from_integer(n.into())
}

fn star(k: u32, n: u32) -> PolyMulSpec {
    PolyMulSpec::Star { k, n }
}

fn fmt_values(vs: &[ModelValue]) -> String {
    let parts: Vec<String> = vs.iter().map(ModelValue::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Compare `product(x^i, x^j)` with a stated closed form on `0 <= i, j <= max`.
fn closed_form_item(
    name: &str,
    claim: &str,
    product: impl Fn(&QPoly, &QPoly) -> QPoly,
    stated: impl Fn(u32, u32) -> QPoly,
    max: u32,
    source: Source,
) -> ReportItem {
    let expected = format!("agrees on 0 <= i, j <= {max}");
    for i in 0..=max {
        for j in 0..=max {
            let got = product(&QPoly::x_pow(i), &QPoly::x_pow(j));
            let want = stated(i, j);
            if got != want {
                return ReportItem::compare(name, claim, format!("differs at (i, j) = ({i}, {j}): {got} vs {want}"), expected, source);
            }
        }
    }
    ReportItem::compare(name, claim, expected.clone(), expected, source)
}

fn grid_verdicts(p: &QFreePoly, interp: Interpretation, specs: &[(String, PolyMulSpec)], plan: &SamplingPlan) -> Result<Vec<(String, Verdict)>, ReproError> {
    specs
        .iter()
        .map(|(label, s)| Ok((label.clone(), check_words(p, interp, &poly_model(s.clone())?, plan)?)))
        .collect()
}

pub fn counterexamples(opts: &ReproOptions) -> Result<Vec<ReportItem>, ReproError> {
    let z = poly_model(star(2, 0))?;
    let f5p = named("f5plus", Interpretation::Plain);
    let pows: Vec<ModelValue> = (0..5).map(xp).collect();
    let value = z.eval(&f5p, &pows)?;
    let mut items = vec![ReportItem::compare(
        "f5+ witness value",
        "f5+(1, x, x^2, x^3, x^4) for a int_2 b",
        value.to_string(),
        poly(q(-4537, 6107270400), 18).to_string(),
        Source::Published,
    )];
    let found = find_counterexample(&f5p, Interpretation::Plain, &z, 20000, opts.seed)?;
    items.push(
        ReportItem::compare(
            "f5+ witness search",
            "first violation of f5+ on the monomial grid",
            found.as_ref().map_or_else(|| "none".to_string(), |(w, _)| fmt_values(w)),
            fmt_values(&pows),
            Source::Published,
        )
        .with_detail(found.map_or_else(String::new, |(_, v)| format!("value {v}"))),
    );

    let f4p = named("f4p", Interpretation::Plain);
    let at = z.eval(&f4p, &pows[..4])?;
    let bound = match evidence_bound(&f4p, &z) {
        EvidenceBound::Proven(b) => b,
        EvidenceBound::Heuristic => 6,
    };
    let grid = check_identity(&f4p, &z, &SamplingPlan::grid(bound))?;
    let truth = if at.is_zero() && grid.holds_flag() {
        "computed truth: f4' is an identity of a int_2 b; the nonzero witness value is not confirmed"
    } else {
        "computed truth: f4' is not an identity of a int_2 b; the claim that it holds is not confirmed"
    };
    items.push(
        ReportItem::informational(
            "f4' on a int_2 b",
            "f4'(1, x, x^2, x^3) is claimed nonzero, while f4' is also claimed to be an identity of the same product",
            format!("f4'(1, x, x^2, x^3) = {at}; grid check: {}", verdict_word(&grid)),
            format!("f4'(1, x, x^2, x^3) = {}; grid check: holds", poly(q(1, 1064448), 12)),
            Source::Published,
        )
        .with_detail(format!("{truth}; {grid}")),
    );

    let comm = named("comm", Interpretation::Plain);
    let dbl = poly_model(PolyMulSpec::Double)?;
    let none = find_counterexample(&comm, Interpretation::Plain, &dbl, 500, opts.seed)?;
    items.push(ReportItem::compare(
        "double product commutative",
        "counterexample search for ab - ba on int(a) int(b)",
        if none.is_none() { "none" } else { "found" },
        "none",
        Source::Trivial,
    ));
    Ok(items)
}

/// The triple-product closed form of the star family with the binomial
/// `C(i + k_or_n, n)` in the denominator.
fn triple_form(i: u32, j: u32, s: u32, k: u32, n: u32, first_top: u32) -> Option<QPoly> {
    let den_binom = binomial(u64::from(first_top), u64::from(n));
    if den_binom.is_zero() {
        return None;
    }
    let f = factorial(u64::from(k + n));
    let num = binomial(u64::from(i + j + s + 2 * k + 3 * n), u64::from(n));
    let den = &f * &f * den_binom
        * binomial(u64::from(s + k + n), u64::from(k + n))
        * binomial(u64::from(j + k + n), u64::from(k + n));
    Some(poly(num / den, 2 * (k + n) + i + j + s))
}

fn triple_item(name: &str, claim: &str, source: Source, top: impl Fn(u32, u32, u32) -> u32) -> ReportItem {
    let expected = "agrees for k <= 4, n <= 3, 0 <= i, j, s <= 3";
    for k in 0..=4 {
        for n in 0..=3 {
            let spec = star(k, n);
            for i in 0..=3 {
                for j in 0..=3 {
                    for s in 0..=3 {
                        let got = spec.product(&spec.product(&QPoly::x_pow(i), &QPoly::x_pow(j)), &QPoly::x_pow(s));
                        let want = triple_form(i, j, s, k, n, top(i, k, n));
                        if want.as_ref() != Some(&got) {
                            let w = want.map_or_else(|| "division by zero".to_string(), |w| w.to_string());
                            return ReportItem::compare(
                                name,
                                claim,
                                format!("differs at k = {k}, n = {n}, (i, j, s) = ({i}, {j}, {s}): {got} vs {w}"),
                                expected,
                                source,
                            );
                        }
                    }
                }
            }
        }
    }
    ReportItem::compare(name, claim, expected, expected, source)
}

fn rising(e: u32, k: u32) -> Rat {
    (1..=k).map(|t| r(e + t)).product()
}

pub fn star_family() -> Result<Vec<ReportItem>, ReproError> {
    let mut items = Vec::new();
    type Form = fn(u32, u32) -> QPoly;
    let forms: [(u32, u32, Form); 6] = [
        (0, 0, |i, j| QPoly::x_pow(i + j)),
        (0, 1, |i, j| poly(r(i + j + 2) / (r(i + 1) * r(j + 1)), i + j + 1)),
        (0, 2, |i, j| poly(r(i + j + 3) * r(i + j + 4) / (rising(i, 2) * rising(j, 2)), i + j + 2)),
        (1, 0, |i, j| poly(r(j + 1).recip(), i + j + 1)),
        (1, 1, |i, j| poly(r(i + j + 3) / (r(i + 1) * rising(j, 2)), i + j + 2)),
        (1, 2, |i, j| poly(r(i + j + 4) * r(i + j + 5) / (rising(i, 2) * rising(j, 3)), i + j + 3)),
    ];
    for (k, n, f) in forms {
        let spec = star(k, n);
        items.push(closed_form_item(
            &format!("star({k},{n}) closed form"),
            &format!("x^i star({k},{n}) x^j"),
            |a, b| spec.product_direct(a, b),
            f,
            6,
            Source::Published,
        ));
    }
    let m1 = PolyMulSpec::Meps(one());
    let jor = |a: &QPoly, b: &QPoly| &m1.product(a, b) + &m1.product(b, a);
    let jor_form = |i: u32, j: u32| poly(r(i + j + 3) * r(i + j + 4) / (rising(i, 2) * rising(j, 2)), i + j + 2);
    items.push(
        closed_form_item("jor(m1) closed form", "m1(x^i, x^j) + m1(x^j, x^i)", jor, jor_form, 6, Source::Published)
            .with_detail("coincides with star(0,2)"),
    );
    let triple = |i: u32, j: u32, s: u32| poly(r(5 + i + j + s) * r(6 + i + j + s) / (rising(i, 2) * rising(j, 2) * rising(s, 2)), 4 + i + j + s);
    for (name, left) in [("jor(m1) left triple product", true), ("jor(m1) right triple product", false)] {
        let expected = "agrees on 0 <= i, j, s <= 4".to_string();
        let mut computed = expected.clone();
        'outer: for i in 0..=4 {
            for j in 0..=4 {
                for s in 0..=4 {
                    let (a, b, c) = (QPoly::x_pow(i), QPoly::x_pow(j), QPoly::x_pow(s));
                    let got = if left { jor(&jor(&a, &b), &c) } else { jor(&a, &jor(&b, &c)) };
                    if got != triple(i, j, s) {
                        computed = format!("differs at ({i}, {j}, {s})");
                        break 'outer;
                    }
                }
            }
        }
        items.push(ReportItem::compare(name, "closed form of the iterated Jordan product of m1", computed, expected, Source::Published));
    }
    let assoc = dsl("assoc(a,b,c)", Interpretation::Plain);
    let m1_model = poly_model(m1.clone())?;
    let jor_assoc = check_words(&assoc, Interpretation::JordanWords, &m1_model, &SamplingPlan::grid(6))?;
    let plain_assoc = check_identity(&assoc, &m1_model, &SamplingPlan::grid(3))?;
    items.push(
        ReportItem::compare("jor(m1) associative", "the Jordan product of m1 is associative", verdict_word(&jor_assoc), "holds", Source::Published)
            .with_detail(jor_assoc.to_string()),
    );
    items.push(
        ReportItem::informational(
            "m1 associator",
            "(a,b,c)_1 = 0, read literally as the associator of m1 itself",
            verdict_word(&plain_assoc),
            "holds",
            Source::Published,
        )
        .with_detail(format!("the derivation only concerns the Jordan product; m1 itself: {plain_assoc}")),
    );

    let comm = named("comm", Interpretation::Plain);
    let zinbiel = named("zinbiel", Interpretation::Plain);
    let rcom = named("rcom", Interpretation::Plain);
    let f4 = named("f4", Interpretation::Plain);
    let f4p = named("f4p", Interpretation::Plain);
    let f5p = named("f5plus", Interpretation::Plain);
    let tortkara = named("tortkara", Interpretation::LieWords);
    let labelled = |k: u32, ns: std::ops::RangeInclusive<u32>| -> Vec<(String, PolyMulSpec)> {
        ns.map(|n| (format!("star({k},{n})"), star(k, n))).collect()
    };

    let g5 = SamplingPlan::grid(5);
    items.push(all_hold(
        "star(0,n) associative",
        "star(0,n) is associative for n <= 4",
        grid_verdicts(&assoc, Interpretation::Plain, &labelled(0, 0..=4), &g5)?,
        Source::Published,
    ));
    items.push(all_hold(
        "star(0,n) commutative",
        "star(0,n) is commutative for n <= 4",
        grid_verdicts(&comm, Interpretation::Plain, &labelled(0, 0..=4), &g5)?,
        Source::Published,
    ));
    for (label, p, interp, plan) in [
        ("rcom", &rcom, Interpretation::Plain, SamplingPlan::grid(4)),
        ("f4", &f4, Interpretation::Plain, SamplingPlan::grid(3)),
        ("f4'", &f4p, Interpretation::Plain, SamplingPlan::grid(3)),
        ("tortkara", &tortkara, Interpretation::LieWords, SamplingPlan::grid(3)),
        ("f5+", &f5p, Interpretation::Plain, SamplingPlan::grid(2)),
    ] {
        items.push(all_hold(
            &format!("star(0,n) {label}"),
            &format!("star(0,n) satisfies {label} for n <= 2"),
            grid_verdicts(p, interp, &labelled(0, 0..=2), &plan)?,
            Source::Published,
        ));
    }
    items.push(all_hold(
        "star(1,n) left-Zinbiel",
        "star(1,n) is left-Zinbiel for n <= 3",
        grid_verdicts(&zinbiel, Interpretation::Plain, &labelled(1, 0..=3), &g5)?,
        Source::Published,
    ));
    for n in 0..=3 {
        let m = poly_model(star(1, n))?;
        for (label, p) in [("associative", &assoc), ("commutative", &comm)] {
            items.push(check_item(
                &format!("star(1,{n}) not {label}"),
                &format!("star(1,{n}) is not {label}"),
                p,
                Interpretation::Plain,
                &m,
                &SamplingPlan::grid(3),
                false,
                Source::Published,
            )?);
        }
    }
    for n in 0..=2 {
        let m = poly_model(star(2, n))?;
        for (label, p, interp, holds, plan) in [
            ("left-Zinbiel", &zinbiel, Interpretation::Plain, false, SamplingPlan::grid(3)),
            ("f4", &f4, Interpretation::Plain, false, SamplingPlan::grid(3)),
            ("rcom", &rcom, Interpretation::Plain, true, SamplingPlan::grid(4)),
            ("f4'", &f4p, Interpretation::Plain, true, SamplingPlan::grid(3)),
            ("tortkara", &tortkara, Interpretation::LieWords, true, SamplingPlan::grid(3)),
            ("f5+", &f5p, Interpretation::Plain, false, SamplingPlan::grid(3)),
        ] {
            items.push(check_item(
                &format!("star(2,{n}) {label}"),
                &format!("star(2,{n}) {} {label}", if holds { "satisfies" } else { "violates" }),
                p,
                interp,
                &m,
                &plan,
                holds,
                Source::Published,
            )?);
        }
    }
    for k in 0..=4 {
        items.push(
            all_hold(
                &format!("star({k},n) rcom"),
                &format!("star({k},n) is right-commutative for n <= 3"),
                grid_verdicts(&rcom, Interpretation::Plain, &labelled(k, 0..=3), &g5)?,
                Source::Published,
            )
            .with_detail("the summary bullets restrict this to k > 2, the triple-product argument gives every k; tested for every k"),
        );
    }
    items.push(triple_item(
        "triple product as printed",
        "(x^i star x^j) star x^s with C(i+k, n) in the denominator",
        Source::Published,
        |i, k, _| i + k,
    ));
    items.push(
        triple_item(
            "triple product corrected",
            "(x^i star x^j) star x^s with C(i+n, n) in the denominator",
            Source::Derived,
            |i, _, n| i + n,
        )
        .with_detail("symmetric in j and s, so right-commutativity follows for every k"),
    );

    for n in 0..=3 {
        let (lo, hi) = (star(0, n), star(0, n + 1));
        let mut computed = "holds for exponents 1..=6".to_string();
        'grid: for i in 1..=6 {
            for j in 1..=6 {
                let (a, b) = (QPoly::x_pow(i), QPoly::x_pow(j));
                if lo.product(&a, &b).derivative() != hi.product(&a.derivative(), &b.derivative()) {
                    computed = format!("fails at (x^{i}, x^{j})");
                    break 'grid;
                }
            }
        }
        let at_one = lo.product(&QPoly::one(), &QPoly::x_pow(1)).derivative();
        items.push(
            ReportItem::compare(
                format!("derivative star(0,{n}) -> star(0,{})", n + 1),
                format!("d(a star(0,{n}) b) = d(a) star(0,{}) d(b)", n + 1),
                computed,
                "holds for exponents 1..=6",
                Source::Published,
            )
            .with_detail(format!("constants are excluded: d(1 star(0,{n}) x) = {at_one} while d(1) = 0")),
        );
    }

    for (n, value) in [(1, poly(q(-1, 20), 8)), (2, poly(q(-1, 60), 9)), (3, poly(q(-11, 2100), 10))] {
        let got = PolyMulSpec::Bracket { n }.product(&QPoly::x_pow(3), &QPoly::x_pow(4));
        items.push(ReportItem::compare(format!("[x^3, x^4]_{n}"), format!("bracket of order {n}"), got.to_string(), value.to_string(), Source::Published));
    }
    items.push(all_hold(
        "bracket Tortkara",
        "(Q[x], [,]_n) is Tortkara for n <= 3",
        grid_verdicts(&tortkara, Interpretation::Plain, &(1..=3).map(|n| (format!("bracket({n})"), PolyMulSpec::Bracket { n })).collect::<Vec<_>>(), &SamplingPlan::grid(4))?,
        Source::Published,
    ));
    for n in 0..=4 {
        let (br, st) = (PolyMulSpec::Bracket { n: n + 1 }, star(1, n));
        items.push(closed_form_item(
            &format!("[,]_{} from star(1,{n})", n + 1),
            &format!("[a,b]_{} = a star(1,{n}) b - b star(1,{n}) a", n + 1),
            |a, b| br.product(a, b),
            |i, j| {
                let (a, b) = (QPoly::x_pow(i), QPoly::x_pow(j));
                &st.product(&a, &b) - &st.product(&b, &a)
            },
            6,
            Source::Published,
        ));
    }

    type Explicit = fn(&QPoly, &QPoly) -> QPoly;
    let circs: [(&str, PolyMulSpec, Explicit, bool); 3] = [
        ("o2", star(1, 1), |a, b| &(&a.integrate(1) * &b.integrate(1)) + &(a * &b.integrate(2)), true),
        ("o3", star(2, 1), |a, b| &(&a.integrate(1) * &b.integrate(2)) + &(a * &b.integrate(3)), false),
        ("o4", star(2, 2), |a, b| {
            let t = &(&a.integrate(2) * &b.integrate(2)) + &(&a.integrate(1) * &b.integrate(3)).scale(&r(2));
            &t + &(a * &b.integrate(4))
        }, false),
    ];
    for (name, spec, explicit, f4_holds) in circs {
        items.push(closed_form_item(
            &format!("{name} = {spec}"),
            &format!("{name} coincides with {spec}"),
            explicit,
            |i, j| spec.product(&QPoly::x_pow(i), &QPoly::x_pow(j)),
            5,
            Source::Derived,
        ));
        let m = poly_model(spec.clone())?;
        items.push(check_item(&format!("{name} f4'"), &format!("{name} satisfies f4'"), &f4p, Interpretation::Plain, &m, &SamplingPlan::grid(3), true, Source::Published)?);
        items.push(check_item(
            &format!("{name} f4"),
            &format!("{name} {} f4", if f4_holds { "satisfies" } else { "violates" }),
            &f4,
            Interpretation::Plain,
            &m,
            &SamplingPlan::grid(3),
            f4_holds,
            Source::Published,
        )?);
    }
    items.push(check_item("o2 left-Zinbiel", "o2 is left-Zinbiel", &zinbiel, Interpretation::Plain, &poly_model(star(1, 1))?, &g5, true, Source::Published)?);
    Ok(items)
}

/// `x^i / i!`.
fn divided_power(i: u32) -> QPoly {
    poly(factorial(u64::from(i)).recip(), i)
}

pub fn novikov(opts: &ReproOptions) -> Result<Vec<ReportItem>, ReproError> {
    let d = PolyMulSpec::Diamond;
    let mut items = Vec::new();
    type Coef = fn(u32, u32) -> Rat;
    let tables: [(&str, &str, Coef, i32); 3] = [
        ("diamond on divided powers", "e_i <> e_j = C(i+j, i-1) e_(i+j)", |i, j| if i == 0 { Rat::zero() } else { binomial(u64::from(i + j), u64::from(i - 1)) }, 0),
        ("commutator on divided powers", "[e_i, e_j] = C(i+j+2, i+1) (i-j)/(i+j+2) e_(i+j)", |i, j| {
            binomial(u64::from(i + j + 2), u64::from(i + 1)) * Rat::new((i64::from(i) - i64::from(j)).into(), (i + j + 2).into())
        }, -1),
        ("anticommutator on divided powers", "{e_i, e_j} = C(i+j+2, i+1) (i+j+i^2+j^2)/((i+j+1)(i+j+2)) e_(i+j)", |i, j| {
            binomial(u64::from(i + j + 2), u64::from(i + 1)) * Rat::new((i + j + i * i + j * j).into(), ((i + j + 1) * (i + j + 2)).into())
        }, 1),
    ];
    for (name, claim, coef, sign) in tables {
        let expected = "agrees on 0 <= i, j <= 8".to_string();
        let mut computed = expected.clone();
        'grid: for i in 0..=8 {
            for j in 0..=8 {
                let (a, b) = (divided_power(i), divided_power(j));
                let ab = d.product(&a, &b);
                let got = match sign {
                    0 => ab,
                    s => &ab + &d.product(&b, &a).scale(&Rat::from_integer(s.into())),
                };
                if got != divided_power(i + j).scale(&coef(i, j)) {
                    computed = format!("differs at (i, j) = ({i}, {j})");
                    break 'grid;
                }
            }
        }
        items.push(ReportItem::compare(name, claim, computed, expected, Source::Published));
    }
    let m = poly_model(d)?;
    for (name, ident, plan, claim) in [
        ("rsym", "rsym", SamplingPlan::grid(6), "d(a) int(b) is right-symmetric"),
        ("s13", "s13", SamplingPlan::grid(5), "alternating sum of ((t1 t2) t3) t4 over permutations fixing t1 vanishes"),
        ("degree-5 identity", "novikov5", SamplingPlan::grid(3), "the stated degree-5 identity holds"),
    ] {
        items.push(check_item(name, claim, &named(ident, Interpretation::Plain), Interpretation::Plain, &m, &plan, true, Source::Published)?);
    }
    let std5 = named("stdskew5", Interpretation::LieWords);
    let found = find_counterexample(&std5, Interpretation::LieWords, &m, 4000, opts.seed)?;
    let plain = check_identity(&named("stdskew5", Interpretation::Plain), &m, &SamplingPlan::grid(4))?;
    items.push(
        ReportItem::compare(
            "standard skew identity of degree 5",
            "d(a) int(b) violates the standard skew-symmetric identity of degree 5, in commutator words or for the product itself",
            if found.is_some() || !plain.holds_flag() { "fails" } else { "holds" },
            "fails",
            Source::Published,
        )
        .with_detail(match found {
            Some((w, v)) => format!("commutator witness {} gives {v}; for the product itself: {plain}", fmt_values(&w)),
            None => format!("no commutator witness within 4000 evaluations; for the product itself: {plain}"),
        }),
    );

    let ns = poly_model(PolyMulSpec::NovSub)?;
    let no_constants = SamplingPlan::MonomialGrid { min_exp: 1, max_exp: 5 };
    let with_constants = SamplingPlan::grid(3);
    for (name, ident, plan) in [("ab - d(a) int(b) rsym", "rsym", no_constants.clone()), ("ab - d(a) int(b) degree-4 identity", "novsub4", SamplingPlan::MonomialGrid { min_exp: 1, max_exp: 3 })] {
        let p = named(ident, Interpretation::Plain);
        let with_c = check_identity(&p, &ns, &with_constants)?;
        items.push(
            check_item(name, "holds when arguments have zero constant term", &p, Interpretation::Plain, &ns, &plan, true, Source::Published)?
                .with_detail(format!("{plan} on {ns}; allowing constants: {with_c}")),
        );
    }
    Ok(items)
}
