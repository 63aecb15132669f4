use num_traits::Zero;
use proptest::prelude::*;

use rbident_core::freeterm::{
    bracketings, builtin, normal_form, normal_form_term, reduce_randomized, FreePoly, Interpretation, RewriteSystem, Term,
};
use rbident_core::idspace::{
    consequence_span, decompose, enumerate_basis, nullspace_exact, rank_exact, RowReducer, Symmetry,
};
use rbident_core::models::{poly_model, rbo_law_check, rescale_rbo, seq_model, ModelValue, PolyMulSpec};
use rbident_core::qexact::{format_rat, parse_rat};
use rbident_core::verify::{check_identity, check_words, evidence_bound, EvidenceBound, SamplingPlan};
use rbident_core::{QFreePoly, QMatrix, QPoly, Rat};

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..7, rat()), 0..5).prop_map(QPoly::from_coeffs)
}

fn seq(len: usize) -> impl Strategy<Value = ModelValue> {
    prop::collection::vec(-5i64..=5, len).prop_map(|v| ModelValue::seq_from_ints(&v))
}

fn poly_value() -> impl Strategy<Value = ModelValue> {
    qpoly().prop_map(ModelValue::Poly)
}

fn star_spec() -> impl Strategy<Value = PolyMulSpec> {
    prop_oneof![
        Just(PolyMulSpec::Circ),
        (0u32..3, 0u32..3).prop_map(|(k, n)| PolyMulSpec::Star { k, n }),
        (1u32..4).prop_map(|n| PolyMulSpec::Bracket { n }),
        Just(PolyMulSpec::Double),
        Just(PolyMulSpec::Diamond),
        Just(PolyMulSpec::NovSub),
        rat().prop_map(PolyMulSpec::Meps),
        rat().prop_map(PolyMulSpec::Deformed),
    ]
}

/// A multilinear monomial of the given degree: a bracketing of a permutation.
fn term(degree: u32) -> impl Strategy<Value = Term> {
    (Just((1..=degree).collect::<Vec<u32>>()).prop_shuffle(), any::<prop::sample::Index>()).prop_map(|(labels, ix)| {
        let all = bracketings(&labels);
        ix.get(&all).clone()
    })
}

fn free_poly(degree: u32) -> impl Strategy<Value = QFreePoly> {
    prop::collection::vec((term(degree), rat()), 0..5).prop_map(move |ts| FreePoly::from_terms(ts, degree))
}

fn permutation(n: u32) -> impl Strategy<Value = Vec<u32>> {
    Just((1..=n).collect::<Vec<u32>>()).prop_shuffle()
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    // Low-rank products are likely, so kernels are usually nontrivial.
    (1usize..=cols, prop::collection::vec(-3i64..=3, rows * cols * 2)).prop_map(move |(inner, xs)| {
        let at = |k: usize| Rat::from_integer(xs[k % xs.len()].into());
        let rows_v = (0..rows)
            .map(|r| (0..cols).map(|c| (0..inner).map(|t| at(r * inner + t) * at(rows * cols + t * cols + c)).sum()).collect())
            .collect();
        QMatrix::from_rows(cols, rows_v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_format_parse_roundtrip(r in rat()) {
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn poly_display_parse_roundtrip(p in qpoly()) {
        let back: QPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn derivative_inverts_integral(p in qpoly()) {
        prop_assert_eq!(p.integrate(1).derivative(), p);
    }

    #[test]
    fn integral_inverts_derivative_without_constant(p in qpoly()) {
        let p = &p - &QPoly::constant(p.constant_term());
        prop_assert_eq!(p.derivative().integrate(1), p);
    }

    #[test]
    fn integration_by_parts(a in qpoly(), b in qpoly()) {
        let (ia, ib) = (a.integrate(1), b.integrate(1));
        let rhs = &(&a * &ib).integrate(1) + &(&ia * &b).integrate(1);
        prop_assert_eq!(&ia * &ib, rhs);
    }

    #[test]
    fn repeated_integration_composes(p in qpoly(), k in 0u32..4, m in 0u32..4) {
        prop_assert_eq!(p.integrate(k).integrate(m), p.integrate(k + m));
    }

    #[test]
    fn permute_is_a_group_action(p in free_poly(4), s in permutation(4), t in permutation(4)) {
        let composed: Vec<u32> = s.iter().map(|&i| t[(i - 1) as usize]).collect();
        prop_assert_eq!(p.permute(&s).unwrap().permute(&t).unwrap(), p.permute(&composed).unwrap());
    }

    #[test]
    fn multilinearity_is_preserved(p in free_poly(5), s in permutation(5)) {
        prop_assert!(p.is_multilinear());
        prop_assert!(p.permute(&s).unwrap().is_multilinear());
        for rs in [RewriteSystem::RcomSort, RewriteSystem::CommSort, RewriteSystem::AnticommSort] {
            prop_assert!(normal_form(&p, rs).unwrap().is_multilinear());
        }
    }

    #[test]
    fn anticommutative_sort_flips_sign(u in term(2), v in term(3)) {
        let v = v.relabel(&|i| i + 2);
        let uv = QFreePoly::monomial(Term::mul(u.clone(), v.clone()), 5);
        let vu = QFreePoly::monomial(Term::mul(v, u), 5);
        let rs = RewriteSystem::AnticommSort;
        prop_assert_eq!(normal_form(&uv, rs).unwrap(), -normal_form(&vu, rs).unwrap());
    }

    #[test]
    fn randomized_reduction_is_confluent(t in term(5), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for rs in [RewriteSystem::RcomSort, RewriteSystem::CommSort, RewriteSystem::AnticommSort] {
            prop_assert_eq!(reduce_randomized(&t, rs, &mut rng), normal_form_term(&t, rs));
        }
    }

    #[test]
    fn poly_products_are_bilinear(spec in star_spec(), a in poly_value(), b in poly_value(), c in poly_value(), x in rat(), y in rat()) {
        let m = poly_model(spec).unwrap();
        let combo = &a.scale(&x) + &b.scale(&y);
        let left = m.product(&combo, &c);
        prop_assert_eq!(left, &m.product(&a, &c).scale(&x) + &m.product(&b, &c).scale(&y));
        let right = m.product(&c, &combo);
        prop_assert_eq!(right, &m.product(&c, &a).scale(&x) + &m.product(&c, &b).scale(&y));
    }

    #[test]
    fn seq_products_are_bilinear(a in seq(6), b in seq(6), c in seq(6), x in rat(), y in rat()) {
        let m = seq_model(6);
        let combo = &a.scale(&x) + &b.scale(&y);
        prop_assert_eq!(m.product(&combo, &c), &m.product(&a, &c).scale(&x) + &m.product(&b, &c).scale(&y));
        prop_assert_eq!(m.product(&c, &combo), &m.product(&c, &a).scale(&x) + &m.product(&c, &b).scale(&y));
    }

    #[test]
    fn seq_model_is_causal(a in seq(8), b in seq(8), da in seq(8), db in seq(8), n in 1usize..8) {
        let m = seq_model(8);
        let tail = |v: &ModelValue, d: &ModelValue| match (v, d) {
            (ModelValue::Seq(v), ModelValue::Seq(d)) => {
                ModelValue::Seq(v.iter().zip(d).enumerate().map(|(i, (x, y))| if i < n { x.clone() } else { x + y }).collect())
            }
            _ => unreachable!(),
        };
        let head = |v: ModelValue| match v {
            ModelValue::Seq(v) => v[..n].to_vec(),
            _ => unreachable!(),
        };
        let (a2, b2) = (tail(&a, &da), tail(&b, &db));
        prop_assert_eq!(head(m.product(&a, &b)), head(m.product(&a2, &b2)));
        prop_assert_eq!(head(m.rbo(&a).unwrap()), head(m.rbo(&a2).unwrap()));
    }

    #[test]
    fn rescaled_partial_sums_satisfy_baxter_law(eps in rat(), pairs in prop::collection::vec((seq(5), seq(5)), 1..6)) {
        prop_assume!(!eps.is_zero());
        let m = rescale_rbo(&seq_model(5), &eps).unwrap();
        prop_assert!(rbo_law_check(&m, &pairs).unwrap().holds_flag());
    }

    #[test]
    fn verdicts_are_deterministic(p in free_poly(4), seed in any::<u64>()) {
        let m = seq_model(6);
        let plan = SamplingPlan::random(30, seed);
        prop_assert_eq!(check_identity(&p, &m, &plan).unwrap(), check_identity(&p, &m, &plan).unwrap());
    }

    #[test]
    fn failing_witness_reevaluates(p in free_poly(3), spec in star_spec()) {
        let m = poly_model(spec).unwrap();
        let v = check_identity(&p, &m, &SamplingPlan::grid(2)).unwrap();
        if let (Some(w), Some(value)) = (v.witness(), v.value()) {
            prop_assert!(!value.is_zero());
            prop_assert_eq!(&m.eval(&p, w).unwrap(), value);
        }
    }

    #[test]
    fn identities_are_closed_under_combination(x in rat(), y in rat(), s in permutation(4)) {
        let m = seq_model(6);
        let plan = SamplingPlan::random(40, 7);
        let f4 = builtin("f4", Interpretation::Plain).unwrap();
        let r = builtin("rcom", Interpretation::Plain).unwrap();
        let lifted = r.with_arity(4).mul(&QFreePoly::var(4, 4));
        let q = f4.permute(&s).unwrap();
        prop_assert!(check_identity(&q, &m, &plan).unwrap().holds_flag());
        prop_assert!(check_identity(&lifted, &m, &plan).unwrap().holds_flag());
        let combo = &q.scale(&x) + &lifted.scale(&y);
        prop_assert!(check_identity(&combo, &m, &plan).unwrap().holds_flag());
    }

    #[test]
    fn evidence_grid_is_complete(p in free_poly(3), spec in star_spec()) {
        let m = poly_model(spec).unwrap();
        let EvidenceBound::Proven(b) = evidence_bound(&p, &m) else { return Ok(()) };
        let small = check_identity(&p, &m, &SamplingPlan::grid(b)).unwrap().holds_flag();
        let large = check_identity(&p, &m, &SamplingPlan::grid(b + 3)).unwrap().holds_flag();
        prop_assert!(!small || large);
    }

    #[test]
    fn kernel_vectors_annihilate(a in int_matrix(5, 7)) {
        let k = a.nullspace();
        prop_assert_eq!(k.rank + k.vectors.len(), a.cols());
        for v in &k.vectors {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        let mut independent = RowReducer::new(a.cols());
        for v in &k.vectors {
            prop_assert!(independent.insert(v.clone()));
        }
    }

    #[test]
    fn eliminations_agree(a in int_matrix(6, 6)) {
        let mut rr = RowReducer::new(a.cols());
        for i in 0..a.rows() {
            rr.insert(a.row(i).to_vec());
        }
        let r = a.rank();
        prop_assert_eq!(rr.rank(), r);
        prop_assert_eq!(rank_exact(&a), r);
        prop_assert_eq!(nullspace_exact(&a), a.nullspace());
    }

    #[test]
    fn decomposition_recombines(coeffs in prop::collection::vec(rat(), 8)) {
        let basis = enumerate_basis(4, Symmetry::None).unwrap();
        let span = consequence_span(&builtin("rcom", Interpretation::Plain).unwrap(), 4, Symmetry::None).unwrap();
        let target: QFreePoly = span.iter().zip(&coeffs).map(|(p, c)| p.scale(c)).sum();
        let d = decompose(&target, &span, None, &basis).unwrap().expect("target lies in the span");
        let back: QFreePoly = span.iter().zip(&d.coefficients).map(|(p, c)| p.scale(c)).sum();
        prop_assert_eq!(back.with_arity(4), target.with_arity(4));
        prop_assert!(!d.uses_kernel());
    }
}

#[test]
fn zero_polynomial_needs_no_grid() {
    let m = poly_model(PolyMulSpec::Star { k: 0, n: 1 }).unwrap();
    assert_eq!(evidence_bound(&QFreePoly::zero(3), &m), EvidenceBound::Proven(0));
}

#[test]
fn plain_product_coefficients_are_constant() {
    let m = poly_model(PolyMulSpec::Plain).unwrap();
    let f4 = builtin("f4", Interpretation::Plain).unwrap();
    assert_eq!(evidence_bound(&f4, &m), EvidenceBound::Proven(0));
}

#[test]
fn non_poly_models_are_heuristic() {
    let f4 = builtin("f4", Interpretation::Plain).unwrap();
    assert_eq!(evidence_bound(&f4, &seq_model(6)), EvidenceBound::Heuristic);
}

/// `x^i` times `x^j` under `a int(b) + int(a) b` is `(i+j+2)/((i+1)(j+1)) x^(i+j+1)`.
#[test]
fn degree_three_bound_on_the_symmetrized_integral() {
    let m = poly_model(PolyMulSpec::Star { k: 0, n: 1 }).unwrap();
    let comb = QFreePoly::monomial(Term::mul(Term::mul(Term::var(1), Term::var(2)), Term::var(3)), 3);
    let EvidenceBound::Proven(b) = evidence_bound(&comb, &m) else { panic!("closed form exists") };
    assert_eq!(b, 2);

    // Independent check of sufficiency: the cleared numerator of the exact
    // coefficient is (i+j+s+3), a polynomial of degree one per variable.
    let coeff = |i: u32, j: u32, s: u32| -> Rat {
        let v = m
            .eval(&comb, &[ModelValue::Poly(QPoly::x_pow(i)), ModelValue::Poly(QPoly::x_pow(j)), ModelValue::Poly(QPoly::x_pow(s))])
            .unwrap();
        match v {
            ModelValue::Poly(p) => p.coeff(i + j + s + 2),
            _ => unreachable!(),
        }
    };
    let n = |x: u32| Rat::from_integer((x as i64).into());
    for (i, j, s) in [(0, 0, 0), (1, 4, 2), (5, 0, 3), (7, 6, 9)] {
        let cleared = coeff(i, j, s) * n(i + 1) * n(j + 1) * n(s + 1);
        assert_eq!(cleared, n(i + j + s + 3));
    }
}

#[test]
fn anticommutative_kernel_vectors_hold_on_fresh_samples() {
    let basis = enumerate_basis(4, Symmetry::Anticomm).unwrap();
    let m = seq_model(6);
    let space = rbident_core::idspace::identity_space(&basis, &m, &[], rbident_core::idspace::CoordinateSelector::All, 42).unwrap();
    assert_eq!(space.kernel.dim(), 3);
    let plan = SamplingPlan::random(100, 9001);
    for v in &space.kernel.vectors {
        let p = basis.to_poly(v);
        assert!(check_words(&p, Interpretation::LieWords, &m, &plan).unwrap().holds_flag(), "{p}");
    }
}

#[test]
fn evaluations_do_not_depend_on_thread_count() {
    let m = poly_model(PolyMulSpec::Star { k: 2, n: 0 }).unwrap();
    let p = builtin("f5plus", Interpretation::JordanWords).unwrap();
    let plan = SamplingPlan::grid(4);
    let reference = check_words(&p, Interpretation::JordanWords, &m, &plan).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let v = pool.install(|| check_words(&p, Interpretation::JordanWords, &m, &plan).unwrap());
        assert_eq!(v, reference);
    }
    assert!(!reference.holds_flag());
}
