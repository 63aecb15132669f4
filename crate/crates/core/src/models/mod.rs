//! Concrete algebras: partial sums on sequences, products on `Q[x]` built from
//! integration and derivation, and a triangular algebra on a finite basis.

mod eps;
mod poly_mul;
mod spec;
mod value;

pub use eps::EpsSpec;
pub use poly_mul::{ClosedForm, PolyMulSpec};
pub use spec::{parse_model_spec, MODEL_SELECTORS};
pub use value::ModelValue;

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::freeterm::{Interpretation, Term};
use crate::verify::Verdict;
use crate::{QFreePoly, QPoly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid model spec: {0}")]
    Spec(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("model has no Rota-Baxter operator")]
    MissingRbo,
    #[error("rescaling factor must be nonzero")]
    ZeroEps,
    #[error("carrier mismatch: model carries {expected}, got {found}")]
    CarrierMismatch { expected: String, found: String },
    #[error("assignment covers {found} variables, polynomial needs {needed}")]
    MissingVariable { needed: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Seq(usize),
    Poly,
    Basis(usize),
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Seq(n) => write!(f, "sequences of length {n}"),
            Carrier::Poly => f.write_str("polynomials"),
            Carrier::Basis(m) => write!(f, "vectors over e1..e{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Product {
    /// `a R(b)` with `R = scale * prefix sums`.
    Seq { scale: Rat },
    Poly(PolyMulSpec),
    Eps(EpsSpec),
}

/// A carrier, a bilinear product and an optional Rota–Baxter operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    carrier: Carrier,
    product: Product,
    /// Declared weight of the operator, if there is one.
    weight: Option<Rat>,
}

/// Partial sums on length-`n` sequences: `R = prefix sums`, weight `-1`.
pub fn seq_model(n: usize) -> Model {
    assert!(n >= 1, "sequence length must be positive");
    let one = Rat::from_integer(1.into());
    Model { carrier: Carrier::Seq(n), weight: Some(-one.clone()), product: Product::Seq { scale: one } }
}

pub fn poly_model(spec: PolyMulSpec) -> Result<Model, ModelError> {
    spec.validate()?;
    let weight = spec.integration_operator().then(Rat::zero);
    Ok(Model { carrier: Carrier::Poly, product: Product::Poly(spec), weight })
}

pub fn eps_model(spec: EpsSpec) -> Result<Model, ModelError> {
    if spec.m < 2 || spec.eps.len() + 1 != spec.m {
        return Err(ModelError::InvalidParameter(format!("need m >= 2 and m-1 parameters, got m={}", spec.m)));
    }
    Ok(Model { carrier: Carrier::Basis(spec.m), product: Product::Eps(spec), weight: None })
}

/// `R' = eps R` with weight `eps * lambda`.
pub fn rescale_rbo(m: &Model, eps: &Rat) -> Result<Model, ModelError> {
    if eps.is_zero() {
        return Err(ModelError::ZeroEps);
    }
    match (&m.product, &m.weight) {
        (Product::Seq { scale }, Some(w)) if !w.is_zero() => Ok(Model {
            carrier: m.carrier,
            product: Product::Seq { scale: scale * eps },
            weight: Some(w * eps),
        }),
        _ => Err(ModelError::MissingRbo),
    }
}

impl Model {
    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn weight(&self) -> Option<&Rat> {
        self.weight.as_ref()
    }

    /// Same model with a different declared weight (for negative tests).
    pub fn with_declared_weight(&self, w: Rat) -> Model {
        Model { weight: Some(w), ..self.clone() }
    }

    pub fn poly_spec(&self) -> Option<&PolyMulSpec> {
        match &self.product {
            Product::Poly(s) => Some(s),
            _ => None,
        }
    }

    pub fn eps_spec(&self) -> Option<&EpsSpec> {
        match &self.product {
            Product::Eps(s) => Some(s),
            _ => None,
        }
    }

    /// The model spec string, parseable by [`parse_model_spec`].
    pub fn spec_string(&self) -> String {
        match &self.product {
            Product::Seq { scale } => {
                let Carrier::Seq(n) = self.carrier else { unreachable!() };
                if scale == &Rat::from_integer(1.into()) {
                    format!("seq:N={n}")
                } else {
                    format!("seq:N={n},eps={}", crate::qexact::format_rat(scale))
                }
            }
            Product::Poly(s) => s.to_string(),
            Product::Eps(s) => {
                let eps: Vec<String> = s.eps.iter().map(crate::qexact::format_rat).collect();
                format!("eps:m={},eps={}", s.m, eps.join(";"))
            }
        }
    }

    pub fn check_value(&self, v: &ModelValue) -> Result<(), ModelError> {
        let ok = match (self.carrier, v) {
            (Carrier::Seq(n), ModelValue::Seq(x)) => x.len() == n,
            (Carrier::Poly, ModelValue::Poly(_)) => true,
            (Carrier::Basis(m), ModelValue::Basis(x)) => x.len() == m,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(ModelError::CarrierMismatch { expected: self.carrier.to_string(), found: v.kind().to_string() })
        }
    }

    pub fn zero(&self) -> ModelValue {
        match self.carrier {
            Carrier::Seq(n) => ModelValue::Seq(vec![Rat::zero(); n]),
            Carrier::Poly => ModelValue::Poly(QPoly::zero()),
            Carrier::Basis(m) => ModelValue::Basis(vec![Rat::zero(); m]),
        }
    }

    /// The operator `R`, when the model has one.
    pub fn rbo(&self, a: &ModelValue) -> Option<ModelValue> {
        match (&self.product, a) {
            (Product::Seq { scale }, ModelValue::Seq(v)) => {
                let mut acc = Rat::zero();
                Some(ModelValue::Seq(
                    v.iter()
                        .map(|x| {
                            acc += x;
                            &acc * scale
                        })
                        .collect(),
                ))
            }
            (Product::Poly(s), ModelValue::Poly(p)) if s.integration_operator() => Some(ModelValue::Poly(p.integrate(1))),
            _ => None,
        }
    }

    /// The underlying commutative associative product of the carrier.
    pub fn carrier_product(&self, a: &ModelValue, b: &ModelValue) -> Option<ModelValue> {
        match (a, b) {
            (ModelValue::Seq(x), ModelValue::Seq(y)) => Some(ModelValue::Seq(x.iter().zip(y).map(|(p, q)| p * q).collect())),
            (ModelValue::Poly(p), ModelValue::Poly(q)) => Some(ModelValue::Poly(p * q)),
            _ => None,
        }
    }

    /// The model product `a o b`.
    pub fn product(&self, a: &ModelValue, b: &ModelValue) -> ModelValue {
        match (&self.product, a, b) {
            (Product::Seq { .. }, ModelValue::Seq(x), _) => {
                let rb = self.rbo(b).expect("sequence operand");
                let ModelValue::Seq(r) = rb else { unreachable!() };
                ModelValue::Seq(x.iter().zip(&r).map(|(p, q)| p * q).collect())
            }
            (Product::Poly(s), ModelValue::Poly(p), ModelValue::Poly(q)) => ModelValue::Poly(s.product(p, q)),
            (Product::Eps(s), ModelValue::Basis(x), ModelValue::Basis(y)) => {
                let mut out = vec![Rat::zero(); s.m];
                for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (j, yj) in y.iter().enumerate().take(i).filter(|(_, c)| !c.is_zero()) {
                        out[i] += xi * yj * &s.eps[j];
                    }
                }
                ModelValue::Basis(out)
            }
            _ => panic!("carrier mismatch: {} o {} in {}", a.kind(), b.kind(), self.spec_string()),
        }
    }

    /// Product used for words of the given kind: `a o b`, `[a,b]` or `{a,b}`.
    pub fn word_product(&self, interp: Interpretation, a: &ModelValue, b: &ModelValue) -> ModelValue {
        match interp {
            Interpretation::Plain => self.product(a, b),
            Interpretation::LieWords => &self.product(a, b) - &self.product(b, a),
            Interpretation::JordanWords => &self.product(a, b) + &self.product(b, a),
        }
    }

    /// Evaluate a polynomial of ordinary products.
    pub fn eval(&self, p: &QFreePoly, assignment: &[ModelValue]) -> Result<ModelValue, ModelError> {
        self.eval_words(p, Interpretation::Plain, assignment)
    }

    /// Evaluate a polynomial whose formal product is `interp`.
    pub fn eval_words(&self, p: &QFreePoly, interp: Interpretation, assignment: &[ModelValue]) -> Result<ModelValue, ModelError> {
        let needed = p.terms().map(|(t, _)| t.max_var() as usize).max().unwrap_or(0);
        if assignment.len() < needed {
            return Err(ModelError::MissingVariable { needed, found: assignment.len() });
        }
        for v in assignment {
            self.check_value(v)?;
        }
        let mut memo: HashMap<Term, ModelValue> = HashMap::new();
        let mut acc = self.zero();
        for (t, c) in p.terms() {
            let v = self.eval_term(t, interp, assignment, &mut memo);
            acc = &acc + &v.scale(c);
        }
        Ok(acc)
    }

    /// Evaluate several monomials on one assignment, sharing subterm values.
    pub fn eval_terms(&self, terms: &[Term], interp: Interpretation, assignment: &[ModelValue]) -> Vec<ModelValue> {
        let mut memo = HashMap::new();
        terms.iter().map(|t| self.eval_term(t, interp, assignment, &mut memo)).collect()
    }

    fn eval_term(&self, t: &Term, interp: Interpretation, assignment: &[ModelValue], memo: &mut HashMap<Term, ModelValue>) -> ModelValue {
        match t {
            Term::Var(i) => assignment[(*i - 1) as usize].clone(),
            Term::Mul(l, r) => {
                if let Some(v) = memo.get(t) {
                    return v.clone();
                }
                let a = self.eval_term(l, interp, assignment, memo);
                let b = self.eval_term(r, interp, assignment, memo);
                let v = self.word_product(interp, &a, &b);
                memo.insert(t.clone(), v.clone());
                v
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Check `R(a)R(b) = R(a R(b) + R(a) b + lambda a b)` at the declared weight.
pub fn rbo_law_check(m: &Model, samples: &[(ModelValue, ModelValue)]) -> Result<Verdict, ModelError> {
    let w = m.weight.clone().ok_or(ModelError::MissingRbo)?;
    for (idx, (a, b)) in samples.iter().enumerate() {
        m.check_value(a)?;
        m.check_value(b)?;
        let ra = m.rbo(a).ok_or(ModelError::MissingRbo)?;
        let rb = m.rbo(b).ok_or(ModelError::MissingRbo)?;
        let mul = |x: &ModelValue, y: &ModelValue| m.carrier_product(x, y).expect("carrier has a product");
        let lhs = mul(&ra, &rb);
        let inner = &(&mul(a, &rb) + &mul(&ra, b)) + &mul(a, b).scale(&w);
        let diff = &lhs - &m.rbo(&inner).expect("operator defined");
        if !diff.is_zero() {
            return Ok(Verdict::fails(vec![a.clone(), b.clone()], diff, idx + 1));
        }
    }
    Ok(Verdict::holds(samples.len(), format!("{} operator pairs", samples.len()), true))
}
