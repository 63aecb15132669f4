use std::collections::BTreeMap;

use crate::qexact::parse_rat;
use crate::Rat;

use super::{eps_model, poly_model, seq_model, EpsSpec, Model, ModelError, PolyMulSpec};

/// Every accepted model spec form with its parameter schema.
pub const MODEL_SELECTORS: &[(&str, &str)] = &[
    ("seq:N=<len>[,eps=<rat>]", "sequences, a o b = a R(b), R = eps * prefix sums, weight -eps"),
    ("poly:mul=circ", "a int(b), R = int, weight 0"),
    ("poly:mul=star,k=<k>,n=<n>", "sum_i C(n,i) int_i(a) int_(n-i+k)(b)"),
    ("poly:mul=circ2 | circ3 | circ4", "aliases for star with (k,n) = (1,1), (2,1), (2,2)"),
    ("poly:mul=bracket,n=<n>", "sum_i C(n,i) (1 - 2i/n) int_i(a) int_(n-i)(b), n >= 1"),
    ("poly:mul=meps,eps=<rat>", "a int_2(b) + eps int(a) int(b)"),
    ("poly:mul=double", "int(a) int(b), R = int, weight 0"),
    ("poly:mul=deformed,eps=<rat>", "int(a) int(b) + eps a int_2(b), R = int, weight 0"),
    ("poly:mul=diamond", "d(a) int(b)"),
    ("poly:mul=novsub", "a b - d(a) int(b)"),
    ("poly:mul=plain", "a b"),
    ("eps:m=<dim>,seed=<u64> | eps:m=<dim>,eps=<r1>;...;<r(m-1)>", "e_i o e_j = eps_j e_i for i > j, else 0"),
];

fn err(msg: impl Into<String>) -> ModelError {
    ModelError::Spec(msg.into())
}

struct Params<'a> {
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Params<'a> {
    fn parse(body: &'a str) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for kv in body.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| err(format!("expected key=value, got '{kv}'")))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(err(format!("empty key or value in '{kv}'")));
            }
            if map.insert(k, v).is_some() {
                return Err(err(format!("duplicate key '{k}'")));
            }
        }
        Ok(Params { map })
    }

    fn allow(&self, keys: &[&str]) -> Result<(), ModelError> {
        match self.map.keys().find(|k| !keys.contains(k)) {
            Some(k) => Err(err(format!("unknown key '{k}'"))),
            None => Ok(()),
        }
    }

    fn get(&self, k: &str) -> Option<&'a str> {
        self.map.get(k).copied()
    }

    fn req(&self, k: &str) -> Result<&'a str, ModelError> {
        self.get(k).ok_or_else(|| err(format!("missing key '{k}'")))
    }

    fn uint<T: std::str::FromStr>(&self, k: &str) -> Result<T, ModelError> {
        let v = self.req(k)?;
        v.parse().map_err(|_| err(format!("'{k}' must be a non-negative integer, got '{v}'")))
    }

    fn rat(&self, k: &str) -> Result<Rat, ModelError> {
        let v = self.req(k)?;
        parse_rat(v).map_err(|_| err(format!("'{k}' must be a rational, got '{v}'")))
    }
}

/// Parse a model spec string such as `seq:N=6` or `poly:mul=star,k=2,n=0`.
pub fn parse_model_spec(s: &str) -> Result<Model, ModelError> {
    let (kind, body) = s.trim().split_once(':').ok_or_else(|| err(format!("missing ':' in '{s}'")))?;
    let p = Params::parse(body)?;
    match kind {
        "seq" => {
            p.allow(&["N", "eps"])?;
            let n: usize = p.uint("N")?;
            if n == 0 {
                return Err(ModelError::InvalidParameter("N must be at least 1".into()));
            }
            let m = seq_model(n);
            match p.get("eps") {
                Some(_) => super::rescale_rbo(&m, &p.rat("eps")?),
                None => Ok(m),
            }
        }
        "poly" => {
            let mul = p.req("mul")?;
            let (keys, spec): (&[&str], PolyMulSpec) = match mul {
                "circ" => (&[], PolyMulSpec::Circ),
                "circ2" => (&[], PolyMulSpec::Star { k: 1, n: 1 }),
                "circ3" => (&[], PolyMulSpec::Star { k: 2, n: 1 }),
                "circ4" => (&[], PolyMulSpec::Star { k: 2, n: 2 }),
                "star" => (&["k", "n"], PolyMulSpec::Star { k: p.uint("k")?, n: p.uint("n")? }),
                "bracket" => (&["n"], PolyMulSpec::Bracket { n: p.uint("n")? }),
                "meps" => (&["eps"], PolyMulSpec::Meps(p.rat("eps")?)),
                "double" => (&[], PolyMulSpec::Double),
                "deformed" => (&["eps"], PolyMulSpec::Deformed(p.rat("eps")?)),
                "diamond" => (&[], PolyMulSpec::Diamond),
                "novsub" => (&[], PolyMulSpec::NovSub),
                "plain" => (&[], PolyMulSpec::Plain),
                other => return Err(err(format!("unknown product '{other}'"))),
            };
            let mut allowed = vec!["mul"];
            allowed.extend_from_slice(keys);
            p.allow(&allowed)?;
            poly_model(spec)
        }
        "eps" => {
            p.allow(&["m", "seed", "eps"])?;
            let m: usize = p.uint("m")?;
            if m < 2 {
                return Err(ModelError::InvalidParameter("m must be at least 2".into()));
            }
            let spec = match (p.get("seed"), p.get("eps")) {
                (Some(_), None) => EpsSpec::random(m, p.uint("seed")?),
                (None, Some(list)) => {
                    let eps = list
                        .split(';')
                        .map(|t| parse_rat(t.trim()).map_err(|_| err(format!("bad eps entry '{t}'"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    if eps.len() + 1 != m {
                        return Err(err(format!("eps needs {} entries, got {}", m - 1, eps.len())));
                    }
                    EpsSpec { m, eps }
                }
                (Some(_), Some(_)) => return Err(err("give either seed or eps, not both")),
                (None, None) => return Err(err("missing key 'seed' or 'eps'")),
            };
            eps_model(spec)
        }
        other => Err(err(format!("unknown carrier '{other}'"))),
    }
}
