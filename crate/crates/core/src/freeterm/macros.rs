use std::collections::BTreeMap;

use itertools::Itertools;

use crate::Rat;

use super::expr::Expr;
use super::parser::parse_definitions;

const BUILTINS: &str = include_str!("builtins.rbi");
const JORDAN5: &str = include_str!("jordan5.rbi");

/// Left-hand multipliers of the stated degree-five decompositions:
/// `JOR5_MULTIPLIERS[k-1] * g_jor5_k = jor5_rhs_k`.
pub const JOR5_MULTIPLIERS: [i64; 20] = [3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 1, 3, 3, 3, 1, 1, 3, 1, 3, 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacroDef {
    pub name: String,
    pub params: Vec<String>,
    pub body: Expr,
}

impl MacroDef {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct MacroTable {
    defs: BTreeMap<String, MacroDef>,
}

impl MacroTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Every named identity shipped with the library.
    pub fn builtins() -> Self {
        let mut t = Self::empty();
        t.define(alternating_comb("s13", 4));
        t.define(alternating_comb("stdskew5", 5));
        parse_definitions(BUILTINS, &mut t).expect("builtin definitions parse");
        parse_definitions(JORDAN5, &mut t).expect("builtin definitions parse");
        t
    }

    pub fn define(&mut self, def: MacroDef) {
        self.defs.insert(def.name.clone(), def);
    }

    pub fn get(&self, name: &str) -> Option<&MacroDef> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.defs.keys().map(String::as_str)
    }

    /// `name(a, b, ...)` as an expression over the first `arity` variables.
    pub fn instance(&self, name: &str) -> Option<Expr> {
        self.get(name).map(|d| Expr::Call(name.to_string(), (1..=d.arity() as u32).map(Expr::Var).collect()))
    }
}

fn param_names(n: usize) -> Vec<String> {
    (1..=n as u32).map(super::term::var_name).collect()
}

/// Sum over permutations fixing the first slot of `sign * (((t1 t2) t3) ...) tn`.
fn alternating_comb(name: &str, n: usize) -> MacroDef {
    let mut body: Option<Expr> = None;
    for rest in (2..=n as u32).permutations(n - 1) {
        let inversions = (0..rest.len()).flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| rest[i] > rest[j])
            .count();
        let comb = rest.iter().fold(Expr::Var(1), |acc, &v| Expr::mul(acc, Expr::Var(v)));
        body = Some(match body {
            None if inversions % 2 == 0 => comb,
            None => Expr::Scaled(Rat::from_integer((-1).into()), Box::new(comb)),
            Some(acc) if inversions % 2 == 0 => Expr::add(acc, comb),
            Some(acc) => Expr::sub(acc, comb),
        });
    }
    MacroDef { name: name.to_string(), params: param_names(n), body: body.expect("n >= 2") }
}
