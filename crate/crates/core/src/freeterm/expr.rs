use std::fmt;

use crate::{QFreePoly, Rat};

use super::macros::MacroTable;
use super::term::{var_name, Term};
use super::FreeTermError;

/// Expression tree of the identity DSL, before expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(u32),
    Scaled(Rat, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Lie(Box<Expr>, Box<Expr>),
    Jordan(Box<Expr>, Box<Expr>),
    Assoc(Box<[Expr; 3]>),
    JordanAssoc(Box<[Expr; 3]>),
    Jac(Box<[Expr; 3]>),
    Call(String, Vec<Expr>),
}

/// How products and brackets are turned into formal monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interpretation {
    /// `[x,y] = xy - yx`, `{x,y} = xy + yx`.
    Plain,
    /// The formal product is the Lie bracket; `x*y` and `[x,y]` coincide.
    LieWords,
    /// The formal product is the Jordan product; `x*y` and `{x,y}` coincide.
    JordanWords,
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn var(i: u32) -> Expr {
        Expr::Var(i)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn lie(a: Expr, b: Expr) -> Expr {
        Expr::Lie(Box::new(a), Box::new(b))
    }

    pub fn jordan(a: Expr, b: Expr) -> Expr {
        Expr::Jordan(Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn call(name: &str, args: Vec<Expr>) -> Expr {
        Expr::Call(name.to_string(), args)
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Expr::Var(i) => *i,
            Expr::Scaled(_, e) | Expr::Neg(e) => e.max_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Lie(a, b) | Expr::Jordan(a, b) => {
                a.max_var().max(b.max_var())
            }
            Expr::Assoc(xs) | Expr::JordanAssoc(xs) | Expr::Jac(xs) => xs.iter().map(Expr::max_var).max().unwrap_or(0),
            Expr::Call(_, args) => args.iter().map(Expr::max_var).max().unwrap_or(0),
        }
    }

    /// Expand every macro and bracket into a linear combination of monomials.
    pub fn expand(&self, table: &MacroTable, interp: Interpretation) -> Result<QFreePoly, FreeTermError> {
        let arity = self.max_var();
        self.expand_in(table, interp, arity)
    }

    fn expand_in(&self, table: &MacroTable, interp: Interpretation, arity: u32) -> Result<QFreePoly, FreeTermError> {
        let go = |e: &Expr| e.expand_in(table, interp, arity);
        Ok(match self {
            Expr::Var(i) => QFreePoly::var(*i, arity),
            Expr::Scaled(c, e) => go(e)?.scale(c),
            Expr::Neg(e) => -go(e)?,
            Expr::Add(a, b) => go(a)? + go(b)?,
            Expr::Sub(a, b) => go(a)? - go(b)?,
            Expr::Mul(a, b) => go(a)?.mul(&go(b)?),
            Expr::Lie(a, b) => lie(&go(a)?, &go(b)?, interp)?,
            Expr::Jordan(a, b) => jordan(&go(a)?, &go(b)?, interp)?,
            Expr::Assoc(xs) => {
                let [a, b, c] = [go(&xs[0])?, go(&xs[1])?, go(&xs[2])?];
                a.mul(&b.mul(&c)) - a.mul(&b).mul(&c)
            }
            Expr::JordanAssoc(xs) => {
                let [a, b, c] = [go(&xs[0])?, go(&xs[1])?, go(&xs[2])?];
                let bc = jordan(&b, &c, interp)?;
                let ab = jordan(&a, &b, interp)?;
                jordan(&a, &bc, interp)? - jordan(&ab, &c, interp)?
            }
            Expr::Jac(xs) => {
                let [a, b, c] = [go(&xs[0])?, go(&xs[1])?, go(&xs[2])?];
                let t1 = lie(&lie(&a, &b, interp)?, &c, interp)?;
                let t2 = lie(&lie(&b, &c, interp)?, &a, interp)?;
                let t3 = lie(&lie(&c, &a, interp)?, &b, interp)?;
                t1 + t2 + t3
            }
            Expr::Call(name, args) => {
                let def = table.get(name).ok_or_else(|| FreeTermError::UnboundMacro(name.clone()))?;
                if def.arity() != args.len() {
                    return Err(FreeTermError::MacroArity {
                        name: name.clone(),
                        expected: def.arity(),
                        found: args.len(),
                    });
                }
                let body = def.body.expand_in(table, interp, def.arity() as u32)?;
                let vals = args.iter().map(go).collect::<Result<Vec<_>, _>>()?;
                body.substitute(&vals)?.with_arity(arity)
            }
        })
    }
}

fn lie(a: &QFreePoly, b: &QFreePoly, interp: Interpretation) -> Result<QFreePoly, FreeTermError> {
    match interp {
        Interpretation::Plain => Ok(a.mul(b) - b.mul(a)),
        Interpretation::LieWords => Ok(a.mul(b)),
        Interpretation::JordanWords => Err(FreeTermError::BracketNotAvailable { bracket: "[,]", interp }),
    }
}

fn jordan(a: &QFreePoly, b: &QFreePoly, interp: Interpretation) -> Result<QFreePoly, FreeTermError> {
    match interp {
        Interpretation::Plain => Ok(a.mul(b) + b.mul(a)),
        Interpretation::JordanWords => Ok(a.mul(b)),
        Interpretation::LieWords => Err(FreeTermError::BracketNotAvailable { bracket: "{,}", interp }),
    }
}

impl Interpretation {
    /// Render a monomial in DSL syntax: `(a*b)*c`, `[[a,b],c]` or `{{a,b},c}`.
    pub fn render(self, t: &Term) -> String {
        match (self, t) {
            (Interpretation::Plain, _) => t.to_string(),
            (_, Term::Var(i)) => var_name(*i),
            (Interpretation::LieWords, Term::Mul(l, r)) => format!("[{},{}]", self.render(l), self.render(r)),
            (Interpretation::JordanWords, Term::Mul(l, r)) => format!("{{{},{}}}", self.render(l), self.render(r)),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::Plain => "plain",
            Interpretation::LieWords => "lie",
            Interpretation::JordanWords => "jordan",
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn triple(f: &mut fmt::Formatter<'_>, name: &str, xs: &[Expr; 3]) -> fmt::Result {
            write!(f, "{name}({}, {}, {})", xs[0], xs[1], xs[2])
        }
        fn factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
            match e {
                Expr::Add(..) | Expr::Sub(..) | Expr::Neg(..) | Expr::Scaled(..) | Expr::Mul(..) => write!(f, "({e})"),
                _ => write!(f, "{e}"),
            }
        }
        match self {
            Expr::Var(i) => f.write_str(&var_name(*i)),
            Expr::Scaled(c, e) => {
                write!(f, "{}*", crate::qexact::format_rat(c))?;
                factor(f, e)
            }
            Expr::Neg(e) => {
                f.write_str("-")?;
                factor(f, e)
            }
            Expr::Add(a, b) => write!(f, "{a} + {b}"),
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                match **b {
                    Expr::Add(..) | Expr::Sub(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Expr::Mul(a, b) => {
                factor(f, a)?;
                f.write_str("*")?;
                factor(f, b)
            }
            Expr::Lie(a, b) => write!(f, "[{a}, {b}]"),
            Expr::Jordan(a, b) => write!(f, "{{{a}, {b}}}"),
            Expr::Assoc(xs) => triple(f, "assoc", xs),
            Expr::JordanAssoc(xs) => triple(f, "jassoc", xs),
            Expr::Jac(xs) => triple(f, "jac", xs),
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
