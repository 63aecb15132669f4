use num_bigint::BigInt;
use thiserror::Error;

use crate::{QFreePoly, Rat};

use super::expr::{Expr, Interpretation};
use super::macros::{MacroDef, MacroTable};
use super::FreeTermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub kind: DslErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unbound macro `{0}`")]
    UnboundMacro(String),
    #[error("macro `{name}` takes {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
}

/// Result of parsing DSL text: the target expression plus every definition
/// it may refer to.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub expr: Expr,
    /// Variable names in index order (index 1 first).
    pub var_names: Vec<String>,
    /// Name of the target when it came from a definition.
    pub name: Option<String>,
    pub table: MacroTable,
}

impl Parsed {
    pub fn arity(&self) -> u32 {
        self.var_names.len() as u32
    }

    pub fn expand(&self, interp: Interpretation) -> Result<QFreePoly, FreeTermError> {
        Ok(self.expr.expand(&self.table, interp)?.with_arity(self.arity()))
    }
}

/// Parse a bare expression or a file of definitions; in the latter case the
/// last definition is the target.
pub fn parse(text: &str, table: &MacroTable) -> Result<Parsed, DslError> {
    let mut table = table.clone();
    let mut p = Parser::new(text)?;
    let mut last: Option<MacroDef> = None;
    loop {
        if p.at_eof() {
            break;
        }
        if p.at_definition() {
            let def = p.definition(&table)?;
            table.define(def.clone());
            last = Some(def);
            continue;
        }
        if last.is_some() {
            return Err(p.error_here("expected a definition `name(vars) := expr`"));
        }
        let mut vars = VarScope::Open(Vec::new());
        let expr = p.expr(&table, &mut vars)?;
        if !p.at_eof() {
            return Err(p.error_here("unexpected trailing input"));
        }
        return Ok(Parsed { expr, var_names: vars.names(), name: None, table });
    }
    match last {
        Some(def) => Ok(Parsed {
            expr: Expr::Call(def.name.clone(), (1..=def.arity() as u32).map(Expr::Var).collect()),
            var_names: def.params.clone(),
            name: Some(def.name.clone()),
            table,
        }),
        None => Err(p.error_here("empty input")),
    }
}

/// Parse a file consisting only of definitions, adding each to `table`.
pub fn parse_definitions(text: &str, table: &mut MacroTable) -> Result<Vec<String>, DslError> {
    let mut p = Parser::new(text)?;
    let mut names = Vec::new();
    while !p.at_eof() {
        if !p.at_definition() {
            return Err(p.error_here("expected a definition `name(vars) := expr`"));
        }
        let def = p.definition(table)?;
        names.push(def.name.clone());
        table.define(def);
    }
    Ok(names)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Define,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ':' if chars.get(i + 1) == Some(&'=') => {
                out.push(Spanned { tok: Tok::Define, line: l0, col: c0 });
                advance(2, &mut i);
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | '+' | '-' | '*' | '/' => {
                out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
                advance(1, &mut i);
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, col: c0 });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            }
            other => {
                return Err(DslError {
                    line: l0,
                    col: c0,
                    kind: DslErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

enum VarScope {
    /// Bare expression: variables are numbered by first appearance.
    Open(Vec<String>),
    /// Definition body: only the parameters are in scope.
    Closed(Vec<String>),
}

impl VarScope {
    fn resolve(&mut self, name: &str) -> Option<u32> {
        match self {
            VarScope::Open(names) => {
                let idx = match names.iter().position(|n| n == name) {
                    Some(i) => i,
                    None => {
                        names.push(name.to_string());
                        names.len() - 1
                    }
                };
                Some(idx as u32 + 1)
            }
            VarScope::Closed(names) => names.iter().position(|n| n == name).map(|i| i as u32 + 1),
        }
    }

    fn names(self) -> Vec<String> {
        match self {
            VarScope::Open(n) | VarScope::Closed(n) => n,
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const BUILTIN_TRIPLES: [&str; 3] = ["assoc", "jassoc", "jac"];

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: &str) -> DslError {
        self.error_at(self.pos, DslErrorKind::Syntax(msg.to_string()))
    }

    fn error_at(&self, pos: usize, kind: DslErrorKind) -> DslError {
        let t = &self.toks[pos];
        DslError { line: t.line, col: t.col, kind }
    }

    fn expect(&mut self, c: char) -> Result<(), DslError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            let found = match self.peek() {
                Tok::Eof => "end of input".to_string(),
                Tok::Ident(s) => format!("`{s}`"),
                Tok::Int(n) => format!("`{n}`"),
                Tok::Sym(s) => format!("`{s}`"),
                Tok::Define => "`:=`".to_string(),
            };
            Err(self.error_here(&format!("expected `{c}`, found {found}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// `NAME ( IDENT {, IDENT} ) :=` ahead?
    fn at_definition(&self) -> bool {
        if !matches!(self.peek(), Tok::Ident(_)) || *self.peek_at(1) != Tok::Sym('(') {
            return false;
        }
        let mut k = 2;
        loop {
            if !matches!(self.peek_at(k), Tok::Ident(_)) {
                return false;
            }
            k += 1;
            match self.peek_at(k) {
                Tok::Sym(',') => k += 1,
                Tok::Sym(')') => return *self.peek_at(k + 1) == Tok::Define,
                _ => return false,
            }
        }
    }

    fn definition(&mut self, table: &MacroTable) -> Result<MacroDef, DslError> {
        let name_pos = self.pos;
        let Tok::Ident(name) = self.bump().tok else { unreachable!() };
        if BUILTIN_TRIPLES.contains(&name.as_str()) {
            return Err(self.error_at(name_pos, DslErrorKind::Syntax(format!("`{name}` is reserved"))));
        }
        self.expect('(')?;
        let mut params: Vec<String> = Vec::new();
        loop {
            let p_pos = self.pos;
            let Tok::Ident(p) = self.bump().tok else { unreachable!() };
            if params.contains(&p) {
                return Err(self.error_at(p_pos, DslErrorKind::Syntax(format!("duplicate parameter `{p}`"))));
            }
            params.push(p);
            if self.eat(')') {
                break;
            }
            self.expect(',')?;
        }
        self.bump(); // :=
        let mut scope = VarScope::Closed(params.clone());
        let body = self.expr(table, &mut scope)?;
        Ok(MacroDef { name, params, body })
    }

    fn expr(&mut self, table: &MacroTable, vars: &mut VarScope) -> Result<Expr, DslError> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.prod(table, vars)?))
        } else {
            self.eat('+');
            self.prod(table, vars)?
        };
        loop {
            if self.eat('+') {
                acc = Expr::add(acc, self.prod(table, vars)?);
            } else if self.eat('-') {
                acc = Expr::sub(acc, self.prod(table, vars)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn prod(&mut self, table: &MacroTable, vars: &mut VarScope) -> Result<Expr, DslError> {
        let scalar = if matches!(self.peek(), Tok::Int(_)) {
            let r = self.rational()?;
            self.eat('*');
            Some(r)
        } else {
            None
        };
        let lhs = self.atom(table, vars)?;
        let e = if self.eat('*') {
            let rhs = self.atom(table, vars)?;
            if *self.peek() == Tok::Sym('*') {
                return Err(self.error_here("product chains must be parenthesized, e.g. `(a*b)*c`"));
            }
            Expr::mul(lhs, rhs)
        } else {
            lhs
        };
        Ok(match scalar {
            Some(c) => Expr::Scaled(c, Box::new(e)),
            None => e,
        })
    }

    fn rational(&mut self) -> Result<Rat, DslError> {
        let Tok::Int(num) = self.bump().tok else { unreachable!() };
        if *self.peek() == Tok::Sym('/') && matches!(self.peek_at(1), Tok::Int(_)) {
            self.bump();
            let den_pos = self.pos;
            let Tok::Int(den) = self.bump().tok else { unreachable!() };
            if den == BigInt::from(0) {
                return Err(self.error_at(den_pos, DslErrorKind::Syntax("zero denominator".into())));
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn atom(&mut self, table: &MacroTable, vars: &mut VarScope) -> Result<Expr, DslError> {
        let start = self.pos;
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr(table, vars)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('[') => {
                self.bump();
                let a = self.expr(table, vars)?;
                self.expect(',')?;
                let b = self.expr(table, vars)?;
                self.expect(']')?;
                Ok(Expr::lie(a, b))
            }
            Tok::Sym('{') => {
                self.bump();
                let a = self.expr(table, vars)?;
                self.expect(',')?;
                let b = self.expr(table, vars)?;
                self.expect('}')?;
                Ok(Expr::jordan(a, b))
            }
            Tok::Ident(name) if *self.peek_at(1) == Tok::Sym('(') => {
                self.bump();
                self.bump();
                let mut args = Vec::new();
                if !self.eat(')') {
                    loop {
                        args.push(self.expr(table, vars)?);
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                self.resolve_call(start, name, args, table)
            }
            Tok::Ident(name) => {
                self.bump();
                vars.resolve(&name).ok_or_else(|| {
                    self.error_at(start, DslErrorKind::Syntax(format!("variable `{name}` is not a parameter")))
                }).map(Expr::Var)
            }
            Tok::Int(_) => Err(self.error_here("a scalar must multiply an expression")),
            Tok::Eof => Err(self.error_here("unexpected end of input")),
            _ => Err(self.error_here("expected a variable, bracket or macro call")),
        }
    }

    fn resolve_call(&self, pos: usize, name: String, args: Vec<Expr>, table: &MacroTable) -> Result<Expr, DslError> {
        if BUILTIN_TRIPLES.contains(&name.as_str()) {
            let n = args.len();
            let arr: Box<[Expr; 3]> = args.try_into().map_err(|_| {
                self.error_at(pos, DslErrorKind::Arity { name: name.clone(), expected: 3, found: n })
            })?;
            return Ok(match name.as_str() {
                "assoc" => Expr::Assoc(arr),
                "jassoc" => Expr::JordanAssoc(arr),
                _ => Expr::Jac(arr),
            });
        }
        match table.get(&name) {
            None => Err(self.error_at(pos, DslErrorKind::UnboundMacro(name))),
            Some(def) if def.arity() != args.len() => Err(self.error_at(
                pos,
                DslErrorKind::Arity { name, expected: def.arity(), found: args.len() },
            )),
            Some(_) => Ok(Expr::Call(name, args)),
        }
    }
}
