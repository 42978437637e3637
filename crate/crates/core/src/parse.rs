//! Text input: field specs, field elements, commutative forms `Phi`,
//! noncommutative expressions and matrix tuples in JSON.
//!
//! Expressions share one grammar: `+ - * / ^`, parentheses, integers,
//! names and calls `name(arg, ...)`. Juxtaposition is not multiplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{FieldError, ParseError};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::ncalg::{iterated_commutator, star_product_in, Alphabet, FreeAlgebra, NCPoly};
use crate::poly::Poly;
use crate::repcheck::{GeneralPresentation, MatrixRep};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Name(String, usize),
    Call(String, Vec<Expr>, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Every name that is not a call.
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Name(n, _) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Call(_, args, _) => args.iter().for_each(|a| a.names(out)),
            Expr::Neg(a) | Expr::Pow(a, _) => a.names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(text.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect()), pos));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ParseError::new(format!("unexpected character '{c}'"), pos));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(format!("expected '{c}'"), self.offset()))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                // juxtaposition
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let e = u32::try_from(n).map_err(|_| ParseError::new("exponent too large", at))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(ParseError::new("exponent must be a nonnegative integer", at)),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.sum()?];
                    while self.eat(',') {
                        args.push(self.sum()?);
                    }
                    self.expect(')')?;
                    Ok(Expr::Call(name, args, at))
                } else {
                    Ok(Expr::Name(name, at))
                }
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some((Tok::Sym(c), _)) => Err(ParseError::new(format!("unexpected '{c}'"), at)),
            None => Err(ParseError::new("unexpected end of input", at)),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, end: s.len() };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new("trailing input", p.offset()));
    }
    Ok(e)
}

/// Arithmetic an expression can be evaluated into.
trait Target {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn name(&self, n: &str, at: usize) -> Result<Self::V, ParseError>;
    fn call(&self, _n: &str, _args: &[Expr], at: usize) -> Result<Self::V, ParseError> {
        Err(ParseError::new("function calls are not allowed here", at))
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    /// Division; targets other than fields only divide by constants.
    fn div(&self, a: &Self::V, b: &Self::V, at: usize) -> Result<Self::V, ParseError>;
    fn one(&self) -> Self::V;

    fn eval(&self, e: &Expr) -> Result<Self::V, ParseError> {
        Ok(match e {
            Expr::Num(n) => self.int(n),
            Expr::Name(n, at) => self.name(n, *at)?,
            Expr::Call(n, args, at) => self.call(n, args, *at)?,
            Expr::Neg(a) => self.neg(&self.eval(a)?),
            Expr::Add(a, b) => self.add(&self.eval(a)?, &self.eval(b)?),
            Expr::Sub(a, b) => self.add(&self.eval(a)?, &self.neg(&self.eval(b)?)),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Div(a, b, at) => self.div(&self.eval(a)?, &self.eval(b)?, *at)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                (0..*k).fold(self.one(), |acc, _| self.mul(&acc, &base))
            }
        })
    }
}

fn field_err(e: FieldError, at: usize) -> ParseError {
    ParseError::new(e.to_string(), at)
}

struct ElementTarget<'a>(&'a Field);

impl Target for ElementTarget<'_> {
    type V = FieldElement;
    fn int(&self, n: &BigInt) -> FieldElement {
        self.0.from_bigint(n)
    }
    fn name(&self, n: &str, at: usize) -> Result<FieldElement, ParseError> {
        self.0.named(n).ok_or_else(|| ParseError::new(format!("unknown name '{n}' in {}", self.0), at))
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a + b
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        -a
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a * b
    }
    fn div(&self, a: &FieldElement, b: &FieldElement, at: usize) -> Result<FieldElement, ParseError> {
        a.checked_div(b).map_err(|e| field_err(e, at))
    }
    fn one(&self) -> FieldElement {
        self.0.one()
    }
}

/// An element of `field`, written with integers, `/` and generator names
/// (`rho`, `t1`, `t2`, ...).
pub fn parse_element(field: &Field, s: &str) -> Result<FieldElement, ParseError> {
    ElementTarget(field).eval(&parse_expr(s)?)
}

/// Commutative polynomials in named variables with coefficients in a field.
struct MPolyTarget<'a> {
    field: &'a Field,
    vars: &'a [String],
}

impl Target for MPolyTarget<'_> {
    type V = MPoly<FieldElement>;
    fn int(&self, n: &BigInt) -> Self::V {
        MPoly::constant(self.vars.len(), self.field.from_bigint(n))
    }
    fn name(&self, n: &str, at: usize) -> Result<Self::V, ParseError> {
        if let Some(i) = self.vars.iter().position(|v| v == n) {
            return Ok(MPoly::var(self.vars.len(), i, &self.field.zero()));
        }
        Ok(MPoly::constant(self.vars.len(), ElementTarget(self.field).name(n, at)?))
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a.add(b)
    }
    fn neg(&self, a: &Self::V) -> Self::V {
        a.neg()
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a.mul(b)
    }
    fn div(&self, a: &Self::V, b: &Self::V, at: usize) -> Result<Self::V, ParseError> {
        let c = constant_of(b).ok_or_else(|| ParseError::new("can only divide by a constant", at))?;
        Ok(a.scale(&c.inverse().map_err(|e| field_err(e, at))?))
    }
    fn one(&self) -> Self::V {
        MPoly::constant(self.vars.len(), self.field.one())
    }
}

fn constant_of(p: &MPoly<FieldElement>) -> Option<FieldElement> {
    match p.total_degree() {
        None => Some(p.witness().clone()),
        Some(0) => Some(p.coeff(&vec![0; p.nvars()])),
        _ => None,
    }
}

/// A polynomial in `vars` over `field`.
pub fn parse_mpoly(field: &Field, vars: &[String], s: &str) -> Result<MPoly<FieldElement>, ParseError> {
    MPolyTarget { field, vars }.eval(&parse_expr(s)?)
}

/// A univariate polynomial in `var` over `field`.
pub fn parse_poly(field: &Field, var: &str, s: &str) -> Result<Poly<FieldElement>, ParseError> {
    let vars = [var.to_string()];
    let p = parse_mpoly(field, &vars, s)?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let coeffs = (0..=deg).map(|k| p.coeff(&[k as u32])).collect();
    Ok(Poly::new(coeffs, &field.zero()))
}

/// `QQ | GF(p)` followed by any number of `.ext(poly in T)` and `.rho`.
pub fn parse_field(s: &str) -> Result<Field, ParseError> {
    let s = s.trim();
    let (mut field, mut rest, mut at) = if let Some(r) = s.strip_prefix("QQ") {
        (Field::rationals(), r, 2)
    } else if let Some(r) = s.strip_prefix("GF(") {
        let close = r.find(')').ok_or_else(|| ParseError::new("missing ')'", s.len()))?;
        let p: u64 = r[..close].trim().parse().map_err(|_| ParseError::new("bad prime", 3))?;
        let field = Field::prime(p).map_err(|e| field_err(e, 3))?;
        (field, &r[close + 1..], close + 4)
    } else {
        return Err(ParseError::new("field must start with QQ or GF(p)", 0));
    };
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix(".rho") {
            field = field.adjoin_rho().map_err(|e| field_err(e, at))?;
            rest = r;
            at += 4;
        } else if let Some(r) = rest.strip_prefix(".ext(") {
            let close = matching_paren(r).ok_or_else(|| ParseError::new("missing ')'", at))?;
            let body = &r[..close];
            let poly = parse_poly(&field, "T", body).map_err(|e| ParseError::new(e.message, at + 5 + e.offset))?;
            field = field.extend(poly.coeffs()).map_err(|e| field_err(e, at))?;
            rest = &r[close + 1..];
            at += close + 6;
        } else {
            return Err(ParseError::new(format!("unexpected '{rest}'"), at));
        }
    }
    Ok(field)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

/// Reads `Phi = Z^d - f1 Z^{d-1} - ... - fd` in `Z` and `X, Y` (or
/// `X1, ..., Xn`). Other names must be field generators.
pub fn parse_phi(field: &Field, s: &str) -> Result<GeneralPresentation, ParseError> {
    let expr = parse_expr(s)?;
    let mut names = Vec::new();
    expr.names(&mut names);
    let free: Vec<&String> = names.iter().filter(|n| *n != "Z" && field.named(n).is_none()).collect();
    let mut vars: Vec<String> = if free.iter().all(|n| *n == "X" || *n == "Y") {
        vec!["X".into(), "Y".into()]
    } else if free.iter().all(|n| n.strip_prefix('X').is_some_and(|d| d.parse::<usize>().is_ok_and(|k| k > 0))) {
        let n = free.iter().map(|v| v[1..].parse::<usize>().expect("checked")).max().unwrap_or(1);
        (1..=n).map(|i| format!("X{i}")).collect()
    } else {
        let bad = free
            .iter()
            .find(|n| !matches!(n.as_str(), "X" | "Y") && !n.starts_with('X'))
            .unwrap_or(&free[0]);
        return Err(ParseError::new(format!("unknown name '{bad}'; use Z with X, Y or X1..Xn"), 0));
    };
    vars.insert(0, "Z".into());
    let n = vars.len() - 1;
    let p = MPolyTarget { field, vars: &vars }.eval(&expr)?;
    let d = p.total_degree().ok_or_else(|| ParseError::new("Phi is zero", 0))?;
    if !p.is_homogeneous(d) {
        return Err(ParseError::new("Phi must be homogeneous", 0));
    }
    let mut lead = vec![0; n + 1];
    lead[0] = d;
    if p.coeff(&lead) != field.one() {
        return Err(ParseError::new("Phi must be monic in Z", 0));
    }
    let z = field.zero();
    let mut f = vec![MPoly::zero(n, &z); d as usize];
    for (e, c) in p.terms() {
        if e[0] == d {
            continue;
        }
        let k = (d - e[0]) as usize;
        f[k - 1].add_term(e[1..].to_vec(), -c);
    }
    GeneralPresentation::new(field, d as usize, n, f).map_err(|e| ParseError::new(e.to_string(), 0))
}

/// Noncommutative polynomials over an alphabet, with named elements from
/// `env`.
struct NCTarget<'a> {
    free: FreeAlgebra,
    alphabet: &'a Alphabet,
    field: &'a Field,
    env: &'a BTreeMap<String, NCPoly>,
}

impl Target for NCTarget<'_> {
    type V = NCPoly;
    fn int(&self, n: &BigInt) -> NCPoly {
        NCPoly::constant(self.alphabet, &self.field.from_bigint(n))
    }
    fn name(&self, n: &str, at: usize) -> Result<NCPoly, ParseError> {
        if let Some(p) = self.env.get(n) {
            return Ok(p.clone());
        }
        if self.alphabet.index(n).is_some() {
            return Ok(NCPoly::generator(self.alphabet, self.field, n));
        }
        Ok(NCPoly::constant(self.alphabet, &ElementTarget(self.field).name(n, at)?))
    }
    fn call(&self, n: &str, args: &[Expr], at: usize) -> Result<NCPoly, ParseError> {
        match n {
            "comm" => {
                let (a, b, k) = match args {
                    [a, b] => (a, b, 1),
                    [a, b, Expr::Num(k)] => {
                        (a, b, usize::try_from(k).map_err(|_| ParseError::new("depth too large", at))?)
                    }
                    _ => return Err(ParseError::new("comm takes (m, n) or (m, n, k) with k an integer", at)),
                };
                iterated_commutator(&self.free, &self.eval(a)?, &self.eval(b)?, k)
                    .map_err(|e| ParseError::new(e.to_string(), at))
            }
            "star" => {
                let mut flat = Vec::new();
                for a in args {
                    flatten_product(a, &mut flat);
                }
                let mut factors = Vec::with_capacity(flat.len());
                for a in flat {
                    let (inner, k) = match a {
                        Expr::Pow(inner, k) => (inner.as_ref(), *k),
                        other => (other, 1),
                    };
                    factors.push((self.eval(inner)?, k));
                }
                star_product_in(&self.free, &factors).map_err(|e| ParseError::new(e.to_string(), at))
            }
            _ => Err(ParseError::new(format!("unknown function '{n}'"), at)),
        }
    }
    fn add(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.add(b)
    }
    fn neg(&self, a: &NCPoly) -> NCPoly {
        a.neg()
    }
    fn mul(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        a.mul(b)
    }
    fn div(&self, a: &NCPoly, b: &NCPoly, at: usize) -> Result<NCPoly, ParseError> {
        let c = b.as_constant().ok_or_else(|| ParseError::new("can only divide by a constant", at))?;
        Ok(a.scale(&c.inverse().map_err(|e| field_err(e, at))?))
    }
    fn one(&self) -> NCPoly {
        NCPoly::constant(self.alphabet, &self.field.one())
    }
}

fn flatten_product<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Mul(a, b) => {
            flatten_product(a, out);
            flatten_product(b, out);
        }
        other => out.push(other),
    }
}

/// Juxtaposition and `*` multiply; `star(x^2 * y)` or `star(x^2, y)` is a
/// star product and `comm(m, n, k)` the `k`-fold iterated commutator.
pub fn parse_ncpoly(
    alphabet: &Alphabet,
    field: &Field,
    env: &BTreeMap<String, NCPoly>,
    s: &str,
) -> Result<NCPoly, ParseError> {
    let free = FreeAlgebra::new(alphabet.clone(), field.clone());
    NCTarget { free, alphabet, field, env }.eval(&parse_expr(s)?)
}

/// `{"field": "...", "matrices": [[[entry, ...], ...], ...]}` where entries
/// are element strings or integers. `field` overrides the document's field.
pub fn parse_matrix_rep(json: &str, field: Option<&Field>) -> Result<MatrixRep, ParseError> {
    let v: serde_json::Value =
        serde_json::from_str(json).map_err(|e| ParseError::new(format!("invalid JSON: {e}"), e.column()))?;
    let field = match (field, v.get("field").and_then(|f| f.as_str())) {
        (Some(f), _) => f.clone(),
        (None, Some(s)) => parse_field(s)?,
        (None, None) => return Err(ParseError::new("no field given", 0)),
    };
    let mats = v
        .get("matrices")
        .or(Some(&v))
        .and_then(|m| m.as_array())
        .ok_or_else(|| ParseError::new("expected a list of matrices", 0))?;
    let mut out = Vec::with_capacity(mats.len());
    for (mi, m) in mats.iter().enumerate() {
        let rows = m.as_array().ok_or_else(|| ParseError::new(format!("matrix {mi} is not a list of rows"), 0))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_array().ok_or_else(|| ParseError::new(format!("matrix {mi} has a row that is not a list"), 0))?;
            let mut row = Vec::with_capacity(r.len());
            for x in r {
                let text = match x {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    other => return Err(ParseError::new(format!("bad matrix entry {other}"), 0)),
                };
                row.push(parse_element(&field, &text)?);
            }
            parsed.push(row);
        }
        out.push(Matrix::from_rows(parsed).map_err(|e| ParseError::new(format!("matrix {mi}: {e}"), 0))?);
    }
    MatrixRep::new(&field, out).map_err(|e| ParseError::new(e.to_string(), 0))
}
