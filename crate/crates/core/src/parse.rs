//! Text syntax for tropical and classical polynomials.
//!
//! Tropical: `min(a, b)` and `oplus`/`⊕` are ⊕; `+` and `odot`/`⊙` are ⊙; `-` divides by a monomial;
//! `^k` is the k-th tropical power; `k*f` (or `kf`) with an integer literal k is also the k-th power,
//! so `min(3x, 1+2x, x, 1)` and `x^3 ⊕ 1⊙x^2 ⊕ x ⊕ 1` are the same polynomial. `inf` is ∞.
//!
//! Classical: the usual `+ - * ^` over ℚ, or over ℚ(t) when the symbol `t` is the field parameter.
//!
//! Variables are a letter followed by optional digits (`x`, `x0`, `x_12`), so `xy` reads as `x`·`y`.

use crate::classical::ClassicalPoly;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::{Ambient, ExpVec, TropPoly};
use crate::scalar::{parse_q, q, Q};
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Inf,
    Min,
    Oplus,
    Odot,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, msg: String| Error::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, n: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned { tok, line: l0, col: c0 });
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' | '−' => push(Tok::Minus, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '^' => push(Tok::Caret, 1, &mut i, &mut col),
            '⊕' => push(Tok::Oplus, 1, &mut i, &mut col),
            '⊙' => push(Tok::Odot, 1, &mut i, &mut col),
            '∞' => push(Tok::Inf, 1, &mut i, &mut col),
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                // p/q literal: digits '/' digits with no spaces
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let s: String = chars[start..i].iter().collect();
                let v = parse_q(&s).ok_or_else(|| err(l0, c0, format!("bad number `{s}`")))?;
                col += i - start;
                out.push(Spanned { tok: Tok::Num(v), line: l0, col: c0 });
            }
            c if c.is_alphabetic() => {
                let mut run = i;
                while run < chars.len() && chars[run].is_alphabetic() {
                    run += 1;
                }
                let word: String = chars[i..run].iter().collect();
                let kw = match word.as_str() {
                    "min" => Some(Tok::Min),
                    "inf" => Some(Tok::Inf),
                    "oplus" => Some(Tok::Oplus),
                    "odot" => Some(Tok::Odot),
                    _ => None,
                };
                if let Some(k) = kw {
                    out.push(Spanned { tok: k, line: l0, col: c0 });
                    col += run - i;
                    i = run;
                    continue;
                }
                // one identifier per letter: letter [_] digits*
                let mut j = i + 1;
                if j + 1 < chars.len() && chars[j] == '_' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                }
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                out.push(Spanned { tok: Tok::Ident(name), line: l0, col: c0 });
                col += j - i;
                i = j;
            }
            '_' => return Err(err(l0, c0, "stray `_`".into())),
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Num(Q),
    Inf,
    Var(String),
    Oplus(Vec<Ast>),
    Odot(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Min(Vec<Ast>),
}

#[derive(Clone, Debug)]
struct Ast {
    node: Node,
    line: usize,
    col: usize,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn mk(&self, node: Node, at: (usize, usize)) -> Ast {
        Ast { node, line: at.0, col: at.1 }
    }

    fn expr(&mut self) -> Result<Ast> {
        let at = self.here();
        let first = self.sum()?;
        if *self.peek() != Tok::Oplus {
            return Ok(first);
        }
        let mut items = vec![first];
        while *self.peek() == Tok::Oplus {
            self.bump();
            items.push(self.sum()?);
        }
        Ok(self.mk(Node::Oplus(items), at))
    }

    fn sum(&mut self) -> Result<Ast> {
        let at = self.here();
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Plus | Tok::Odot => {
                    self.bump();
                    let r = self.unary()?;
                    acc = self.mk(Node::Odot(Box::new(acc), Box::new(r)), at);
                }
                Tok::Minus => {
                    self.bump();
                    let r = self.unary()?;
                    acc = self.mk(Node::Div(Box::new(acc), Box::new(r)), at);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        let at = self.here();
        if *self.peek() == Tok::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(self.mk(Node::Neg(Box::new(inner)), at));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Ast> {
        let at = self.here();
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let r = self.power()?;
                    acc = self.mk(Node::Mul(Box::new(acc), Box::new(r)), at);
                }
                Tok::Ident(_) | Tok::LParen | Tok::Min => {
                    let r = self.power()?;
                    acc = self.mk(Node::Mul(Box::new(acc), Box::new(r)), at);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let at = self.here();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        if *self.peek() == Tok::LParen {
            self.bump();
            let neg2 = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let k = self.integer()?;
            if *self.peek() != Tok::RParen {
                return self.error("expected `)` after exponent");
            }
            self.bump();
            let k = if neg ^ neg2 { -k } else { k };
            return Ok(self.mk(Node::Pow(Box::new(base), k), at));
        }
        let k = self.integer()?;
        Ok(self.mk(Node::Pow(Box::new(base), if neg { -k } else { k }), at))
    }

    fn integer(&mut self) -> Result<i64> {
        match self.peek().clone() {
            Tok::Num(v) if v.is_integer() => {
                self.bump();
                v.to_integer().to_i64().map_or_else(|| self.error("exponent too large"), Ok)
            }
            _ => self.error("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let at = self.here();
        match self.bump() {
            Tok::Num(v) => Ok(self.mk(Node::Num(v), at)),
            Tok::Inf => Ok(self.mk(Node::Inf, at)),
            Tok::Ident(s) => Ok(self.mk(Node::Var(s), at)),
            Tok::LParen => {
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::Min => {
                if *self.peek() != Tok::LParen {
                    return self.error("expected `(` after `min`");
                }
                self.bump();
                let mut items = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    items.push(self.expr()?);
                }
                if *self.peek() != Tok::RParen {
                    return self.error("expected `,` or `)` in `min(...)`");
                }
                self.bump();
                Ok(self.mk(Node::Min(items), at))
            }
            t => {
                self.pos -= usize::from(self.pos > 0 && t != Tok::End);
                self.error(format!("unexpected token {t:?}"))
            }
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input");
    }
    Ok(e)
}

fn collect_vars(a: &Ast, out: &mut Vec<String>) {
    match &a.node {
        Node::Var(s) => {
            if !out.contains(s) {
                out.push(s.clone())
            }
        }
        Node::Oplus(v) | Node::Min(v) => v.iter().for_each(|x| collect_vars(x, out)),
        Node::Odot(a, b) | Node::Div(a, b) | Node::Mul(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
        Node::Neg(a) | Node::Pow(a, _) => collect_vars(a, out),
        Node::Num(_) | Node::Inf => {}
    }
}

/// Natural ordering of variable names: letter first, then numeric suffix.
pub fn sort_var_names(v: &mut [String]) {
    fn key(s: &str) -> (String, i64) {
        let letters: String = s.chars().take_while(|c| c.is_alphabetic()).collect();
        let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        (letters, digits.parse().unwrap_or(-1))
    }
    v.sort_by_key(|a| key(a));
}

// ---------- tropical evaluation ----------

#[derive(Clone, Debug)]
enum TVal {
    Num(Q),
    Inf,
    Poly(TropPoly),
}

struct TropEval<'a> {
    names: &'a [String],
    amb: Ambient,
}

impl TropEval<'_> {
    fn err<T>(&self, a: &Ast, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: a.line, col: a.col, msg: msg.into() })
    }

    fn to_poly(&self, v: TVal) -> TropPoly {
        match v {
            TVal::Num(c) => TropPoly::constant(self.amb, c),
            TVal::Inf => TropPoly::infinity(self.amb),
            TVal::Poly(p) => p,
        }
    }

    fn odot(&self, a: TVal, b: TVal) -> TVal {
        match (a, b) {
            (TVal::Num(x), TVal::Num(y)) => TVal::Num(x + y),
            (TVal::Inf, _) | (_, TVal::Inf) => TVal::Inf,
            (a, b) => TVal::Poly(self.to_poly(a).mul(&self.to_poly(b)).unwrap()),
        }
    }

    fn power(&self, at: &Ast, v: TVal, k: i64) -> Result<TVal> {
        Ok(match v {
            TVal::Num(c) => TVal::Num(c * q(k)),
            TVal::Inf => {
                if k == 0 {
                    TVal::Num(Q::zero())
                } else {
                    TVal::Inf
                }
            }
            TVal::Poly(p) => {
                if k >= 0 {
                    TVal::Poly(p.pow(k as u32))
                } else if p.is_monomial() {
                    let (u, c) = p.terms().iter().next().unwrap();
                    TVal::Poly(TropPoly::monomial(self.amb, u.scale(k), c * q(k)))
                } else {
                    return self.err(at, "negative powers are only defined for monomials");
                }
            }
        })
    }

    fn inverse(&self, at: &Ast, v: TVal) -> Result<TVal> {
        match v {
            TVal::Num(c) => Ok(TVal::Num(-c)),
            TVal::Inf => self.err(at, "∞ has no tropical inverse"),
            TVal::Poly(p) => {
                if !p.is_monomial() {
                    return self.err(at, "only monomials can be negated or divided by");
                }
                self.power(at, TVal::Poly(p), -1)
            }
        }
    }

    fn eval(&self, a: &Ast) -> Result<TVal> {
        Ok(match &a.node {
            Node::Num(v) => TVal::Num(v.clone()),
            Node::Inf => TVal::Inf,
            Node::Var(s) => match self.names.iter().position(|n| n == s) {
                Some(i) => TVal::Poly(TropPoly::monomial(self.amb, ExpVec::unit(self.amb.nvars(), i), Q::zero())),
                None => return self.err(a, format!("unknown variable `{s}`")),
            },
            Node::Oplus(items) | Node::Min(items) => {
                let mut acc = TropPoly::infinity(self.amb);
                for it in items {
                    let p = self.to_poly(self.eval(it)?);
                    acc = acc.add(&p).or_else(|e| self.err(it, e.to_string()))?;
                }
                TVal::Poly(acc)
            }
            Node::Odot(x, y) => {
                let (u, v) = (self.eval(x)?, self.eval(y)?);
                self.odot(u, v)
            }
            Node::Div(x, y) => {
                let u = self.eval(x)?;
                let v = self.inverse(y, self.eval(y)?)?;
                self.odot(u, v)
            }
            Node::Neg(x) => self.inverse(x, self.eval(x)?)?,
            Node::Pow(x, k) => self.power(a, self.eval(x)?, *k)?,
            Node::Mul(x, y) => {
                let (u, v) = (self.eval(x)?, self.eval(y)?);
                match (u, v) {
                    (TVal::Num(m), TVal::Num(n)) => TVal::Num(m * n),
                    (TVal::Num(k), other) | (other, TVal::Num(k)) => {
                        let k = match k.is_integer().then(|| k.to_integer().to_i64()).flatten() {
                            Some(k) => k,
                            None => return self.err(a, "`k*f` needs an integer k"),
                        };
                        self.power(a, other, k)?
                    }
                    (u, v) => self.odot(u, v),
                }
            }
        })
    }
}

/// Parses a tropical polynomial in the given ambient, with named variables.
pub fn parse_trop(src: &str, names: &[String], ambient: Ambient) -> Result<TropPoly> {
    if names.len() != ambient.nvars() {
        return Err(Error::LengthMismatch { expected: ambient.nvars(), got: names.len() });
    }
    let ast = parse_ast(src)?;
    let lax = Ambient::Laurent(ambient.nvars());
    let ev = TropEval { names, amb: lax };
    let p = ev.to_poly(ev.eval(&ast)?);
    p.with_ambient(ambient).map_err(|e| Error::Parse { line: ast.line, col: ast.col, msg: e.to_string() })
}

/// Parses a tropical polynomial, inferring variables (naturally sorted) and the ambient
/// (Laurent if a negative exponent appears, affine otherwise).
pub fn parse_trop_auto(src: &str) -> Result<(TropPoly, Vec<String>)> {
    let ast = parse_ast(src)?;
    let mut names = Vec::new();
    collect_vars(&ast, &mut names);
    sort_var_names(&mut names);
    let lax = Ambient::Laurent(names.len());
    let ev = TropEval { names: &names, amb: lax };
    let p = ev.to_poly(ev.eval(&ast)?);
    let amb = if p.terms().keys().all(|u| u.is_nonneg()) {
        Ambient::Affine(names.len())
    } else {
        Ambient::Laurent(names.len())
    };
    Ok((p.with_ambient(amb)?, names))
}

// ---------- classical evaluation ----------

struct ClassEval<'a> {
    names: &'a [String],
    parameter: Option<&'a str>,
    n: usize,
}

impl ClassEval<'_> {
    fn err<T>(&self, a: &Ast, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: a.line, col: a.col, msg: msg.into() })
    }

    fn eval(&self, a: &Ast) -> Result<ClassicalPoly> {
        Ok(match &a.node {
            Node::Num(v) => ClassicalPoly::constant(self.n, FieldElem::Rat(v.clone())),
            Node::Inf => return self.err(a, "`inf` is not a classical coefficient"),
            Node::Var(s) => {
                if let Some(i) = self.names.iter().position(|n| n == s) {
                    ClassicalPoly::var(self.n, i)
                } else if self.parameter == Some(s.as_str()) {
                    ClassicalPoly::constant(self.n, FieldElem::t())
                } else {
                    return self.err(a, format!("unknown variable `{s}`"));
                }
            }
            Node::Oplus(_) | Node::Min(_) => return self.err(a, "tropical operator in a classical polynomial"),
            Node::Odot(x, y) => self.eval(x)?.add(&self.eval(y)?),
            Node::Div(x, y) => self.eval(x)?.sub(&self.eval(y)?),
            Node::Neg(x) => self.eval(x)?.neg(),
            Node::Mul(x, y) => self.eval(x)?.mul(&self.eval(y)?),
            Node::Pow(x, k) => {
                let b = self.eval(x)?;
                if *k >= 0 {
                    b.pow(*k as u32)
                } else if b.terms().len() == 1 {
                    let (u, c) = b.terms().iter().next().unwrap();
                    let inv = c.inv()?.pow((-*k) as u32);
                    ClassicalPoly::from_terms(self.n, vec![(u.scale(*k), inv)])
                } else {
                    return self.err(a, "negative powers are only defined for monomials");
                }
            }
        })
    }
}

/// Parses a classical polynomial; `parameter` names the transcendental t of ℚ(t), if any.
pub fn parse_classical(src: &str, names: &[String], parameter: Option<&str>) -> Result<ClassicalPoly> {
    let ast = parse_ast(src)?;
    let ev = ClassEval { names, parameter, n: names.len() };
    ev.eval(&ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExpVec;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn min_and_symbolic_syntax_agree() {
        let n = names(&["x"]);
        let a = parse_trop("min(3x, 1+2x, x, 1)", &n, Ambient::Affine(1)).unwrap();
        let b = parse_trop("x^3 oplus 1 odot x^2 oplus x oplus 1", &n, Ambient::Affine(1)).unwrap();
        let c = parse_trop("x^3 ⊕ 1⊙x^2 ⊕ x ⊕ 1", &n, Ambient::Affine(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.coeff(&ExpVec(vec![2])), crate::scalar::TropScalar::int(1));
    }

    #[test]
    fn juxtaposed_variables_and_fractions() {
        let n = names(&["x", "y", "z"]);
        let f = parse_trop("xy oplus xz oplus yz oplus 1/2 odot z^2", &n, Ambient::Projective(3)).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.coeff(&ExpVec(vec![0, 0, 2])), crate::scalar::TropScalar::Fin(crate::scalar::qf(1, 2)));
    }

    #[test]
    fn products_of_sums() {
        let n = names(&["x"]);
        let f = parse_trop("(x oplus 0)^2 (x oplus 1)", &n, Ambient::Affine(1)).unwrap();
        let g = parse_trop("x^3 oplus x^2 oplus x oplus 1", &n, Ambient::Affine(1)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn laurent_inference() {
        let (f, vars) = parse_trop_auto("min(-x, 2 + y)").unwrap();
        assert_eq!(vars, names(&["x", "y"]));
        assert_eq!(f.ambient(), Ambient::Laurent(2));
    }

    #[test]
    fn parse_error_positions() {
        let n = names(&["x"]);
        match parse_trop("min(x, 2 y)", &n, Ambient::Affine(1)) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 10)),
            other => panic!("{other:?}"),
        }
        match parse_trop("x oplus\n  $", &n, Ambient::Affine(1)) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classical_with_parameter() {
        let n = names(&["x0", "x"]);
        let p = parse_classical("(x - x0)*(x - t*x0)", &n, Some("t")).unwrap();
        assert_eq!(p.terms().len(), 3);
        let c = p.coeff(&ExpVec(vec![1, 1]));
        assert_eq!(c, FieldElem::one().add(&FieldElem::t()).neg());
    }
}
