//! Text input for series and `Y`-polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! doc     := stmt (';'? stmt)* ';'?
//! stmt    := [name '='] expr
//! term    := factor (('*' | '/') factor)*
//! factor  := ['-'] primary ['^' exponent]
//! exponent:= integer | '(' ['-'] integer ['/' integer] ')'
//! primary := integer | 'X' | 'X' digits | 'Y' | '(' expr ')'
//! ```
//! `X` alone means `X1`. Fractional exponents are allowed on `X` variables
//! only; division only by nonzero rational constants. Names are lowercase
//! identifiers. `#` starts a comment.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::AlgNum;
use crate::series::FracSeries;
use crate::ypoly::YPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Eq,
    Semi,
    X(usize),
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer> {
        let mut toks = Vec::new();
        let mut line = 1;
        let mut col = 1;
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let adv = |n: usize, i: &mut usize, col: &mut usize| {
                *i += n;
                *col += n;
            };
            match c {
                '\n' => {
                    line += 1;
                    col = 1;
                    i += 1;
                }
                ' ' | '\t' | '\r' => adv(1, &mut i, &mut col),
                '#' => {
                    while i < chars.len() && chars[i] != '\n' {
                        i += 1;
                    }
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    col += i - start;
                    toks.push((Tok::Int(s.parse().unwrap()), l0, c0));
                }
                'X' => {
                    i += 1;
                    col += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    col += i - start;
                    let idx = if start == i {
                        1
                    } else {
                        let s: String = chars[start..i].iter().collect();
                        s.parse::<usize>().map_err(|_| syntax(l0, c0, "bad variable index"))?
                    };
                    if idx == 0 {
                        return Err(syntax(l0, c0, "variables are numbered from X1"));
                    }
                    toks.push((Tok::X(idx), l0, c0));
                }
                'a'..='z' | '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    col += i - start;
                    toks.push((Tok::Name(chars[start..i].iter().collect()), l0, c0));
                }
                '=' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Eq, l0, c0));
                }
                ';' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Semi, l0, c0));
                }
                'Y' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Y, l0, c0));
                }
                '+' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Plus, l0, c0));
                }
                '-' | '\u{2212}' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Minus, l0, c0));
                }
                '*' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Star, l0, c0));
                }
                '/' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Slash, l0, c0));
                }
                '^' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::Caret, l0, c0));
                }
                '(' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::LParen, l0, c0));
                }
                ')' => {
                    adv(1, &mut i, &mut col);
                    toks.push((Tok::RParen, l0, c0));
                }
                other => return Err(syntax(l0, c0, &format!("unexpected character {:?}", other))),
            }
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks })
    }
}

fn syntax(line: usize, col: usize, msg: &str) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.to_string(),
    }
}

/// Parsed value before the dimension is fixed: sparse map
/// `(x-exponent, y-degree) -> rational`.
type Raw = std::collections::BTreeMap<(Vec<Rational64>, usize), BigRational>;

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    dim: usize,
}

fn raw_const(c: BigRational) -> Raw {
    let mut r = Raw::new();
    if !c.is_zero() {
        r.insert((Vec::new(), 0), c);
    }
    r
}

fn pad(v: &[Rational64], n: usize) -> Vec<Rational64> {
    let mut out = v.to_vec();
    out.resize(n, Rational64::zero());
    while out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}

fn raw_add(a: &Raw, b: &Raw, sign: i32) -> Raw {
    let mut out = a.clone();
    for (k, v) in b {
        let v = if sign < 0 { -v.clone() } else { v.clone() };
        let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn raw_mul(a: &Raw, b: &Raw) -> Raw {
    let mut out = Raw::new();
    for ((ea, ya), ca) in a {
        for ((eb, yb), cb) in b {
            let n = ea.len().max(eb.len());
            let (pa, pb) = (pad(ea, n), pad(eb, n));
            let e: Vec<Rational64> = (0..n)
                .map(|i| pa.get(i).copied().unwrap_or_default() + pb.get(i).copied().unwrap_or_default())
                .collect();
            let key = (pad(&e, n), ya + yb);
            let entry = out.entry(key.clone()).or_insert_with(BigRational::zero);
            *entry += ca * cb;
            if entry.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

fn as_const(a: &Raw) -> Option<BigRational> {
    match a.len() {
        0 => Some(BigRational::zero()),
        1 => {
            let ((e, y), c) = a.iter().next().unwrap();
            (e.is_empty() && *y == 0).then(|| c.clone())
        }
        _ => None,
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn err(&self, msg: &str) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected {}", what)))
        }
    }

    fn expr(&mut self) -> Result<Raw> {
        let mut sign = 1;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                sign = -1;
            }
            _ => {}
        }
        let mut acc = raw_add(&Raw::new(), &self.term()?, sign);
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = raw_add(&acc, &self.term()?, 1);
                }
                Tok::Minus => {
                    self.bump();
                    acc = raw_add(&acc, &self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Int(_) | Tok::X(_) | Tok::Y | Tok::LParen)
    }

    fn term(&mut self) -> Result<Raw> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = raw_mul(&acc, &self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let (l, c) = self.here();
                    let d = self.factor()?;
                    let Some(k) = as_const(&d) else {
                        return Err(syntax(l, c, "division by a non-constant"));
                    };
                    if k.is_zero() {
                        return Err(syntax(l, c, "division by zero"));
                    }
                    acc = raw_mul(&acc, &raw_const(k.recip()));
                }
                _ if self.starts_factor() => {
                    return Err(self.err("expected '*' between factors"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Raw> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let f = self.factor()?;
            return Ok(raw_add(&Raw::new(), &f, -1));
        }
        let (l, c) = self.here();
        let (base, var) = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        match var {
            Some(Var::X(i)) => {
                if e < Rational64::zero() {
                    return Err(syntax(l, c, "negative exponent"));
                }
                let mut v = vec![Rational64::zero(); i];
                v[i - 1] = e;
                let mut r = Raw::new();
                if e.is_zero() {
                    r.insert((Vec::new(), 0), BigRational::one());
                } else {
                    r.insert((v, 0), BigRational::one());
                }
                Ok(r)
            }
            _ => {
                if !e.is_integer() || e < Rational64::zero() {
                    return Err(syntax(
                        l,
                        c,
                        "only X variables take fractional or negative exponents",
                    ));
                }
                let mut acc = raw_const(BigRational::one());
                for _ in 0..*e.numer() {
                    acc = raw_mul(&acc, &base);
                }
                Ok(acc)
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational64> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Int(n) => Ok(Rational64::from_integer(to_i64(&n, l, c)?)),
            Tok::LParen => {
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let num = match self.bump() {
                    Tok::Int(n) => to_i64(&n, l, c)?,
                    _ => return Err(self.err("expected an integer exponent")),
                };
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(n) => to_i64(&n, l, c)?,
                        _ => return Err(self.err("expected a denominator")),
                    }
                } else {
                    1
                };
                if den == 0 {
                    return Err(syntax(l, c, "zero denominator in exponent"));
                }
                self.expect(Tok::RParen, "')'")?;
                let r = Rational64::new(num, den);
                Ok(if neg { -r } else { r })
            }
            _ => Err(syntax(l, c, "expected an exponent")),
        }
    }

    fn primary(&mut self) -> Result<(Raw, Option<Var>)> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Int(n) => Ok((raw_const(BigRational::from_integer(n)), None)),
            Tok::X(i) => {
                self.dim = self.dim.max(i);
                let mut v = vec![Rational64::zero(); i];
                v[i - 1] = Rational64::one();
                let mut r = Raw::new();
                r.insert((v, 0), BigRational::one());
                Ok((r, Some(Var::X(i))))
            }
            Tok::Y => {
                let mut r = Raw::new();
                r.insert((Vec::new(), 1), BigRational::one());
                Ok((r, Some(Var::Y)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok((e, None))
            }
            Tok::End => Err(syntax(l, c, "unexpected end of input")),
            t => Err(syntax(l, c, &format!("unexpected token {:?}", t))),
        }
    }
}

enum Var {
    X(usize),
    Y,
}

fn to_i64(n: &BigInt, l: usize, c: usize) -> Result<i64> {
    i64::try_from(n).map_err(|_| syntax(l, c, "exponent too large"))
}

struct Stmt {
    name: Option<String>,
    raw: Raw,
    line: usize,
    col: usize,
}

fn parse_stmts(src: &str) -> Result<(Vec<Stmt>, usize)> {
    let lex = Lexer::new(src)?;
    let mut p = Parser {
        toks: lex.toks,
        pos: 0,
        dim: 0,
    };
    let mut out = Vec::new();
    loop {
        while *p.peek() == Tok::Semi {
            p.bump();
        }
        if *p.peek() == Tok::End {
            break;
        }
        let (line, col) = p.here();
        let name = if let Tok::Name(n) = p.peek().clone() {
            p.bump();
            p.expect(Tok::Eq, "'=' after a name")?;
            Some(n)
        } else {
            None
        };
        let raw = p.expr()?;
        match p.peek() {
            Tok::Semi | Tok::End | Tok::Name(_) => {}
            _ => return Err(p.err("unexpected trailing input")),
        }
        out.push(Stmt { name, raw, line, col });
    }
    if out.is_empty() {
        return Err(p.err("empty input"));
    }
    Ok((out, p.dim))
}

fn resolve_dim(found: usize, dim: Option<usize>) -> Result<usize> {
    match dim {
        Some(d) if found > d => Err(Error::Parse(format!(
            "variable X{} used but the dimension is {}",
            found, d
        ))),
        Some(d) => Ok(d),
        None => Ok(found.max(1)),
    }
}

/// Parse a polynomial in `Y`. The dimension is the largest variable index
/// unless given.
pub fn parse_ypoly(src: &str, dim: Option<usize>) -> Result<YPoly> {
    let (mut stmts, found) = parse_stmts(src)?;
    if stmts.len() != 1 {
        let s = &stmts[1];
        return Err(syntax(s.line, s.col, "expected a single polynomial"));
    }
    let d = resolve_dim(found, dim)?;
    build(stmts.pop().unwrap().raw, d)
}

/// Named polynomials sharing one dimension. Unnamed entries get `None`.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub dim: usize,
    pub polys: Vec<(Option<String>, YPoly)>,
}

impl InputDocument {
    pub fn get(&self, name: &str) -> Option<&YPoly> {
        self.polys
            .iter()
            .find(|(n, _)| n.as_deref() == Some(name))
            .map(|(_, p)| p)
    }
}

pub fn parse_document(src: &str, dim: Option<usize>) -> Result<InputDocument> {
    let (stmts, found) = parse_stmts(src)?;
    let d = resolve_dim(found, dim)?;
    let mut polys: Vec<(Option<String>, YPoly)> = Vec::with_capacity(stmts.len());
    for s in stmts {
        if let Some(n) = &s.name {
            if polys.iter().any(|(m, _)| m.as_ref() == Some(n)) {
                return Err(syntax(s.line, s.col, &format!("{} defined twice", n)));
            }
        }
        polys.push((s.name, build(s.raw, d)?));
    }
    Ok(InputDocument { dim: d, polys })
}

fn build(raw: Raw, d: usize) -> Result<YPoly> {
    let deg = raw.keys().map(|(_, y)| *y).max().unwrap_or(0);
    let mut coeffs: Vec<Vec<(ExpVec, AlgNum)>> = vec![Vec::new(); deg + 1];
    for ((e, y), c) in raw {
        coeffs[y].push((ExpVec::new(pad_to(&e, d)), AlgNum::from_rational(c)));
    }
    let series = coeffs
        .into_iter()
        .map(|ts| FracSeries::from_terms(d, ts, crate::series::Precision::Exact))
        .collect::<Result<Vec<_>>>()?;
    YPoly::new(d, series)
}

/// Parse a series (no `Y`).
pub fn parse_series(src: &str, dim: Option<usize>) -> Result<FracSeries> {
    let p = parse_ypoly(src, dim)?;
    match p.degree() {
        None => Ok(FracSeries::zero(p.dim())),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Error::Parse("expected a series without Y".into())),
    }
}

fn pad_to(v: &[Rational64], d: usize) -> Vec<Rational64> {
    let mut out = v.to_vec();
    out.resize(d, Rational64::zero());
    out
}
