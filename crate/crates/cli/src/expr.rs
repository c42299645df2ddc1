//! Expressions over a path algebra.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ((['*'] | '/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | ident | ident'*' | '(' expr ')' ['*']
//! ```
//!
//! A `*` written directly after an identifier or `)` is the involution; a
//! `*` after whitespace (or anything else) is multiplication. Juxtaposition
//! also multiplies. Identifiers name vertices and edges first and field
//! variables second.

use lpa_core::field::{BaseField, Coeff, UPoly};
use lpa_core::{Algebra, AlgebraElement, Field, Scalar};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    /// `*` glued to the preceding identifier or `)`.
    Ghost,
    Times,
    Plus,
    Minus,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let cs: Vec<char> = text.chars().collect();
    let mut out: Vec<(Tok, usize)> = Vec::new();
    let mut i = 0;
    let mut glued = false;
    while i < cs.len() {
        let c = cs[i];
        let col = i + 1;
        if c.is_whitespace() {
            glued = false;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(cs[start..i].iter().collect()), col));
            glued = false;
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(cs[start..i].iter().collect()), col));
            glued = true;
            continue;
        } else {
            match c {
                '*' if glued => Tok::Ghost,
                '*' => Tok::Times,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(CliError::syntax_at(col, format!("unexpected character {c:?}"))),
            }
        };
        glued = tok == Tok::RParen;
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

/// Parsed expression, independent of the algebra it will be read in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(String),
    Ident(String, usize),
    Ghost(String, usize),
    Star(Box<Node>, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, i64, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, CliError> {
        let mut acc = if self.eat(&Tok::Minus) {
            Node::Neg(Box::new(self.term()?))
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = Node::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Node, CliError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Times) {
                acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.peek() == Some(&Tok::Slash) {
                let col = self.col();
                self.pos += 1;
                acc = Node::Div(Box::new(acc), Box::new(self.factor()?), col);
            } else if self.starts_factor() {
                acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Node, CliError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let neg = self.eat(&Tok::Minus);
        match self.peek().cloned() {
            Some(Tok::Int(d)) => {
                self.pos += 1;
                let n: i64 = d.parse().map_err(|_| CliError::syntax_at(col, "exponent too large"))?;
                Ok(Node::Pow(Box::new(base), if neg { -n } else { n }, col))
            }
            _ => Err(CliError::syntax_at(self.col(), "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Node, CliError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(d)) => {
                self.pos += 1;
                Ok(Node::Int(d))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat(&Tok::Ghost) {
                    Ok(Node::Ghost(name, col))
                } else {
                    Ok(Node::Ident(name, col))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(CliError::syntax_at(self.col(), "expected `)`"));
                }
                let star_col = self.col();
                if self.eat(&Tok::Ghost) {
                    Ok(Node::Star(Box::new(inner), star_col))
                } else {
                    Ok(inner)
                }
            }
            Some(t) => Err(CliError::syntax_at(col, format!("unexpected {}", describe(&t)))),
            None => Err(CliError::syntax_at(col, "unexpected end of input")),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(d) => format!("number {d}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Ghost | Tok::Times => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

/// Parses `text` without interpreting identifiers.
pub fn parse_node(text: &str) -> Result<Node, CliError> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end };
    let n = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CliError::syntax_at(p.col(), format!("unexpected {}", describe(&p.toks[p.pos].0))));
    }
    Ok(n)
}

fn int_in<T>(digits: &str, zero: T, ten: &T, step: impl Fn(&T, &T) -> T, add_digit: impl Fn(&T, i64) -> T) -> T {
    digits.chars().fold(zero, |acc, c| add_digit(&step(&acc, ten), c as i64 - '0' as i64))
}

fn field_int(field: &Field, digits: &str) -> Scalar {
    let ten = field.from_i64(10);
    int_in(digits, field.zero(), &ten, |a, b| field.mul(a, b), |a, d| field.add(a, &field.from_i64(d)))
}

/// Reads `text` as an element of `alg`, in normal form.
pub fn parse_expr(text: &str, alg: &Algebra) -> Result<AlgebraElement, CliError> {
    eval_algebra(&parse_node(text)?, alg)
}

fn scalar_of(x: &AlgebraElement, col: usize, what: &str) -> Result<Scalar, CliError> {
    x.as_scalar().ok_or_else(|| CliError::syntax_at(col, format!("{what} must be a scalar")))
}

fn eval_algebra(n: &Node, alg: &Algebra) -> Result<AlgebraElement, CliError> {
    let field = alg.field();
    Ok(match n {
        Node::Int(d) => alg.scalar(field_int(field, d)),
        Node::Ident(name, col) => {
            if let Ok(x) = alg.named(name) {
                x
            } else if let Ok(s) = field.variable(name) {
                alg.scalar(s)
            } else {
                return Err(CliError::syntax_at(*col, format!("unknown generator {name}")));
            }
        }
        Node::Ghost(name, col) => {
            let g = alg.graph();
            let e = g.edge(name).map_err(|_| CliError::syntax_at(*col, format!("{name}* needs an edge name")))?;
            alg.ghost(e)
        }
        Node::Star(x, _) => eval_algebra(x, alg)?.star(),
        Node::Neg(x) => eval_algebra(x, alg)?.neg(),
        Node::Add(a, b) => eval_algebra(a, alg)?.try_add(&eval_algebra(b, alg)?)?,
        Node::Sub(a, b) => eval_algebra(a, alg)?.try_sub(&eval_algebra(b, alg)?)?,
        Node::Mul(a, b) => eval_algebra(a, alg)?.try_mul(&eval_algebra(b, alg)?)?,
        Node::Div(a, b, col) => {
            let d = scalar_of(&eval_algebra(b, alg)?, *col, "a divisor")?;
            eval_algebra(a, alg)?.scale(&field.inv(&d)?)
        }
        Node::Pow(x, k, col) => {
            let x = eval_algebra(x, alg)?;
            if *k >= 0 {
                x.pow(u32::try_from(*k).map_err(|_| CliError::syntax_at(*col, "exponent too large"))?)
            } else {
                let s = scalar_of(&x, *col, "a base with negative exponent")?;
                alg.scalar(field.pow(&s, *k)?)
            }
        }
    })
}

/// Reads `text` as an element of `field`.
pub fn parse_scalar(text: &str, field: &Field) -> Result<Scalar, CliError> {
    eval_scalar(&parse_node(text)?, field)
}

fn eval_scalar(n: &Node, f: &Field) -> Result<Scalar, CliError> {
    Ok(match n {
        Node::Int(d) => field_int(f, d),
        Node::Ident(name, col) => f
            .variable(name)
            .map_err(|_| CliError::syntax_at(*col, format!("{name} is not a variable of {f}")))?,
        Node::Ghost(_, col) | Node::Star(_, col) => return Err(CliError::syntax_at(*col, "`*` has no meaning for a scalar")),
        Node::Neg(x) => f.neg(&eval_scalar(x, f)?),
        Node::Add(a, b) => f.add(&eval_scalar(a, f)?, &eval_scalar(b, f)?),
        Node::Sub(a, b) => f.sub(&eval_scalar(a, f)?, &eval_scalar(b, f)?),
        Node::Mul(a, b) => f.mul(&eval_scalar(a, f)?, &eval_scalar(b, f)?),
        Node::Div(a, b, _) => f.div(&eval_scalar(a, f)?, &eval_scalar(b, f)?)?,
        Node::Pow(x, k, _) => f.pow(&eval_scalar(x, f)?, *k)?,
    })
}

/// Reads `text` as a polynomial in `var` over `base`.
pub fn parse_upoly(text: &str, var: &str, base: &BaseField) -> Result<UPoly, CliError> {
    eval_upoly(&parse_node(text)?, var, base)
}

fn eval_upoly(n: &Node, var: &str, b: &BaseField) -> Result<UPoly, CliError> {
    let constant = |c: Coeff| UPoly::new(vec![c], b);
    Ok(match n {
        Node::Int(d) => {
            let ten = b.from_i64(10);
            constant(int_in(d, b.zero(), &ten, |x, y| b.mul(x, y), |x, d| b.add(x, &b.from_i64(d))))
        }
        Node::Ident(name, col) => {
            if name != var {
                return Err(CliError::syntax_at(*col, format!("expected the variable {var}, found {name}")));
            }
            UPoly::new(vec![b.zero(), b.one()], b)
        }
        Node::Ghost(_, col) | Node::Star(_, col) => return Err(CliError::syntax_at(*col, "`*` has no meaning in a polynomial")),
        Node::Neg(x) => eval_upoly(x, var, b)?.neg(b),
        Node::Add(x, y) => eval_upoly(x, var, b)?.add(&eval_upoly(y, var, b)?, b),
        Node::Sub(x, y) => eval_upoly(x, var, b)?.sub(&eval_upoly(y, var, b)?, b),
        Node::Mul(x, y) => eval_upoly(x, var, b)?.mul(&eval_upoly(y, var, b)?, b),
        Node::Div(x, y, col) => {
            let d = eval_upoly(y, var, b)?;
            if d.degree() != Some(0) {
                return Err(CliError::syntax_at(*col, "only division by a nonzero constant"));
            }
            eval_upoly(x, var, b)?.scale(&b.inv(&d.coeffs()[0])?, b)
        }
        Node::Pow(x, k, col) => {
            if *k < 0 {
                return Err(CliError::syntax_at(*col, "negative exponent in a polynomial"));
            }
            let x = eval_upoly(x, var, b)?;
            (0..*k).fold(constant(b.one()), |acc, _| acc.mul(&x, b))
        }
    })
}
