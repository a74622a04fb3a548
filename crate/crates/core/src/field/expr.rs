//! Tiny expression language for polynomials and field elements:
//! integers, identifiers, `+ - * / ^`, parentheses and juxtaposition
//! (`2x`, `3(x+1)`). Exponents are integer literals, possibly negative.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::malformed("expression", format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::malformed("expression", format!("{msg} in `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('(')) | Some(Tok::Int(_))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let neg = if self.eat_op('-') {
                true
            } else {
                self.eat_op('+');
                false
            };
            let parens = self.eat_op('(');
            let neg = if parens && self.eat_op('-') { !neg } else { neg };
            let e = match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    i64::try_from(n).map_err(|_| self.err("exponent too large"))?
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            if parens && !self.eat_op(')') {
                return Err(self.err("expected `)`"));
            }
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or `(`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::malformed("expression", "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Operations an expression can be evaluated into.
pub trait ExprTarget {
    type Value;
    fn from_int(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: &Self::Value, e: i64) -> Result<Self::Value>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
}

/// Evaluates `e` in the context `ctx`.
pub fn eval<T: ExprTarget>(e: &Expr, ctx: &T) -> Result<T::Value> {
    Ok(match e {
        Expr::Int(n) => ctx.from_int(n)?,
        Expr::Var(v) => ctx.var(v)?,
        Expr::Neg(a) => ctx.neg(&eval(a, ctx)?),
        Expr::Add(a, b) => ctx.add(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Sub(a, b) => ctx.sub(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Mul(a, b) => ctx.mul(&eval(a, ctx)?, &eval(b, ctx)?),
        Expr::Div(a, b) => ctx.div(&eval(a, ctx)?, &eval(b, ctx)?)?,
        Expr::Pow(a, k) => ctx.pow(&eval(a, ctx)?, *k)?,
    })
}
