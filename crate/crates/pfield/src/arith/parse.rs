//! Recursive-descent parser for rational expressions in x, y (and t).
//!
//! Grammar:
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?
//! atom  := integer | ident | '(' expr ')'
//! int   := '-'? digits | '(' '-'? digits ')'
//! ```
//! Multiplication is always written explicitly.

use num_bigint::BigInt;

use super::ratfunc::RatFunc2;
use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().unwrap()), start));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(ch) {
            toks.push((Tok::Sym(ch), i));
            i += 1;
        } else {
            return Err(Error::SyntaxError { pos: i, msg: format!("unexpected character '{ch}'") });
        }
    }
    toks.push((Tok::End, chars.len()));
    Ok(Lexer { toks })
}

struct Parser {
    lex: Lexer,
    at: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.lex.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.lex.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.at].0.clone();
        if self.at + 1 < self.lex.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Num(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    return self.err("expected operator ('*' is required for products)");
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = *self.peek() == Tok::Sym('(');
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Sym('-');
        if neg {
            self.bump();
        }
        let pos = self.pos();
        let Tok::Num(n) = self.peek().clone() else {
            return self.err("expected integer exponent");
        };
        self.bump();
        let v: i64 = i64::try_from(&n)
            .ok()
            .filter(|v| *v <= MAX_EXPONENT)
            .ok_or(Error::SyntaxError { pos, msg: "exponent too large".into() })?;
        if paren {
            if *self.peek() != Tok::Sym(')') {
                return self.err("expected ')'");
            }
            self.bump();
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var('x')),
                "y" => Ok(Expr::Var('y')),
                "t" if self.mode == Mode::Qt => Ok(Expr::Var('t')),
                _ => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(Error::SyntaxError { pos, msg: "unexpected end of input".into() }),
            Tok::Sym(c) => Err(Error::SyntaxError { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

/// Parse to an expression tree without evaluating.
pub fn parse_expr(src: &str, mode: Mode) -> Result<Expr> {
    let lex = lex(src)?;
    let mut p = Parser { lex, at: 0, mode };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self) -> Result<RatFunc2> {
        Ok(match self {
            Expr::Num(n) => RatFunc2::constant(Scalar::from_bigint(n.clone())),
            Expr::Var('x') => RatFunc2::x(),
            Expr::Var('y') => RatFunc2::y(),
            Expr::Var(_) => RatFunc2::constant(Scalar::t()),
            Expr::Neg(a) => -a.eval()?,
            Expr::Add(a, b) => a.eval()? + b.eval()?,
            Expr::Sub(a, b) => a.eval()? - b.eval()?,
            Expr::Mul(a, b) => a.eval()? * b.eval()?,
            Expr::Div(a, b) => a.eval()?.checked_div(&b.eval()?)?,
            Expr::Pow(a, e) => {
                let base = a.eval()?;
                if *e < 0 && base.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                base.pow(*e)
            }
        })
    }
}

/// Parse and evaluate a rational function of x and y.
pub fn parse(src: &str, mode: Mode) -> Result<RatFunc2> {
    parse_expr(src, mode)?.eval()
}

/// Parse a scalar (an expression free of x and y; may use t).
pub fn parse_scalar(src: &str, mode: Mode) -> Result<Scalar> {
    let f = parse(src, mode)?;
    f.constant_value().ok_or_else(|| Error::InvalidInput(format!("'{src}' is not a constant")))
}

/// Parse a univariate polynomial written in t with Q(t)-free coefficients
/// from the base field (rationals).
pub fn parse_tpoly(src: &str) -> Result<super::upoly::UPoly<Scalar>> {
    let s = parse_scalar(src, Mode::Qt)?;
    let (n, d) = s.parts();
    if !d.is_one() {
        return Err(Error::InvalidInput(format!("'{src}' is not a polynomial in t")));
    }
    Ok(n.map(|c| Scalar::Q(c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Field;

    #[test]
    fn parses_basic_forms() {
        let f = parse("x^2*y - 1/2", Mode::Q).unwrap();
        let g = RatFunc2::x() * RatFunc2::x() * RatFunc2::y() - RatFunc2::constant(Scalar::ratio(1, 2));
        assert_eq!(f, g);
        assert_eq!(parse("x^-2", Mode::Q).unwrap(), RatFunc2::monomial(Scalar::one(), -2, 0));
        assert_eq!(parse("x^(-2)", Mode::Q).unwrap(), RatFunc2::monomial(Scalar::one(), -2, 0));
        assert_eq!(parse("-x^2", Mode::Q).unwrap(), RatFunc2::monomial(Scalar::int(-1), 2, 0));
    }

    #[test]
    fn requires_explicit_products() {
        assert!(matches!(parse("2x", Mode::Q), Err(Error::SyntaxError { .. })));
        assert!(matches!(parse("x (y)", Mode::Q), Err(Error::SyntaxError { pos: 2, .. })));
        assert!(matches!(parse("x*", Mode::Q), Err(Error::SyntaxError { pos: 2, .. })));
    }

    #[test]
    fn unknown_variables() {
        assert_eq!(parse("x*z", Mode::Q), Err(Error::UnknownVariable { name: "z".into(), pos: 2 }));
        assert!(matches!(parse("t*x", Mode::Q), Err(Error::UnknownVariable { .. })));
        assert!(parse("t*x", Mode::Qt).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(parse("x/(y-y)", Mode::Q), Err(Error::DivisionByZero));
        assert_eq!(parse("(x-x)^-1", Mode::Q), Err(Error::DivisionByZero));
    }
}
