//! Flags given as products of linear forms and a monomial.

use std::fmt;

use super::bipoly::BiPoly;
use super::field::{Field, Rational};
use super::parse::{parse_expr, Expr};
use super::ratfunc::RatFunc2;
use super::scalar::{Mode, Scalar};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `a x + b y + c` with `(a, b) != (0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearForm {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl LinearForm {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("linear form without linear part".into()));
        }
        Ok(LinearForm { a, b, c })
    }

    pub fn x() -> Self {
        LinearForm { a: Scalar::one(), b: Scalar::zero(), c: Scalar::zero() }
    }

    pub fn y() -> Self {
        LinearForm { a: Scalar::zero(), b: Scalar::one(), c: Scalar::zero() }
    }

    /// `x + xi`.
    pub fn x_plus(xi: Scalar) -> Self {
        LinearForm { a: Scalar::one(), b: Scalar::zero(), c: xi }
    }

    /// `y + chi`.
    pub fn y_plus(chi: Scalar) -> Self {
        LinearForm { a: Scalar::zero(), b: Scalar::one(), c: chi }
    }

    /// Split off a scalar so that the first nonzero linear coefficient is one.
    pub fn normalize(&self) -> (Scalar, LinearForm) {
        let s = if self.a.is_zero() { self.b.clone() } else { self.a.clone() };
        let inv = s.finv();
        (s, LinearForm { a: &self.a * &inv, b: &self.b * &inv, c: &self.c * &inv })
    }

    /// Determinant of the linear parts.
    pub fn det(&self, o: &LinearForm) -> Scalar {
        &self.a * &o.b - &self.b * &o.a
    }

    pub fn to_bipoly(&self) -> BiPoly {
        &(&BiPoly::x().scale(&self.a) + &BiPoly::y().scale(&self.b)) + &BiPoly::constant(self.c.clone())
    }

    pub fn to_ratfunc(&self) -> RatFunc2 {
        RatFunc2::from_poly(self.to_bipoly())
    }

    fn from_bipoly(p: &BiPoly) -> Option<Self> {
        if p.total_degree()? != 1 {
            return None;
        }
        LinearForm::new(p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)).ok()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly().fmt_terms())
    }
}

/// `coeff * x^mono.0 * y^mono.1 * prod(factor^mult)`, factors distinct from
/// x and y and normalized.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredFlag {
    pub coeff: Scalar,
    pub mono: (i64, i64),
    pub factors: Vec<(LinearForm, u32)>,
}

impl FactoredFlag {
    pub fn new(coeff: Scalar, mono: (i64, i64), factors: Vec<(LinearForm, u32)>) -> Self {
        let mut f = FactoredFlag { coeff, mono, factors: Vec::new() };
        for (l, m) in factors {
            f.push(l, m as i64).expect("positive multiplicity");
        }
        f
    }

    /// Product of the given forms (x and y allowed) times `coeff`.
    pub fn from_forms(coeff: Scalar, forms: &[LinearForm]) -> Self {
        let mut f = FactoredFlag { coeff, mono: (0, 0), factors: Vec::new() };
        for l in forms {
            f.push(l.clone(), 1).unwrap();
        }
        f
    }

    fn push(&mut self, l: LinearForm, m: i64) -> Result<()> {
        let (s, l) = l.normalize();
        self.coeff = &self.coeff * &s.pow(m);
        if l == LinearForm::x() {
            self.mono.0 += m;
            return Ok(());
        }
        if l == LinearForm::y() {
            self.mono.1 += m;
            return Ok(());
        }
        if let Some(pos) = self.factors.iter().position(|(g, _)| *g == l) {
            let nm = self.factors[pos].1 as i64 + m;
            if nm < 0 {
                return Err(Error::NotFactored("linear form in the denominator".into()));
            }
            if nm == 0 {
                self.factors.remove(pos);
            } else {
                self.factors[pos].1 = nm as u32;
            }
            return Ok(());
        }
        if m < 0 {
            return Err(Error::NotFactored("linear form in the denominator".into()));
        }
        if m > 0 {
            self.factors.push((l, m as u32));
        }
        Ok(())
    }

    pub fn expand(&self) -> RatFunc2 {
        let mut r = RatFunc2::monomial(self.coeff.clone(), self.mono.0, self.mono.1);
        for (l, m) in &self.factors {
            r = &r * &RatFunc2::from_poly(l.to_bipoly().pow(*m));
        }
        r
    }

    /// All linear factors with multiplicity, x and y included.
    pub fn all_factors(&self) -> Result<Vec<(LinearForm, u32)>> {
        if self.mono.0 < 0 || self.mono.1 < 0 {
            return Err(Error::NotFactored("negative power of x or y".into()));
        }
        let mut v = Vec::new();
        if self.mono.0 > 0 {
            v.push((LinearForm::x(), self.mono.0 as u32));
        }
        if self.mono.1 > 0 {
            v.push((LinearForm::y(), self.mono.1 as u32));
        }
        v.extend(self.factors.iter().cloned());
        Ok(v)
    }

    /// Total degree counted with multiplicity.
    pub fn degree(&self) -> i64 {
        self.mono.0 + self.mono.1 + self.factors.iter().map(|(_, m)| *m as i64).sum::<i64>()
    }

    pub fn parse(src: &str, mode: Mode) -> Result<Self> {
        let e = parse_expr(src, mode)?;
        Self::from_expr(&e, mode)
    }

    /// Read the product structure off an expression tree, splitting
    /// univariate and homogeneous leaves over Q when possible.
    pub fn from_expr(e: &Expr, mode: Mode) -> Result<Self> {
        let mut f = FactoredFlag { coeff: Scalar::one(), mono: (0, 0), factors: Vec::new() };
        match collect(e, 1, mode, &mut f) {
            Ok(()) => Ok(f),
            Err(err @ (Error::DivisionByZero | Error::SyntaxError { .. } | Error::UnknownVariable { .. })) => Err(err),
            Err(_) => Self::from_ratfunc(&e.eval()?, mode),
        }
    }

    /// Factor an expanded flag (monomial denominator only).
    pub fn from_ratfunc(g: &RatFunc2, mode: Mode) -> Result<Self> {
        let Some((dc, di, dj)) = g.den().as_monomial() else {
            return Err(Error::NotFactored("denominator is not a monomial".into()));
        };
        let mut f = FactoredFlag { coeff: dc.finv(), mono: (-(di as i64), -(dj as i64)), factors: Vec::new() };
        split_poly(g.num(), 1, mode, &mut f)?;
        Ok(f)
    }
}

fn collect(e: &Expr, k: i64, mode: Mode, f: &mut FactoredFlag) -> Result<()> {
    match e {
        Expr::Mul(a, b) => {
            collect(a, k, mode, f)?;
            collect(b, k, mode, f)
        }
        Expr::Div(a, b) => {
            collect(a, k, mode, f)?;
            collect(b, -k, mode, f)
        }
        Expr::Pow(a, m) => collect(a, k * m, mode, f),
        Expr::Neg(a) => {
            f.coeff = -&f.coeff;
            collect(a, k, mode, f)
        }
        _ => {
            let v = e.eval()?;
            if let Some(c) = v.constant_value() {
                if c.is_zero() {
                    return Err(Error::NotFactored("zero".into()));
                }
                f.coeff = &f.coeff * &c.pow(k);
                return Ok(());
            }
            let Some(p) = v.as_poly() else {
                return Err(Error::NotFactored("rational leaf".into()));
            };
            split_poly(p, k, mode, f)
        }
    }
}

fn split_poly(p: &BiPoly, k: i64, mode: Mode, f: &mut FactoredFlag) -> Result<()> {
    if p.is_zero() {
        return Err(Error::NotFactored("zero".into()));
    }
    let (i, j) = p.min_exponents();
    f.mono.0 += k * i as i64;
    f.mono.1 += k * j as i64;
    let q = p.unshift(i, j);
    if let Some(c) = q.constant_value() {
        f.coeff = &f.coeff * &c.pow(k);
        return Ok(());
    }
    if let Some(l) = LinearForm::from_bipoly(&q) {
        return f.push(l, k);
    }
    let not = || Error::NotFactored(q.fmt_terms());
    if mode != Mode::Q {
        return Err(not());
    }
    if let Some(u) = q.as_upoly_x() {
        return push_roots(&u, k, false, f).ok_or_else(not);
    }
    if let Some(u) = q.as_upoly_y() {
        return push_roots(&u, k, true, f).ok_or_else(not);
    }
    let rows = q.to_ypoly();
    let a = BiPoly::from_upoly_x(rows.last().unwrap());
    if let Some(g) = q.div_exact(&a) {
        if let Some(gy) = g.as_upoly_y() {
            let ax = a.as_upoly_x().unwrap();
            return push_roots(&ax, k, false, f)
                .and_then(|_| push_roots(&gy, k, true, f))
                .ok_or_else(not);
        }
    }
    if q.is_homogeneous() {
        let d = q.total_degree().unwrap();
        let dehom = UPoly::from_coeffs((0..=d).map(|a| q.coeff(a, d - a)).collect());
        let rq = to_rational(&dehom).ok_or_else(not)?;
        let roots = rq.rational_roots();
        if roots.iter().map(|r| r.1).sum::<u32>() as usize != rq.degree().unwrap() {
            return Err(not());
        }
        f.coeff = &f.coeff * &dehom.lc().pow(k);
        for (r, m) in roots {
            let l = LinearForm::new(Scalar::one(), Scalar::Q(-r), Scalar::zero())?;
            f.push(l, k * m as i64)?;
        }
        return Ok(());
    }
    Err(not())
}

fn to_rational(u: &UPoly<Scalar>) -> Option<UPoly<Rational>> {
    let c: Option<Vec<Rational>> = u.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    Some(UPoly::from_coeffs(c?))
}

fn push_roots(u: &UPoly<Scalar>, k: i64, in_y: bool, f: &mut FactoredFlag) -> Option<()> {
    let rq = to_rational(u)?;
    let roots = rq.rational_roots();
    if roots.iter().map(|r| r.1).sum::<u32>() as usize != rq.degree()? {
        return None;
    }
    f.coeff = &f.coeff * &u.lc().pow(k);
    for (r, m) in roots {
        let l = if in_y { LinearForm::y_plus(Scalar::Q(-r)) } else { LinearForm::x_plus(Scalar::Q(-r)) };
        f.push(l, k * m as i64).ok()?;
    }
    Some(())
}

impl fmt::Display for FactoredFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.coeff.is_one() || (self.mono == (0, 0) && self.factors.is_empty()) {
            parts.push(match self.coeff {
                Scalar::Q(_) => self.coeff.to_string(),
                Scalar::T(..) => format!("({})", self.coeff),
            });
        }
        let pw = |base: String, e: i64| if e == 1 { base } else { format!("{base}^{e}") };
        if self.mono.0 != 0 {
            parts.push(pw("x".into(), self.mono.0));
        }
        if self.mono.1 != 0 {
            parts.push(pw("y".into(), self.mono.1));
        }
        for (l, m) in &self.factors {
            parts.push(pw(format!("({l})"), *m as i64));
        }
        write!(f, "{}", parts.join("*"))
    }
}
