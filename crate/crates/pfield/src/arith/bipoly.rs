//! Sparse polynomials in x and y with Q(t) coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::scalar::Scalar;
use super::upoly::{push_term, UPoly};

/// Map from exponent pair `(i, j)` of `x^i y^j` to a nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

/// Graded lexicographic key with x > y.
fn grlex(e: &(u32, u32)) -> (u32, u32) {
    (e.0 + e.1, e.0)
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Scalar::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Scalar)>) -> Self {
        let mut p = BiPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.fadd(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some((c, i, j))` when this is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(Scalar, u32, u32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), e.0, e.1))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Smallest exponent pair dividing every term.
    pub fn min_exponents(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (a, b)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.0 + e.1);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Leading term in grlex order with x > y.
    pub fn leading(&self) -> Option<((u32, u32), &Scalar)> {
        self.terms.iter().max_by_key(|(e, _)| grlex(e)).map(|(e, c)| (*e, c))
    }

    pub fn lc(&self) -> Scalar {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Terms ordered for printing: grlex descending.
    pub fn sorted_terms(&self) -> Vec<((u32, u32), Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|t| std::cmp::Reverse(grlex(&t.0)));
        v
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(e, a)| (*e, a.fmul(c))).collect() }
    }

    /// Multiply by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, a)| ((e.0 + i, e.1 + j), a.clone())).collect() }
    }

    /// Divide by `x^i y^j`; every term must be divisible.
    pub fn unshift(&self, i: u32, j: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, a)| ((e.0 - i, e.1 - j), a.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn dx(&self) -> Self {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.0 > 0)
                .map(|(e, c)| ((e.0 - 1, e.1), c.fmul(&Scalar::int(e.0 as i64)))),
        )
    }

    pub fn dy(&self) -> Self {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.1 > 0)
                .map(|(e, c)| ((e.0, e.1 - 1), c.fmul(&Scalar::int(e.1 as i64)))),
        )
    }

    /// Exchange x and y.
    pub fn swap(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(e, c)| ((e.1, e.0), c.clone())).collect() }
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.terms
            .iter()
            .fold(Scalar::zero(), |acc, (e, c)| acc + c * x.fpow(e.0) * y.fpow(e.1))
    }

    pub fn from_upoly_x(p: &UPoly<Scalar>) -> Self {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    pub fn from_upoly_y(p: &UPoly<Scalar>) -> Self {
        BiPoly::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
    }

    /// `Some(p(x))` when no y occurs.
    pub fn as_upoly_x(&self) -> Option<UPoly<Scalar>> {
        (self.deg_y().unwrap_or(0) == 0).then(|| self.to_ypoly().into_iter().next().unwrap_or_else(UPoly::zero))
    }

    /// `Some(p(y))` when no x occurs.
    pub fn as_upoly_y(&self) -> Option<UPoly<Scalar>> {
        self.swap().as_upoly_x()
    }

    /// Coefficients of powers of y, each a polynomial in x.
    pub fn to_ypoly(&self) -> Vec<UPoly<Scalar>> {
        let Some(dy) = self.deg_y() else { return Vec::new() };
        let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); dy as usize + 1];
        for (e, c) in &self.terms {
            let col = &mut cols[e.1 as usize];
            if col.len() <= e.0 as usize {
                col.resize(e.0 as usize + 1, Scalar::zero());
            }
            col[e.0 as usize] = c.clone();
        }
        cols.into_iter().map(UPoly::from_coeffs).collect()
    }

    pub fn from_ypoly(v: &[UPoly<Scalar>]) -> Self {
        BiPoly::from_terms(v.iter().enumerate().flat_map(|(j, p)| {
            p.coeffs().iter().enumerate().map(move |(i, c)| ((i as u32, j as u32), c.clone())).collect::<Vec<_>>()
        }))
    }

    /// Make the grlex leading coefficient one.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().finv())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.finv()));
        }
        if let Some((c, i, j)) = d.as_monomial() {
            if self.terms.keys().all(|e| e.0 >= i && e.1 >= j) {
                return Some(self.unshift(i, j).scale(&c.finv()));
            }
            return None;
        }
        let dv = d.to_ypoly();
        let dn = dv.len() - 1;
        let dl = &dv[dn];
        let mut r = self.to_ypoly();
        if r.len() < dv.len() {
            return None;
        }
        let mut q = vec![UPoly::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let lead = &r[k + dn];
            if lead.is_zero() {
                continue;
            }
            let c = lead.div_exact(dl)?;
            for (j, b) in dv.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b));
            }
            q[k] = c;
        }
        r.iter().all(|p| p.is_zero()).then(|| BiPoly::from_ypoly(&q))
    }

    /// Greatest common divisor, normalized to grlex leading coefficient one.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.normalize();
        }
        if b.is_zero() {
            return a.normalize();
        }
        if a.is_constant() || b.is_constant() {
            return BiPoly::one();
        }
        if a.num_terms() == 1 || b.num_terms() == 1 {
            let (ai, aj) = a.min_exponents();
            let (bi, bj) = b.min_exponents();
            return BiPoly::monomial(Scalar::one(), ai.min(bi), aj.min(bj));
        }
        let ((ai, aj), (bi, bj)) = (a.min_exponents(), b.min_exponents());
        if ai + aj + bi + bj > 0 {
            let g = BiPoly::gcd(&a.unshift(ai, aj), &b.unshift(bi, bj));
            return g.shift(ai.min(bi), aj.min(bj));
        }
        let free_y = y_free_gcd(a, b);
        if free_y && y_free_gcd(&a.swap(), &b.swap()) {
            return BiPoly::one();
        }
        let av = a.to_ypoly();
        let bv = b.to_ypoly();
        let ca = content(&av);
        if free_y {
            return BiPoly::from_upoly_x(&UPoly::gcd(&ca, &content(&bv)));
        }
        let cb = content(&bv);
        let c = UPoly::gcd(&ca, &cb);
        let mut p = primitive(&av, &ca);
        let mut q = primitive(&bv, &cb);
        if p.len() < q.len() {
            std::mem::swap(&mut p, &mut q);
        }
        let g = loop {
            if q.len() == 1 {
                break vec![UPoly::one()];
            }
            let r = prem(&p, &q);
            if r.is_empty() {
                break q;
            }
            if r.len() == 1 {
                break vec![UPoly::one()];
            }
            let cr = content(&r);
            p = q;
            q = primitive(&r, &cr);
        };
        let g: Vec<UPoly<Scalar>> = g.iter().map(|co| co.mul(&c)).collect();
        BiPoly::from_ypoly(&g).normalize()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        BiPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Plain-text rendering, grlex descending.
    pub fn fmt_terms(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for ((i, j), c) in self.sorted_terms() {
            push_term(&mut out, &c, &mono_string(i, j));
        }
        out
    }
}

pub fn mono_string(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (i, j) {
        (0, 0) => String::new(),
        (_, 0) => part("x", i),
        (0, _) => part("y", j),
        _ => format!("{}*{}", part("x", i), part("y", j)),
    }
}

/// True when `gcd(a, b)` certainly has y-degree zero: at some `x = x0` that
/// keeps both y-leading coefficients nonzero, the specializations are coprime.
fn y_free_gcd(a: &BiPoly, b: &BiPoly) -> bool {
    let (av, bv) = (a.to_ypoly(), b.to_ypoly());
    let at = |v: &[UPoly<Scalar>], x0: &Scalar| UPoly::from_coeffs(v.iter().map(|p| p.eval(x0)).collect());
    for k in 0..8 {
        let x0 = Scalar::int(k * 3 + 2);
        if av.last().is_some_and(|p| p.eval(&x0).is_zero()) || bv.last().is_some_and(|p| p.eval(&x0).is_zero()) {
            continue;
        }
        return UPoly::gcd(&at(&av, &x0), &at(&bv, &x0)).is_constant();
    }
    false
}

/// Monic gcd of the coefficients (a polynomial in x).
fn content(v: &[UPoly<Scalar>]) -> UPoly<Scalar> {
    let mut g = UPoly::zero();
    for p in v {
        g = UPoly::gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            return UPoly::one();
        }
    }
    g
}

/// Divide out the content and scale so the leading coefficient is monic in x.
fn primitive(v: &[UPoly<Scalar>], c: &UPoly<Scalar>) -> Vec<UPoly<Scalar>> {
    let s = v.last().map(|p| p.lc().finv()).unwrap_or_else(Scalar::one);
    v.iter().map(|p| p.div_exact(c).expect("content divides").scale(&s)).collect()
}

fn trim(mut v: Vec<UPoly<Scalar>>) -> Vec<UPoly<Scalar>> {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder in y over K[x].
fn prem(a: &[UPoly<Scalar>], b: &[UPoly<Scalar>]) -> Vec<UPoly<Scalar>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        let mut next: Vec<UPoly<Scalar>> = r.iter().map(|p| p.mul(lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[j + s] = next[j + s].sub(&lr.mul(bj));
        }
        r = trim(next);
    }
    r
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.fneg());
        }
        r
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term((e1.0 + e2.0, e1.1 + e2.1), c1.fmul(c2));
            }
        }
        r
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(e, c)| (*e, c.fneg())).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: &BiPoly) -> BiPoly {
                (&self).$m(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}
