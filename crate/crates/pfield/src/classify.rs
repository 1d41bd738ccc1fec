//! Normal forms: rewrite K{f} as the Weyl field, K_q = K{q x y}, or
//! K_{1,n,0} = K{q x^(n+1) y}, with explicit and verified changes of
//! variables.
//!
//! Each rewrite is a birational step `(u', v') = fwd(u, v)` with explicit
//! inverse. The flag in the new generators is recomputed from the bracket,
//! so every intermediate flag is exact.

use std::fmt;

use num_integer::Integer;

use crate::arith::{BiPoly, FactoredFlag, Field, LinearForm, Mode, RatFunc2, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::poisson::{bracket, weyl_bracket, PoissonField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalType {
    Weyl,
    Kq(Scalar),
    K1n0 { n: u32, q: Scalar },
    UnresolvedOverField(String),
    OutsideScope,
}

impl CanonicalType {
    pub fn is_resolved(&self) -> bool {
        matches!(self, CanonicalType::Weyl | CanonicalType::Kq(_) | CanonicalType::K1n0 { .. })
    }

    /// The canonical flag in x, y.
    pub fn flag(&self) -> Option<RatFunc2> {
        match self {
            CanonicalType::Weyl => Some(RatFunc2::one()),
            CanonicalType::Kq(q) => Some(RatFunc2::monomial(q.clone(), 1, 1)),
            CanonicalType::K1n0 { n, q } => Some(RatFunc2::monomial(q.clone(), *n as i64 + 1, 1)),
            _ => None,
        }
    }

    /// Flag height of a resolved type.
    pub fn flag_height(&self) -> Option<i64> {
        match self {
            CanonicalType::Weyl => Some(0),
            CanonicalType::Kq(_) => Some(2),
            CanonicalType::K1n0 { n, .. } => Some(*n as i64 + 2),
            _ => None,
        }
    }
}

impl fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalType::Weyl => write!(f, "Weyl"),
            CanonicalType::Kq(q) => write!(f, "Kq(q={q})"),
            CanonicalType::K1n0 { n, q } => write!(f, "K1n0(n={n}, q={q})"),
            CanonicalType::UnresolvedOverField(r) => write!(f, "Unresolved({r})"),
            CanonicalType::OutsideScope => write!(f, "OutsideScope"),
        }
    }
}

/// New generators `forward = (u, v)` in x, y, and `inverse = (x, y)`
/// written in the new generators (printed with the symbols x, y).
#[derive(Clone, Debug, PartialEq)]
pub struct ChangeOfVars {
    pub forward: (RatFunc2, RatFunc2),
    pub inverse: (RatFunc2, RatFunc2),
}

impl ChangeOfVars {
    pub fn identity() -> Self {
        ChangeOfVars { forward: (RatFunc2::x(), RatFunc2::y()), inverse: (RatFunc2::x(), RatFunc2::y()) }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Follow `self` by `next` (whose maps are written in the generators of `self`).
    pub fn then(&self, next: &ChangeOfVars) -> Result<ChangeOfVars> {
        let (u, v) = &self.forward;
        let (a, b) = &next.inverse;
        Ok(ChangeOfVars {
            forward: (next.forward.0.substitute(u, v)?, next.forward.1.substitute(u, v)?),
            inverse: (self.inverse.0.substitute(a, b)?, self.inverse.1.substitute(a, b)?),
        })
    }

    /// Both compositions are the identity.
    pub fn is_inverse_pair(&self) -> bool {
        let (u, v) = &self.forward;
        let (a, b) = &self.inverse;
        let x = RatFunc2::x();
        let y = RatFunc2::y();
        let fi = (u.substitute(a, b), v.substitute(a, b));
        let iff = (a.substitute(u, v), b.substitute(u, v));
        matches!((fi, iff), ((Ok(p), Ok(q)), (Ok(r), Ok(s))) if p == x && q == y && r == x && s == y)
    }

    /// Flag of K{flag} written in the new generators.
    pub fn transport(&self, flag: &RatFunc2) -> Result<RatFunc2> {
        let (u, v) = &self.forward;
        bracket(flag, u, v).substitute(&self.inverse.0, &self.inverse.1)
    }
}

fn step(name: &str, fwd: (RatFunc2, RatFunc2), inv: (RatFunc2, RatFunc2)) -> (String, ChangeOfVars) {
    (name.to_string(), ChangeOfVars { forward: fwd, inverse: inv })
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub ctype: CanonicalType,
    pub cov: Option<ChangeOfVars>,
    pub verified: bool,
    /// Flag in the final generators (for unresolved shapes, where the rewrite stopped).
    pub final_flag: RatFunc2,
    pub steps: Vec<String>,
}

enum Move {
    Steps(Vec<(String, ChangeOfVars)>),
    Unresolved(String),
    Stuck,
}

fn x() -> RatFunc2 {
    RatFunc2::x()
}

fn y() -> RatFunc2 {
    RatFunc2::y()
}

fn cst(c: Scalar) -> RatFunc2 {
    RatFunc2::constant(c)
}

fn sqrt(c: &Scalar) -> Option<Scalar> {
    let mut r = c.nth_roots(2);
    r.sort_by_key(|s| s.is_negative());
    r.into_iter().next()
}

/// The resolved type when `flag` is already in canonical form.
fn canonical_of(flag: &RatFunc2) -> Option<CanonicalType> {
    if flag.is_one() {
        return Some(CanonicalType::Weyl);
    }
    let (c, a, b) = flag.as_monomial()?;
    if (a, b) == (1, 1) {
        return Some(CanonicalType::Kq(c));
    }
    if b == 1 && a >= 3 {
        let n = (a - 1) as u32;
        let normal = c.is_one() || (c.nth_roots(n).is_empty() && (-&c).nth_roots(n).is_empty());
        if normal {
            return Some(CanonicalType::K1n0 { n, q: c });
        }
    }
    None
}

fn swap_step() -> (String, ChangeOfVars) {
    step("swap x and y", (y(), x()), (y(), x()))
}

/// Flag seen after exchanging the generators.
fn swapped(flag: &RatFunc2) -> RatFunc2 {
    -flag.swap()
}

/// Flag in k(x) or k(y).
fn m_univariate(flag: &RatFunc2) -> Option<Move> {
    if flag.free_of_y() {
        let f = flag.clone();
        return Some(Move::Steps(vec![step("y' = y/f(x)", (x(), &y() / &f), (x(), &y() * &f))]));
    }
    if flag.free_of_x() {
        let f = flag.clone();
        return Some(Move::Steps(vec![step("x' = x/f(y)", (&x() / &f, y()), (&x() * &f, y()))]));
    }
    None
}

/// `f(x) + beta y + gamma` (and the mirrored shape).
fn m_linear_in_one(flag: &RatFunc2) -> Option<Move> {
    if let Some(beta) = flag.dy().constant_value().filter(|c| !c.is_zero()) {
        let rest = flag - &y().scale(&beta);
        let inv_y = &(&y() - &rest) / &cst(beta);
        return Some(Move::Steps(vec![step("y' = f(x) + beta*y + gamma", (x(), flag.clone()), (x(), inv_y))]));
    }
    if let Some(alpha) = flag.dx().constant_value().filter(|c| !c.is_zero()) {
        let rest = flag - &x().scale(&alpha);
        let inv_x = &(&x() - &rest) / &cst(alpha);
        return Some(Move::Steps(vec![step("x' = alpha*x + g(y) + gamma", (flag.clone(), y()), (inv_x, y()))]));
    }
    None
}

/// `x f(y) + g(y)` with f a polynomial of degree at most two.
fn m_affine_in_x(flag: &RatFunc2) -> Option<Move> {
    let f = flag.dx();
    if f.is_zero() || !f.free_of_x() {
        return None;
    }
    let fy = f.as_upoly_y()?;
    let deg = fy.degree()?;
    if deg == 0 || deg > 2 {
        return None;
    }
    let g = flag - &(&x() * &f);
    if !g.is_zero() {
        let inv = &(&x() - &g) / &f;
        return Some(Move::Steps(vec![step("x' = x f(y) + g(y)", (flag.clone(), y()), (inv, y()))]));
    }
    if deg == 1 {
        let (r, q) = (fy.coeff(0), fy.coeff(1));
        let inv = &(&y() - &cst(r)) / &cst(q);
        return Some(Move::Steps(vec![step("y' = q y + r", (x(), f.clone()), (x(), inv))]));
    }
    let (gamma, beta, alpha) = (fy.coeff(0), fy.coeff(1), fy.coeff(2));
    if !beta.is_zero() {
        let s = &beta / &(&alpha * &Scalar::int(2));
        return Some(Move::Steps(vec![step(
            "y' = y + beta/(2 alpha)",
            (x(), &y() + &cst(s.clone())),
            (x(), &y() - &cst(s)),
        )]));
    }
    if gamma.is_zero() {
        return Some(Move::Steps(vec![step("(1/y, x)", (&RatFunc2::one() / &y(), x()), (y(), &RatFunc2::one() / &x()))]));
    }
    let gc = cst(gamma.clone());
    Some(Move::Steps(vec![step(
        "(gamma' x, x y)",
        (&gc * &x(), &x() * &y()),
        (&x() / &gc, &(&gc * &y()) / &x()),
    )]))
}

/// `x^2 f(y) + x g(y) + h(y)` where `f h - g^2/4` is a polynomial of degree at most two.
fn m_quadratic_in_x(flag: &RatFunc2) -> Option<Move> {
    let d2 = flag.dx().dx();
    if d2.is_zero() || !d2.free_of_x() {
        return None;
    }
    let f = &d2 / &RatFunc2::int(2);
    let g = (flag - &(&(&x() * &x()) * &f)).dx();
    if !g.free_of_x() {
        return None;
    }
    let h = &(flag - &(&(&x() * &x()) * &f)) - &(&x() * &g);
    let four = RatFunc2::int(4);
    let hh = &(&f * &h) - &(&(&g * &g) / &four);
    let hp = if hh.is_zero() { UniPoly::zero() } else { hh.as_upoly_y()? };
    if hp.degree().unwrap_or(0) > 2 {
        return None;
    }
    if !f.is_one() {
        return Some(Move::Steps(vec![step("x' = x f(y)", (&x() * &f, y()), (&x() / &f, y()))]));
    }
    if !g.is_zero() {
        let half = &g / &RatFunc2::int(2);
        return Some(Move::Steps(vec![step("x'' = x' + g/2", (&x() + &half, y()), (&x() - &half, y()))]));
    }
    // flag = x^2 + h(y); degrees below two are handled by the linear shapes.
    if hp.degree() != Some(2) {
        return None;
    }
    let (gamma, beta, alpha) = (hp.coeff(0), hp.coeff(1), hp.coeff(2));
    if !beta.is_zero() {
        let s = &beta / &(&alpha * &Scalar::int(2));
        return Some(Move::Steps(vec![step(
            "y' = y + beta/(2 alpha)",
            (x(), &y() + &cst(s.clone())),
            (x(), &y() - &cst(s)),
        )]));
    }
    let Some(zeta) = sqrt(&-&alpha) else {
        return Some(Move::Unresolved(format!("needs a square root of {}", -&alpha)));
    };
    let z = cst(zeta.clone());
    let two = RatFunc2::int(2);
    let mut steps = vec![step(
        "x* = x - zeta y, y* = x + zeta y",
        (&x() - &(&z * &y()), &x() + &(&z * &y())),
        (&(&x() + &y()) / &two, &(&y() - &x()) / &(&two * &z)),
    )];
    if !gamma.is_zero() {
        let gy = &cst(gamma) / &y();
        steps.push(step("x** = x* + gamma'/y*", (&x() + &gy, y()), (&x() - &gy, y())));
    }
    Some(Move::Steps(steps))
}

/// Split a polynomial as `F(x) G(y)` with G monic.
pub fn separate(p: &BiPoly) -> Option<(UniPoly, UniPoly)> {
    let rows = p.to_ypoly();
    let a = rows.last()?.clone();
    let g = p.div_exact(&BiPoly::from_upoly_x(&a))?;
    let gy = g.as_upoly_y()?;
    Some((a, gy))
}

fn rational_root(p: &UniPoly) -> Option<Scalar> {
    let q: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    let q = crate::arith::UPoly::from_coeffs(q?);
    q.rational_roots().into_iter().next().map(|r| Scalar::Q(r.0))
}

/// `F(x) G(y)` with G quadratic: reduce to `p(x) x y` or to the Weyl field.
fn m_times_quadratic(flag: &RatFunc2) -> Option<Move> {
    let p = flag.as_poly()?;
    let (fx, gy) = separate(p)?;
    if gy.degree()? != 2 || fx.degree()? < 2 {
        return None;
    }
    let (b0, b1) = (gy.coeff(0), gy.coeff(1));
    let disc = &(&b1 * &b1) - &(&b0 * &Scalar::int(4));
    if disc.is_zero() {
        let a = &b1 / &Scalar::int(2);
        let w = &RatFunc2::one() / &(&y() + &cst(a.clone()));
        let inv = &(&RatFunc2::one() / &y()) - &cst(a);
        return Some(Move::Steps(vec![step("y' = 1/(y + a)", (x(), w), (x(), inv))]));
    }
    let Some(sd) = sqrt(&disc) else {
        return Some(Move::Unresolved(format!("needs a square root of {disc}")));
    };
    let two = Scalar::int(2);
    let r1 = &(&-&b1 + &sd) / &two;
    let r2 = &(&-&b1 - &sd) / &two;
    let mut steps = Vec::new();
    if !r1.is_zero() {
        steps.push(step("y' = y - r1", (x(), &y() - &cst(r1.clone())), (x(), &y() + &cst(r1.clone()))));
    }
    // now G = y (y - b) with b = r2 - r1
    let b = &r2 - &r1;
    let v = &RatFunc2::one() - &(&cst(b.clone()) / &y());
    let inv = &cst(b) / &(&RatFunc2::one() - &y());
    steps.push(step("y' = (y - b)/y", (x(), v), (x(), inv)));
    if fx.eval(&Scalar::zero()).is_zero() {
        return Some(Move::Steps(steps));
    }
    match rational_root(&fx) {
        Some(rho) => {
            steps.push(step("x' = x - rho", (&x() - &cst(rho.clone()), y()), (&x() + &cst(rho), y())));
            Some(Move::Steps(steps))
        }
        None => Some(Move::Steps(steps)),
    }
}

/// Homogeneous polynomial flags with few distinct linear factors.
fn m_homogeneous(flag: &RatFunc2, mode: Mode) -> Option<Move> {
    let p = flag.as_poly()?;
    if !p.is_homogeneous() || p.total_degree()? < 2 {
        return None;
    }
    let ff = FactoredFlag::from_ratfunc(flag, mode).ok()?;
    let forms = ff.all_factors().ok()?;
    let distinct = forms.len();
    let deg = ff.degree();
    let to_pair = |l1: &LinearForm, l2: &LinearForm| {
        let det = l1.det(l2);
        let di = det.finv();
        // inverse of (u, v) = (a1 x + b1 y, a2 x + b2 y)
        let xi = &(&x().scale(&l2.b) - &y().scale(&l1.b)).scale(&di) + &RatFunc2::zero();
        let yi = (&y().scale(&l1.a) - &x().scale(&l2.a)).scale(&di);
        step("(l1, l2) -> (x, y)", (l1.to_ratfunc(), l2.to_ratfunc()), (xi, yi))
    };
    match distinct {
        1 => {
            let l = &forms[0].0;
            let other = if l.a.is_zero() { LinearForm::x() } else { LinearForm::y() };
            Some(Move::Steps(vec![to_pair(l, &other)]))
        }
        2 if (forms[0].0.clone(), forms[1].0.clone()) != (LinearForm::x(), LinearForm::y()) => {
            Some(Move::Steps(vec![to_pair(&forms[0].0, &forms[1].0)]))
        }
        3 if deg == 3 => {
            let mut steps = Vec::new();
            if (forms[0].0.clone(), forms[1].0.clone()) != (LinearForm::x(), LinearForm::y()) {
                steps.push(to_pair(&forms[0].0, &forms[1].0));
            }
            let ix = &RatFunc2::one() / &x();
            let iy = &RatFunc2::one() / &y();
            steps.push(step("(1/x, 1/y)", (ix.clone(), iy.clone()), (ix, iy)));
            Some(Move::Steps(steps))
        }
        _ => None,
    }
}

/// `c (x - a)^k`: the center `a`.
fn power_center(p: &UniPoly) -> Option<Scalar> {
    let k = p.degree()?;
    if k == 0 {
        return None;
    }
    let a = -&(&p.coeff(k - 1) / &(&p.lc() * &Scalar::int(k as i64)));
    let lin = UniPoly::from_coeffs(vec![-&a, Scalar::one()]);
    (lin.pow(k as u32).scale(&p.lc()) == *p).then_some(a)
}

/// `c (x - a)^k (y - b)^l` with `(a, b) != (0, 0)`: move the center to the origin.
fn m_translate(flag: &RatFunc2) -> Option<Move> {
    let (fx, gy) = separate(flag.as_poly()?)?;
    let a = if fx.degree()? == 0 { Scalar::zero() } else { power_center(&fx)? };
    let b = if gy.degree()? == 0 { Scalar::zero() } else { power_center(&gy)? };
    if a.is_zero() && b.is_zero() {
        return None;
    }
    let (ca, cb) = (cst(a), cst(b));
    Some(Move::Steps(vec![step(
        "x' = x - a, y' = y - b",
        (&x() - &ca, &y() - &cb),
        (&x() + &ca, &y() + &cb),
    )]))
}

/// `gcd`-reduction of a monomial flag `q x^(1+k1) y^(1+k2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Family1 {
    pub ctype: CanonicalType,
    /// Rows `(a, b)`, `(c, d)`: new generators `x^a y^b`, `x^c y^d`.
    pub unimodular: [[i64; 2]; 2],
}

/// Reduce `q x^(1+k1) y^(1+k2)` to exponent `(1 + k0, 1)` with `k0 = gcd(k1, k2)`.
pub fn canonicalize_family1(q: &Scalar, k1: i64, k2: i64) -> Family1 {
    if (k1, k2) == (0, 0) {
        return Family1 { ctype: CanonicalType::Kq(q.clone()), unimodular: [[1, 0], [0, 1]] };
    }
    let k0 = k1.gcd(&k2);
    let (a, b) = (k1 / k0, k2 / k0);
    let e = a.extended_gcd(&b);
    let (c, d) = (-e.y * e.gcd, e.x * e.gcd);
    debug_assert_eq!(a * d - b * c, 1);
    let ctype = match k0 {
        1 => CanonicalType::Weyl,
        n => {
            let n = n as u32;
            let q = if !q.nth_roots(n).is_empty() || !(-q).nth_roots(n).is_empty() { Scalar::one() } else { q.clone() };
            CanonicalType::K1n0 { n, q }
        }
    };
    Family1 { ctype, unimodular: [[a, b], [c, d]] }
}

fn m_monomial(flag: &RatFunc2) -> Option<Move> {
    let (q, i, j) = flag.as_monomial()?;
    let (k1, k2) = (i - 1, j - 1);
    if (k1, k2) == (0, 0) {
        return None;
    }
    let fam = canonicalize_family1(&q, k1, k2);
    let [[a, b], [c, d]] = fam.unimodular;
    let k0 = k1.gcd(&k2);
    if [[a, b], [c, d]] != [[1, 0], [0, 1]] {
        let mono = |e1: i64, e2: i64| RatFunc2::monomial(Scalar::one(), e1, e2);
        return Some(Move::Steps(vec![step(
            "monomial change (x^a y^b, x^c y^d)",
            (mono(a, b), mono(c, d)),
            (mono(d, -b), mono(-c, a)),
        )]));
    }
    if k0 == 1 {
        let ix = &RatFunc2::one() / &x();
        return Some(Move::Steps(vec![step("x' = 1/x", (ix.clone(), y()), (ix, y()))]));
    }
    let n = k0 as u32;
    if let Some(alpha) = q.nth_roots(n).into_iter().next() {
        let al = cst(alpha);
        return Some(Move::Steps(vec![step("x' = alpha x", (&al * &x(), y()), (&x() / &al, y()))]));
    }
    if !(-&q).nth_roots(n).is_empty() {
        let iy = &RatFunc2::one() / &y();
        return Some(Move::Steps(vec![step("y' = 1/y", (x(), iy.clone()), (x(), iy))]));
    }
    None
}

fn next_move(flag: &RatFunc2, mode: Mode) -> Move {
    if let Some(m) = m_univariate(flag) {
        return m;
    }
    if let Some(m) = m_linear_in_one(flag) {
        return m;
    }
    type Matcher = fn(&RatFunc2) -> Option<Move>;
    let both: [Matcher; 2] = [m_affine_in_x, m_quadratic_in_x];
    for m in both {
        if let Some(mv) = m(flag) {
            return mv;
        }
        if m(&swapped(flag)).is_some() {
            return Move::Steps(vec![swap_step()]);
        }
    }
    if let Some(m) = m_homogeneous(flag, mode) {
        return m;
    }
    if let Some(m) = m_times_quadratic(flag) {
        return m;
    }
    if m_times_quadratic(&swapped(flag)).is_some() {
        return Move::Steps(vec![swap_step()]);
    }
    if let Some(m) = m_translate(flag) {
        return m;
    }
    if let Some(m) = m_monomial(flag) {
        return m;
    }
    Move::Stuck
}

const MAX_STEPS: usize = 32;

/// Rewrite the flag of `K` into canonical form.
pub fn classify_flag(k: &PoissonField) -> Classification {
    classify_raw(&k.flag, k.mode)
}

pub fn classify_raw(flag0: &RatFunc2, mode: Mode) -> Classification {
    let mut flag = flag0.clone();
    let mut cov = ChangeOfVars::identity();
    let mut names = Vec::new();
    let done = |ctype: CanonicalType, cov: ChangeOfVars, flag: RatFunc2, names: Vec<String>| {
        let verified = verify_classification(flag0, &ctype, &cov);
        Classification { ctype, cov: Some(cov), verified, final_flag: flag, steps: names }
    };
    for _ in 0..MAX_STEPS {
        if let Some(t) = canonical_of(&flag) {
            return done(t, cov, flag, names);
        }
        match next_move(&flag, mode) {
            Move::Steps(steps) => {
                for (name, s) in steps {
                    let (Ok(nf), Ok(nc)) = (s.transport(&flag), cov.then(&s)) else {
                        return Classification {
                            ctype: CanonicalType::OutsideScope,
                            cov: Some(cov),
                            verified: false,
                            final_flag: flag,
                            steps: names,
                        };
                    };
                    flag = nf;
                    cov = nc;
                    names.push(name);
                }
            }
            Move::Unresolved(reason) => {
                return Classification {
                    ctype: CanonicalType::UnresolvedOverField(reason),
                    cov: Some(cov),
                    verified: false,
                    final_flag: flag,
                    steps: names,
                };
            }
            Move::Stuck => break,
        }
    }
    Classification { ctype: CanonicalType::OutsideScope, cov: Some(cov), verified: false, final_flag: flag, steps: names }
}

/// `{u, v}` in K{flag} equals the canonical flag evaluated at `(u, v)`, and
/// the change of variables is invertible.
pub fn verify_classification(flag: &RatFunc2, ctype: &CanonicalType, cov: &ChangeOfVars) -> bool {
    let Some(canon) = ctype.flag() else { return false };
    let (u, v) = &cov.forward;
    let Ok(rhs) = canon.substitute(u, v) else { return false };
    bracket(flag, u, v) == rhs && cov.is_inverse_pair()
}

/// Isomorphism of resolved canonical types.
pub fn iso_decide_canonical(t1: &CanonicalType, t2: &CanonicalType) -> Result<bool> {
    if !t1.is_resolved() || !t2.is_resolved() {
        return Err(Error::UnresolvedInput(format!("{t1} / {t2}")));
    }
    Ok(match (t1, t2) {
        (CanonicalType::Weyl, CanonicalType::Weyl) => true,
        (CanonicalType::Kq(a), CanonicalType::Kq(b)) => a == b || *a == -b,
        (CanonicalType::K1n0 { n: a, .. }, CanonicalType::K1n0 { n: b, .. }) => a == b,
        _ => false,
    })
}

/// Known families outside the canonical list.
#[derive(Clone, Debug)]
pub enum Recognized {
    Canonical(Classification),
    /// `p(x) x y` with `deg p >= 2`, reached through `cov`.
    Family2 { p: UniPoly, cov: ChangeOfVars, flag: RatFunc2 },
    /// Product of `x + xi_i` and `y + chi_j`, `m, n >= 3`.
    Family4 { coeff: Scalar, xi: Vec<Scalar>, chi: Vec<Scalar>, flag: FactoredFlag },
    Flabby(FactoredFlag),
}

/// `c x p(x) y` (possibly after exchanging x and y) with `deg p >= 2`.
pub fn family2_shape(flag: &RatFunc2) -> Option<UniPoly> {
    let p = flag.as_poly()?;
    let (fx, gy) = separate(p)?;
    if gy != UniPoly::x() || !fx.coeff(0).is_zero() || fx.degree()? < 3 {
        return None;
    }
    Some(UniPoly::from_coeffs(fx.coeffs()[1..].to_vec()))
}

/// Family-4 data when every factor is `x + xi` or `y + chi`.
pub fn family4_data(f: &FactoredFlag) -> Option<(Scalar, Vec<Scalar>, Vec<Scalar>)> {
    let forms = f.all_factors().ok()?;
    let mut xi = Vec::new();
    let mut chi = Vec::new();
    for (l, m) in &forms {
        if *m != 1 {
            return None;
        }
        if l.b.is_zero() {
            xi.push(l.c.clone());
        } else if l.a.is_zero() {
            chi.push(l.c.clone());
        } else {
            return None;
        }
    }
    (xi.len() >= 3 && chi.len() >= 3).then_some((f.coeff.clone(), xi, chi))
}

pub fn recognize(k: &PoissonField) -> Result<Recognized> {
    let c = classify_flag(k);
    if c.ctype.is_resolved() && c.verified {
        return Ok(Recognized::Canonical(c));
    }
    if let Some(ff) = k.factored_flag() {
        if let Some((coeff, xi, chi)) = family4_data(&ff) {
            return Ok(Recognized::Family4 { coeff, xi, chi, flag: ff });
        }
        if crate::valuation::is_flabby(&ff).map(|r| r.flabby).unwrap_or(false) {
            return Ok(Recognized::Flabby(ff));
        }
    }
    if let Some(p) = family2_shape(&k.flag) {
        return Ok(Recognized::Family2 { p, cov: ChangeOfVars::identity(), flag: k.flag.clone() });
    }
    if let Some(p) = family2_shape(&swapped(&k.flag)) {
        let (_, s) = swap_step();
        return Ok(Recognized::Family2 { p, cov: s, flag: swapped(&k.flag) });
    }
    if let (Some(cov), Some(p)) = (&c.cov, family2_shape(&c.final_flag)) {
        return Ok(Recognized::Family2 { p, cov: cov.clone(), flag: c.final_flag.clone() });
    }
    if let CanonicalType::UnresolvedOverField(r) = c.ctype {
        return Err(Error::Unsupported(format!("classification needs a field extension: {r}")));
    }
    Err(Error::Unsupported("flag is outside the recognized families".into()))
}

/// Bracket of the generators in K{flag}: used to state what a change of variables achieves.
pub fn generator_bracket(flag: &RatFunc2, cov: &ChangeOfVars) -> RatFunc2 {
    bracket(flag, &cov.forward.0, &cov.forward.1)
}

/// `{u, v}_w` for the forward pair (the Jacobian determinant).
pub fn jacobian(cov: &ChangeOfVars) -> RatFunc2 {
    weyl_bracket(&cov.forward.0, &cov.forward.1)
}
