//! Brackets on K{f}: the Jacobian (Weyl) bracket twisted by the flag.

use crate::arith::linalg::nullspace;
use crate::arith::{BiPoly, FactoredFlag, Field, Mode, RatFunc2, Scalar};
use crate::error::{Error, Result};
use crate::flagbounds::InfiniteFlagCertificate;

/// The field K(x, y) with `{x, y} = flag`.
#[derive(Clone, Debug)]
pub struct PoissonField {
    pub flag: RatFunc2,
    pub mode: Mode,
    pub factored: Option<FactoredFlag>,
    /// Present for flags produced by `build_infinite_flag`.
    pub certificate: Option<Box<InfiniteFlagCertificate>>,
}

impl PoissonField {
    pub fn new(flag: RatFunc2, mode: Mode) -> Result<Self> {
        if flag.is_zero() {
            return Err(Error::InvalidInput("flag must be nonzero".into()));
        }
        Ok(PoissonField { flag, mode, factored: None, certificate: None })
    }

    pub fn from_factored(f: FactoredFlag, mode: Mode) -> Result<Self> {
        let mut k = Self::new(f.expand(), mode)?;
        k.factored = Some(f);
        Ok(k)
    }

    /// Parse a flag; keeps the product structure when the input has one.
    pub fn parse(src: &str, mode: Mode) -> Result<Self> {
        let e = crate::arith::parse_expr(src, mode)?;
        let flag = e.eval()?;
        let mut k = Self::new(flag, mode)?;
        k.factored = FactoredFlag::from_expr(&e, mode).ok();
        Ok(k)
    }

    pub fn bracket(&self, g: &RatFunc2, h: &RatFunc2) -> RatFunc2 {
        bracket(&self.flag, g, h)
    }

    /// Factored form if given or recoverable over Q.
    pub fn factored_flag(&self) -> Option<FactoredFlag> {
        self.factored.clone().or_else(|| FactoredFlag::from_ratfunc(&self.flag, self.mode).ok())
    }
}

/// `g_x h_y - g_y h_x`.
pub fn weyl_bracket(g: &RatFunc2, h: &RatFunc2) -> RatFunc2 {
    if g.is_constant() || h.is_constant() {
        return RatFunc2::zero();
    }
    &(&g.dx() * &h.dy()) - &(&g.dy() * &h.dx())
}

/// `{g, h}` in K{flag}.
pub fn bracket(flag: &RatFunc2, g: &RatFunc2, h: &RatFunc2) -> RatFunc2 {
    &weyl_bracket(g, h) * flag
}

/// `{x^a y^b, x^c y^d} = (ad - bc) x^(a+c-1) y^(b+d-1) flag`.
pub fn monomial_bracket(flag: &RatFunc2, a: i64, b: i64, c: i64, d: i64) -> RatFunc2 {
    let det = a * d - b * c;
    &RatFunc2::monomial(Scalar::int(det), a + c - 1, b + d - 1) * flag
}

/// `{{a,b},c} + {{c,a},b} + {{b,c},a}`.
pub fn jacobiator(flag: &RatFunc2, a: &RatFunc2, b: &RatFunc2, c: &RatFunc2) -> RatFunc2 {
    let br = |u: &RatFunc2, v: &RatFunc2| bracket(flag, u, v);
    &(&br(&br(a, b), c) + &br(&br(c, a), b)) + &br(&br(b, c), a)
}

/// A nontrivial relation `sum c_ij g^i h^j = 0` with `i + j <= degree`,
/// found by linear algebra on coefficients.
pub fn algebraic_relation(g: &RatFunc2, h: &RatFunc2, degree: u32) -> Option<Vec<((u32, u32), Scalar)>> {
    let mut exps = Vec::new();
    for s in 0..=degree {
        for i in 0..=s {
            exps.push((i, s - i));
        }
    }
    let vals: Vec<RatFunc2> = exps.iter().map(|&(i, j)| &g.pow(i as i64) * &h.pow(j as i64)).collect();
    let mut den = BiPoly::one();
    for v in &vals {
        let gd = BiPoly::gcd(&den, v.den());
        den = &den * &v.den().div_exact(&gd).unwrap();
    }
    let nums: Vec<BiPoly> = vals.iter().map(|v| &v.num().clone() * &den.div_exact(v.den()).unwrap()).collect();
    let mut keys: Vec<(u32, u32)> = nums.iter().flat_map(|p| p.terms().map(|(e, _)| *e)).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Scalar>> = keys.iter().map(|&(a, b)| nums.iter().map(|p| p.coeff(a, b)).collect()).collect();
    let ker = nullspace(&rows, exps.len());
    let v = ker.into_iter().next()?;
    Some(exps.into_iter().zip(v).filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse;

    fn p(s: &str) -> RatFunc2 {
        parse(s, Mode::Q).unwrap()
    }

    #[test]
    fn weyl_examples() {
        assert!(weyl_bracket(&p("x"), &p("y")).is_one());
        assert_eq!(weyl_bracket(&p("x^2"), &p("y^3")), p("6*x*y^2"));
        let f = p("(y-1/y)^-1*(x*y-1/(x*y))");
        let g = p("(y-1/y)^-1*(x-1/x)");
        assert_eq!(weyl_bracket(&g, &f), &(&g * &f) / &p("x*y"));
    }

    #[test]
    fn bracket_examples() {
        let f = p("x^2+y^3");
        assert_eq!(bracket(&f, &p("x"), &p("y")), f);
        let q = p("3*x*y");
        let (a, b, c, d) = (2, -1, 1, 3);
        let lhs = bracket(&q, &RatFunc2::monomial(Scalar::one(), a, b), &RatFunc2::monomial(Scalar::one(), c, d));
        assert_eq!(lhs, RatFunc2::monomial(Scalar::int((a * d - b * c) * 3), a + c, b + d));
        assert_eq!(bracket(&p("x^3*y"), &p("x^2"), &p("y")), p("2*x^4*y"));
    }

    #[test]
    fn monomial_formula_examples() {
        let f = p("x^2+y");
        assert_eq!(monomial_bracket(&f, 1, 0, 0, 1), f);
        assert!(monomial_bracket(&p("2*x*y"), 2, 4, 1, 2).is_zero());
        // flag x^(1 + d k) y and u = x^d give {u, y} = d u^(1 + k) y
        let (d, k) = (3, 2);
        let flag = RatFunc2::monomial(Scalar::one(), 1 + d * k, 1);
        let u = RatFunc2::monomial(Scalar::one(), d, 0);
        let expect = (&u.pow(1 + k) * &p("y")).scale(&Scalar::int(d));
        assert_eq!(monomial_bracket(&flag, d, 0, 0, 1), expect);
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobiator(&p("x^2+y^3"), &p("x"), &p("y"), &p("x+y")).is_zero());
        assert!(jacobiator(&RatFunc2::zero(), &p("x"), &p("y"), &p("x*y")).is_zero());
        assert!(jacobiator(&p("(x-1)/(y+2)"), &p("x*y"), &p("x/y"), &p("x^2-y")).is_zero());
    }

    #[test]
    fn relation_implies_commuting() {
        let g = p("x+y");
        let h = p("(x+y)^2 - 3");
        let rel = algebraic_relation(&g, &h, 2).expect("relation");
        assert!(!rel.is_empty());
        assert!(bracket(&p("x*y"), &g, &h).is_zero());
        assert!(algebraic_relation(&p("x"), &p("y"), 2).is_none());
    }
}
