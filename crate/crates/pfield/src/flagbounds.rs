//! Denominator bounds for elements `h = prod (u - a_i) / prod (u - b_j)` and
//! flags `x y f(h)` that admit no polynomial presentation.

use crate::arith::upoly::UPoly;
use crate::arith::{FactoredFlag, Field, Mode, RatFunc2, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::poisson::PoissonField;

/// `h = prod (u - a_i) / prod (u - b_j)`, with `b_0` listed first.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedElement {
    pub u: RatFunc2,
    pub a_roots: Vec<Scalar>,
    pub b_roots: Vec<Scalar>,
}

impl BoundedElement {
    pub fn new(u: RatFunc2, a_roots: Vec<Scalar>, b_roots: Vec<Scalar>) -> Result<Self> {
        if b_roots.is_empty() {
            return Err(Error::InvalidInput("at least one denominator shift is required".into()));
        }
        let all: Vec<&Scalar> = a_roots.iter().chain(&b_roots).collect();
        for i in 0..all.len() {
            if all[i + 1..].contains(&all[i]) {
                return Err(Error::InvalidInput("shifts must be distinct".into()));
            }
        }
        Ok(BoundedElement { u, a_roots, b_roots })
    }

    /// Read a univariate `h(x)` with monic numerator and denominator that split over Q.
    /// The shift `0` is taken as `b_0` when it is a pole.
    pub fn from_univariate(h: &RatFunc2, mode: Mode) -> Result<Self> {
        let (n, d) = h.as_unirat_x().ok_or_else(|| Error::InvalidInput("h must depend on x only".into()))?;
        if !n.lc().is_one() || !d.lc().is_one() {
            return Err(Error::InvalidInput("h must be a quotient of monic polynomials".into()));
        }
        let a = split_roots(&n, mode)?;
        let mut b = split_roots(&d, mode)?;
        if let Some(i) = b.iter().position(|r| r.is_zero()) {
            b.swap(0, i);
        }
        Self::new(RatFunc2::x(), a, b)
    }

    /// `w = |b| - 1`.
    pub fn w(&self) -> i64 {
        self.b_roots.len() as i64 - 1
    }

    pub fn expand(&self) -> RatFunc2 {
        let lin = |r: &Scalar| &self.u - &RatFunc2::constant(r.clone());
        let num = self.a_roots.iter().fold(RatFunc2::one(), |acc, r| &acc * &lin(r));
        let den = self.b_roots.iter().fold(RatFunc2::one(), |acc, r| &acc * &lin(r));
        &num / &den
    }
}

fn split_roots(p: &UniPoly, mode: Mode) -> Result<Vec<Scalar>> {
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    if mode != Mode::Q {
        return Err(Error::RootsUnavailable);
    }
    let q: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    let q = UPoly::from_coeffs(q.ok_or(Error::RootsUnavailable)?);
    let roots = q.rational_roots();
    if roots.iter().any(|r| r.1 > 1) {
        return Err(Error::InvalidInput("repeated shift".into()));
    }
    if roots.len() != q.degree().unwrap_or(0) {
        return Err(Error::RootsUnavailable);
    }
    Ok(roots.into_iter().map(|r| Scalar::Q(r.0)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bounds {
    pub dpb_lower: i64,
    pub ddb_exact: Option<i64>,
    pub dpb_exact: Option<i64>,
    pub fdb_exact: Option<i64>,
    /// `h` written in the frame `(1/(u - b_0), y)`, when that frame applies.
    pub framed: Option<RatFunc2>,
}

/// Lower bound `dpb >= w`, exact values when `u - b_0 = x + c` and `w + 1 >= w'`.
pub fn bounds_certified(h: &BoundedElement) -> Bounds {
    let w = h.w();
    let mut out = Bounds { dpb_lower: w, ddb_exact: None, dpb_exact: None, fdb_exact: None, framed: None };
    let shift = &h.u - &RatFunc2::constant(h.b_roots[0].clone());
    let Some(p) = shift.as_poly().and_then(|p| p.as_upoly_x()) else { return out };
    if p.degree() != Some(1) || !p.lc().is_one() || h.a_roots.len() as i64 > w + 1 {
        return out;
    }
    // x = 1/s - c, with s = 1/(u - b_0)
    let c = RatFunc2::constant(p.coeff(0));
    let sub = &(&RatFunc2::one() / &RatFunc2::x()) - &c;
    let Ok(framed) = h.expand().substitute(&sub, &RatFunc2::y()) else { return out };
    let den_deg = framed.den().total_degree().unwrap_or(0) as i64;
    if framed.den().deg_y().unwrap_or(0) > 0 || den_deg != w {
        return out;
    }
    out.ddb_exact = Some(w);
    out.dpb_exact = Some(w);
    out.fdb_exact = Some(1);
    out.framed = Some(framed);
    out
}

/// Data showing that `K{x y f(h)}` has no polynomial flag.
#[derive(Clone, Debug, PartialEq)]
pub struct InfiniteFlagCertificate {
    pub h: BoundedElement,
    pub f_poly: UniPoly,
    pub flag: RatFunc2,
    /// No Poisson morphism into `K{g}` when the denominator of g has fewer than this many prime divisors.
    pub w_threshold: i64,
    /// `h` lies in the cap of nonnegative elements for every `d`-valuation with `d < deg f`.
    pub gamma_degree: usize,
}

impl InfiniteFlagCertificate {
    /// The denominator of `g` has too few prime divisors for a morphism to exist.
    pub fn excludes(&self, dpb_upper: i64) -> bool {
        dpb_upper < self.w_threshold
    }

    pub fn field(&self, mode: Mode) -> Result<PoissonField> {
        let mut k = PoissonField::new(self.flag.clone(), mode)?;
        k.certificate = Some(Box::new(self.clone()));
        Ok(k)
    }
}

/// `x y f(h)` with `deg f >= 2` and `w >= 1`.
pub fn build_infinite_flag(h: &BoundedElement, f_poly: &UniPoly) -> Result<InfiniteFlagCertificate> {
    let deg = f_poly.degree().unwrap_or(0);
    if deg < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let hv = h.expand();
    if hv.is_constant() {
        return Err(Error::ConstantH);
    }
    let w = h.w();
    if w < 1 {
        return Err(Error::InvalidInput("certificate needs at least two denominator shifts".into()));
    }
    let fh = f_poly.coeffs().iter().rev().fold(RatFunc2::zero(), |acc, c| &(&acc * &hv) + &RatFunc2::constant(c.clone()));
    let flag = &(&RatFunc2::x() * &RatFunc2::y()) * &fh;
    Ok(InfiniteFlagCertificate { h: h.clone(), f_poly: f_poly.clone(), flag, w_threshold: w, gamma_degree: deg - 1 })
}

/// Number of distinct prime divisors of the denominator of `g`.
pub fn dpb_upper_for_flag(g: &RatFunc2, mode: Mode) -> Result<i64> {
    if g.is_polynomial() {
        return Ok(0);
    }
    if mode != Mode::Q {
        return Err(Error::UnfactoredDenominator);
    }
    let den = RatFunc2::from_poly(g.den().clone());
    let f = FactoredFlag::from_ratfunc(&den, mode).map_err(|_| Error::UnfactoredDenominator)?;
    dpb_upper_for_factored(&f)
}

/// Distinct prime divisors of a denominator supplied as a product of linear forms.
pub fn dpb_upper_for_factored(den: &FactoredFlag) -> Result<i64> {
    Ok(den.all_factors()?.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse;

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn h1() -> BoundedElement {
        BoundedElement::new(RatFunc2::x(), vec![q(1)], vec![q(0), q(2)]).unwrap()
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_certified(&h1());
        assert_eq!((b.dpb_lower, b.ddb_exact, b.dpb_exact, b.fdb_exact), (1, Some(1), Some(1), Some(1)));
        let inv = BoundedElement::new(RatFunc2::x(), vec![], vec![q(0)]).unwrap();
        let b = bounds_certified(&inv);
        assert_eq!((b.ddb_exact, b.dpb_exact), (Some(0), Some(0)));
        assert_eq!(b.framed, Some(RatFunc2::x()));
        let xy = &RatFunc2::x() * &RatFunc2::y();
        let b = bounds_certified(&BoundedElement::new(xy, vec![q(1)], vec![q(0), q(2)]).unwrap());
        assert_eq!((b.dpb_lower, b.ddb_exact), (1, None));
    }

    #[test]
    fn framed_form_matches_claim() {
        let b = bounds_certified(&h1());
        let f = b.framed.unwrap();
        assert_eq!(f.den().total_degree(), Some(1));
        assert_eq!(f, parse("x*(1-x)/(1-2*x)", Mode::Q).unwrap());
    }

    #[test]
    fn from_univariate_reads_shifts() {
        let h = parse("(x-1)/(x*(x-2))", Mode::Q).unwrap();
        let b = BoundedElement::from_univariate(&h, Mode::Q).unwrap();
        assert_eq!(b, h1());
        assert_eq!(b.expand(), h);
    }

    #[test]
    fn infinite_flag_examples() {
        let t2 = UniPoly::monomial(q(1), 2);
        let c = build_infinite_flag(&h1(), &t2).unwrap();
        assert_eq!(c.flag, parse("x*y*(x-1)^2/(x^2*(x-2)^2)", Mode::Q).unwrap());
        assert_eq!(c.w_threshold, 1);
        assert!(c.excludes(0));
        let h2 = BoundedElement::new(RatFunc2::x(), vec![q(1)], vec![q(0), q(2), q(3)]).unwrap();
        let c = build_infinite_flag(&h2, &UniPoly::monomial(q(1), 3)).unwrap();
        assert_eq!(c.w_threshold, 2);
        assert!(c.excludes(1) && !c.excludes(2));
        let hx = BoundedElement::new(RatFunc2::x(), vec![], vec![q(0)]).unwrap();
        assert!(build_infinite_flag(&hx, &t2).is_err());
        assert_eq!(build_infinite_flag(&h1(), &UniPoly::x()), Err(Error::DegreeTooSmall));
        let hc = BoundedElement::new(RatFunc2::int(5), vec![q(1)], vec![q(0), q(2)]).unwrap();
        assert_eq!(build_infinite_flag(&hc, &t2), Err(Error::ConstantH));
    }

    #[test]
    fn denominator_primes() {
        assert_eq!(dpb_upper_for_flag(&parse("x^3*y", Mode::Q).unwrap(), Mode::Q), Ok(0));
        let g = parse("y/(x^3-2*x^2)", Mode::Q).unwrap();
        assert_eq!(dpb_upper_for_flag(&g, Mode::Q), Ok(2));
        let g = parse("y/(x^3-2*x^2)", Mode::Qt).unwrap();
        assert_eq!(dpb_upper_for_flag(&g, Mode::Qt), Err(Error::UnfactoredDenominator));
        let den = FactoredFlag::parse("x^2*(x-2)", Mode::Qt).unwrap();
        assert_eq!(dpb_upper_for_factored(&den), Ok(2));
    }
}
