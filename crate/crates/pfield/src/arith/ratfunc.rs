//! Reduced rational functions in x and y.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::bipoly::BiPoly;
use super::field::Field;
use super::scalar::Scalar;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// `num/den` with gcd one and the denominator's grlex leading coefficient one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc2 {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc2 {
    pub fn zero() -> Self {
        RatFunc2 { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc2 { num: BiPoly::constant(c), den: BiPoly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Scalar::int(n))
    }

    pub fn x() -> Self {
        Self::from_poly(BiPoly::x())
    }

    pub fn y() -> Self {
        Self::from_poly(BiPoly::y())
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc2 { num: p, den: BiPoly::one() }
    }

    /// `c x^i y^j` with integer exponents of either sign.
    pub fn monomial(c: Scalar, i: i64, j: i64) -> Self {
        let pos = |e: i64| e.max(0) as u32;
        let neg = |e: i64| (-e).max(0) as u32;
        RatFunc2 {
            num: BiPoly::monomial(c, pos(i), pos(j)),
            den: BiPoly::monomial(Scalar::one(), neg(i), neg(j)),
        }
    }

    pub fn from_upoly_x(p: &UPoly<Scalar>) -> Self {
        Self::from_poly(BiPoly::from_upoly_x(p))
    }

    pub fn from_upoly_y(p: &UPoly<Scalar>) -> Self {
        Self::from_poly(BiPoly::from_upoly_y(p))
    }

    /// Build and reduce `num/den`.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFunc2 { num: num.scale(&c.finv()), den: BiPoly::one() };
        }
        let g = BiPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let l = den.lc().finv();
        RatFunc2 { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&BiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some((c, i, j))` when this is `c x^i y^j`, exponents in Z.
    pub fn as_monomial(&self) -> Option<(Scalar, i64, i64)> {
        let (c, a, b) = self.num.as_monomial()?;
        let (_, p, q) = self.den.as_monomial()?;
        Some((c, a as i64 - p as i64, b as i64 - q as i64))
    }

    /// True when y does not occur.
    pub fn free_of_y(&self) -> bool {
        self.num.deg_y().unwrap_or(0) == 0 && self.den.deg_y().unwrap_or(0) == 0
    }

    /// True when x does not occur.
    pub fn free_of_x(&self) -> bool {
        self.num.deg_x().unwrap_or(0) == 0 && self.den.deg_x().unwrap_or(0) == 0
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc2 { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.recip().expect("negative power of zero").pow(-k);
        }
        let k = k as u32;
        RatFunc2 { num: self.num.pow(k), den: self.den.pow(k) }
    }

    pub fn dx(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.dx());
        }
        let n = &(&self.num.dx() * &self.den) - &(&self.num * &self.den.dx());
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn dy(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.dy());
        }
        let n = &(&self.num.dy() * &self.den) - &(&self.num * &self.den.dy());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Exchange x and y.
    pub fn swap(&self) -> Self {
        Self::reduce(self.num.swap(), self.den.swap())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::reduce(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    /// Replace x by `sx` and y by `sy`.
    pub fn substitute(&self, sx: &RatFunc2, sy: &RatFunc2) -> Result<Self> {
        let dx = self.num.deg_x().unwrap_or(0).max(self.den.deg_x().unwrap_or(0));
        let dy = self.num.deg_y().unwrap_or(0).max(self.den.deg_y().unwrap_or(0));
        let pw = |b: &BiPoly, n: u32| -> Vec<BiPoly> {
            let mut v = vec![BiPoly::one()];
            for i in 0..n {
                let next = &v[i as usize] * b;
                v.push(next);
            }
            v
        };
        let xn = pw(&sx.num, dx);
        let xd = pw(&sx.den, dx);
        let yn = pw(&sy.num, dy);
        let yd = pw(&sy.den, dy);
        let hom = |p: &BiPoly| -> BiPoly {
            let mut acc = BiPoly::zero();
            for ((i, j), c) in p.terms() {
                let t = &(&xn[*i as usize] * &xd[(dx - i) as usize]) * &(&yn[*j as usize] * &yd[(dy - j) as usize]);
                acc = &acc + &t.scale(c);
            }
            acc
        };
        let n = hom(&self.num);
        let d = hom(&self.den);
        if d.is_zero() {
            return Err(Error::IndeterminateResult);
        }
        Ok(Self::reduce(n, d))
    }

    /// Value at scalar point `(a, b)`.
    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(a, b);
        if d.is_zero() {
            return Err(Error::IndeterminateResult);
        }
        Ok(self.num.eval(a, b) / d)
    }

    /// Univariate view in x: numerator and denominator polynomials.
    pub fn as_unirat_x(&self) -> Option<(UPoly<Scalar>, UPoly<Scalar>)> {
        Some((self.num.as_upoly_x()?, self.den.as_upoly_x()?))
    }

    /// Univariate view in y.
    pub fn as_unirat_y(&self) -> Option<(UPoly<Scalar>, UPoly<Scalar>)> {
        Some((self.num.as_upoly_y()?, self.den.as_upoly_y()?))
    }

    /// Univariate polynomial in x, if this is one.
    pub fn as_upoly_x(&self) -> Option<UPoly<Scalar>> {
        self.as_poly()?.as_upoly_x()
    }

    /// Univariate polynomial in y, if this is one.
    pub fn as_upoly_y(&self) -> Option<UPoly<Scalar>> {
        self.as_poly()?.as_upoly_y()
    }
}

impl From<BiPoly> for RatFunc2 {
    fn from(p: BiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Scalar> for RatFunc2 {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl Add<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn add(self, o: &RatFunc2) -> RatFunc2 {
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc2::from_poly(&self.num + &o.num);
            }
            return RatFunc2::reduce(&self.num + &o.num, self.den.clone());
        }
        if o.den.is_one() {
            return RatFunc2::reduce(&self.num + &(&o.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc2::reduce(&(&self.num * &o.den) + &o.num, o.den.clone());
        }
        let g = BiPoly::gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let n = &(&self.num * &d2) + &(&o.num * &d1);
        RatFunc2::reduce(n, &d1 * &o.den)
    }
}

impl Sub<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, o: &RatFunc2) -> RatFunc2 {
        self + &(-o)
    }
}

impl Mul<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, o: &RatFunc2) -> RatFunc2 {
        if self.is_zero() || o.is_zero() {
            return RatFunc2::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc2::from_poly(&self.num * &o.num);
        }
        let g1 = BiPoly::gcd(&self.num, &o.den);
        let g2 = BiPoly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let l = den.lc().finv();
        RatFunc2 { num: num.scale(&l), den: den.scale(&l) }
    }
}

impl Div<&RatFunc2> for &RatFunc2 {
    type Output = RatFunc2;
    /// Panics on division by zero; see `checked_div`.
    fn div(self, o: &RatFunc2) -> RatFunc2 {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc2> for RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, o: RatFunc2) -> RatFunc2 {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFunc2> for RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, o: &RatFunc2) -> RatFunc2 {
                (&self).$m(o)
            }
        }
        impl $tr<RatFunc2> for &RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, o: RatFunc2) -> RatFunc2 {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::print::print_canonical(self))
    }
}
