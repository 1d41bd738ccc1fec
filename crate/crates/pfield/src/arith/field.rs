//! Minimal field interface shared by rational and Q(t) coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn finv(&self) -> Self;
    fn fdiv(&self, o: &Self) -> Self {
        self.fmul(&o.finv())
    }
    fn fpow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.fmul(&base);
            }
            base = base.fmul(&base);
            e >>= 1;
        }
        acc
    }
    /// Integer power; negative exponents invert (panics on zero base).
    fn fpowi(&self, k: i64) -> Self {
        if k >= 0 {
            self.fpow(k as u32)
        } else {
            self.finv().fpow((-k) as u32)
        }
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational k-th roots of `r` (both signs for even k).
pub fn rational_nth_roots(r: &Rational, k: u32) -> Vec<Rational> {
    assert!(k >= 1);
    if Zero::is_zero(r) {
        return vec![Zero::zero()];
    }
    if k.is_multiple_of(2) && r.is_negative() {
        return vec![];
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let rn = num.nth_root(k);
    let rd = den.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) != num || num_traits::pow(rd.clone(), k as usize) != den {
        return vec![];
    }
    let root = BigRational::new(rn, rd);
    if k.is_multiple_of(2) {
        vec![root.clone(), -root]
    } else if r.is_negative() {
        vec![-root]
    } else {
        vec![root]
    }
}

/// Format a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
