//! Scalars of the base field: Q, or Q(t) with a formal parameter t.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::field::{fmt_rational, rational_nth_roots, Field, Rational};
use super::upoly::{CoeffFmt, UPoly};

/// Which base field the parser accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Q,
    Qt,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Q => write!(f, "Q"),
            Mode::Qt => write!(f, "Q(t)"),
        }
    }
}

/// An element of Q(t). Rational values always use the `Q` variant, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(Rational),
    /// Reduced `num/den`, `den` monic, not a constant.
    T(UPoly<Rational>, UPoly<Rational>),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Q(Rational::from_i64(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Q(BigRational::new(n.into(), d.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Q(BigRational::from_integer(n))
    }

    /// The parameter t.
    pub fn t() -> Self {
        Scalar::T(UPoly::x(), UPoly::one())
    }

    pub fn from_tpoly(p: UPoly<Rational>) -> Self {
        Self::from_tfrac(p, UPoly::one())
    }

    /// Reduce `num/den`. Panics if `den` is zero.
    pub fn from_tfrac(num: UPoly<Rational>, den: UPoly<Rational>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Scalar::Q(Rational::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = UPoly::gcd(&num, &den);
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = den.lc();
        let num = num.scale(&l.finv());
        let den = den.monic();
        if num.is_constant() && den.is_constant() {
            Scalar::Q(num.coeff(0))
        } else {
            Scalar::T(num, den)
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::T(..) => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Q(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Q(_))
    }

    /// Numerator and denominator as polynomials in t.
    pub fn parts(&self) -> (UPoly<Rational>, UPoly<Rational>) {
        match self {
            Scalar::Q(r) => (UPoly::constant(r.clone()), UPoly::one()),
            Scalar::T(n, d) => (n.clone(), d.clone()),
        }
    }

    /// Sign of the leading coefficient of the numerator.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::T(n, _) => n.lc().is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// All k-th roots lying in Q(t).
    pub fn nth_roots(&self, k: u32) -> Vec<Scalar> {
        match self {
            Scalar::Q(r) => rational_nth_roots(r, k).into_iter().map(Scalar::Q).collect(),
            Scalar::T(n, d) => {
                let l = n.lc();
                let (Some(rn), Some(rd)) = (n.monic().monic_nth_root(k), d.monic_nth_root(k)) else {
                    return vec![];
                };
                rational_nth_roots(&l, k)
                    .into_iter()
                    .map(|c| Scalar::from_tfrac(rn.scale(&c), rd.clone()))
                    .collect()
            }
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        self.fpowi(k)
    }

    /// Evaluate at a rational value of t (None on a pole).
    pub fn eval_t(&self, t: &Rational) -> Option<Rational> {
        let (n, d) = self.parts();
        let dv = d.eval(t);
        (!dv.is_zero()).then(|| n.eval(t) / dv)
    }
}

fn frac_op(a: &Scalar, b: &Scalar, f: impl Fn(&UPoly<Rational>, &UPoly<Rational>, &UPoly<Rational>, &UPoly<Rational>) -> (UPoly<Rational>, UPoly<Rational>)) -> Scalar {
    let (an, ad) = a.parts();
    let (bn, bd) = b.parts();
    let (n, d) = f(&an, &ad, &bn, &bd);
    Scalar::from_tfrac(n, d)
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::Q(Rational::zero())
    }
    fn one() -> Self {
        Scalar::Q(Rational::one())
    }
    fn from_i64(n: i64) -> Self {
        Scalar::int(n)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Q(r) if r.is_zero())
    }
    fn fadd(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => frac_op(self, o, |an, ad, bn, bd| {
                if ad == bd {
                    (an.add(bn), ad.clone())
                } else {
                    (an.mul(bd).add(&bn.mul(ad)), ad.mul(bd))
                }
            }),
        }
    }
    fn fsub(&self, o: &Self) -> Self {
        self.fadd(&o.fneg())
    }
    fn fmul(&self, o: &Self) -> Self {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Q(a), Scalar::T(n, d)) | (Scalar::T(n, d), Scalar::Q(a)) => {
                if a.is_zero() {
                    Self::zero()
                } else {
                    Scalar::T(n.scale(a), d.clone())
                }
            }
            _ => frac_op(self, o, |an, ad, bn, bd| (an.mul(bn), ad.mul(bd))),
        }
    }
    fn fneg(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::T(n, d) => Scalar::T(n.neg(), d.clone()),
        }
    }
    fn finv(&self) -> Self {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::T(n, d) => Scalar::from_tfrac(d.clone(), n.clone()),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Q(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}

scalar_binop!(Add, add, fadd);
scalar_binop!(Sub, sub, fsub);
scalar_binop!(Mul, mul, fmul);
scalar_binop!(Div, div, fdiv);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.fneg()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.fneg()
    }
}

impl CoeffFmt for Scalar {
    fn parts(&self) -> (bool, String, bool, bool) {
        match self {
            Scalar::Q(r) => r.parts(),
            Scalar::T(n, d) => {
                let nz: Vec<usize> = (0..n.coeffs().len()).filter(|&i| !n.coeff(i).is_zero()).collect();
                if d.is_constant() && nz.len() == 1 {
                    let e = nz[0];
                    let c = n.coeff(e);
                    let (neg, body, unit, _) = c.parts();
                    let mono = if e == 1 { "t".to_string() } else { format!("t^{e}") };
                    let b = if unit { mono } else { format!("{body}*{mono}") };
                    (neg, b, false, false)
                } else {
                    (false, format!("({self})"), false, true)
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::T(n, d) => {
                let ns = n.fmt_var("t");
                if d.is_one() {
                    return write!(f, "{ns}");
                }
                let n_terms = n.coeffs().iter().filter(|c| !c.is_zero()).count();
                let ns = if n_terms > 1 { format!("({ns})") } else { ns };
                let d_terms = d.coeffs().iter().filter(|c| !c.is_zero()).count();
                let ds = d.fmt_var("t");
                if d_terms > 1 {
                    write!(f, "{ns}/({ds})")
                } else {
                    write!(f, "{ns}/{ds}")
                }
            }
        }
    }
}
