//! Dense univariate polynomials over a field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::field::{Field, Rational};

/// Coefficients in ascending order, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<C> {
    c: Vec<C>,
}

impl<C: Field> UPoly<C> {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(a: C) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn monomial(a: C, k: usize) -> Self {
        let mut c = vec![C::zero(); k + 1];
        c[k] = a;
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            acc.mul(&Self::from_coeffs(vec![r.fneg(), C::one()]))
        })
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn lc(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).fadd(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).fsub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|a| a.fneg()).collect() }
    }

    pub fn scale(&self, a: &C) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        UPoly { c: self.c.iter().map(|b| b.fmul(a)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].fadd(&a.fmul(b));
            }
        }
        Self::from_coeffs(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = d.lc().finv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].fmul(&inv);
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].fsub(&coef.fmul(b));
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().finv())
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.fmul(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.c.iter().rev().fold(C::zero(), |acc, a| acc.fmul(x).fadd(a))
    }

    /// `self(q)`.
    pub fn compose(&self, q: &Self) -> Self {
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(q).add(&Self::constant(a.clone())))
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::from_coeffs(self.c.iter().map(f).collect())
    }

    /// Squarefree part (monic), characteristic zero.
    pub fn squarefree(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        let g = Self::gcd(self, &self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Monic k-th root of a monic polynomial, if one exists.
    pub fn monic_nth_root(&self, k: u32) -> Option<Self> {
        let n = self.degree()?;
        if !self.lc().is_one() || n % k as usize != 0 {
            return None;
        }
        if k == 1 {
            return Some(self.clone());
        }
        let m = n / k as usize;
        let mut r = vec![C::zero(); m + 1];
        r[m] = C::one();
        let kk = C::from_i64(k as i64);
        for i in 1..=m {
            let cur = Self::from_coeffs(r.clone()).pow(k);
            let diff = self.coeff(n - i).fsub(&cur.coeff(n - i));
            r[m - i] = diff.fdiv(&kk);
        }
        let root = Self::from_coeffs(r);
        (root.pow(k) == *self).then_some(root)
    }

    /// Format with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String
    where
        C: CoeffFmt,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut out, a, &mono);
        }
        out
    }
}

/// Sign/body split used by the printers.
pub trait CoeffFmt {
    /// (negative, absolute body, body is exactly one, body is an atom)
    fn parts(&self) -> (bool, String, bool, bool);
}

impl CoeffFmt for BigRational {
    fn parts(&self) -> (bool, String, bool, bool) {
        let a = self.abs();
        (self.is_negative(), super::field::fmt_rational(&a), Field::is_one(&a), true)
    }
}

/// Append `coef * mono` to a sum being printed.
pub fn push_term<C: CoeffFmt>(out: &mut String, a: &C, mono: &str) {
    let (neg, body, unit, _) = a.parts();
    let term = if mono.is_empty() {
        body
    } else if unit {
        mono.to_string()
    } else {
        format!("{body}*{mono}")
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&term);
}

impl UPoly<Rational> {
    /// Distinct rational roots with multiplicities, sorted ascending.
    pub fn rational_roots(&self) -> Vec<(Rational, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while Field::is_zero(&p.coeff(0)) && !p.is_zero() {
            p = UPoly::from_coeffs(p.c[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            out.push((<Rational as Field>::zero(), zero_mult));
        }
        if !p.is_constant() {
            let ints = integer_coeffs(&p.squarefree());
            let a0 = ints[0].abs();
            let an = ints[ints.len() - 1].abs();
            let mut cands = Vec::new();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    let r = BigRational::new(num.clone(), den);
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                if Field::is_zero(&p.eval(&r)) {
                    let lin = UPoly::from_coeffs(vec![-r.clone(), <Rational as Field>::one()]);
                    let mut m = 0;
                    while let Some(q) = p.div_exact(&lin) {
                        p = q;
                        m += 1;
                    }
                    out.push((r, m));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Primitive integer coefficient vector proportional to `p`.
pub fn integer_coeffs(p: &UPoly<Rational>) -> Vec<BigInt> {
    let l = p.c.iter().fold(BigInt::from(1), |acc, a| acc.lcm(a.denom()));
    let ints: Vec<BigInt> = p.c.iter().map(|a| (a * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if Zero::is_zero(&g) {
        return ints;
    }
    ints.into_iter().map(|a| a / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= *n {
        if Zero::is_zero(&(n % &d)) {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, ratio};

    fn p(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_coeffs(c.iter().map(|&a| rat(a)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 2, 0, 5, 3]);
        let b = p(&[-1, 0, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = p(&[-1, 1]);
        let a = f.mul(&p(&[2, 0, 1]));
        let b = f.mul(&p(&[3, 1]));
        assert_eq!(UPoly::gcd(&a, &b), f);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // 2 x^2 (x - 1/2)^2 (x + 3)
        let q = p(&[0, 0, 2]).mul(&UPoly::from_roots(&[ratio(1, 2), ratio(1, 2), rat(-3)]));
        let roots = q.rational_roots();
        assert_eq!(roots, vec![(rat(-3), 1), (rat(0), 2), (ratio(1, 2), 2)]);
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn nth_root_of_power() {
        let r = p(&[3, -1, 1]);
        assert_eq!(r.pow(3).monic_nth_root(3), Some(r.clone()));
        assert_eq!(r.pow(2).add(&UPoly::one()).monic_nth_root(2), None);
    }

    #[test]
    fn formatting() {
        assert_eq!(p(&[-1, 0, 1]).fmt_var("t"), "t^2 - 1");
        assert_eq!(p(&[0, -3]).fmt_var("x"), "-3*x");
        assert_eq!(UPoly::<Rational>::zero().fmt_var("x"), "0");
    }
}
