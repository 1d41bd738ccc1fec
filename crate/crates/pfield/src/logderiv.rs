//! Logarithmic derivatives of products of powers of linear factors, and
//! the inverse problem `1/f = s'/s` for split `f`.

use std::fmt;

use crate::arith::upoly::UPoly;
use crate::arith::{Field, Mode, Scalar, UniPoly};
use crate::error::{Error, Result};

/// `scale * prod (t - a_i)^z_i` with distinct roots and nonzero exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerProduct {
    pub scale: Scalar,
    pub factors: Vec<(Scalar, i64)>,
}

/// `gamma * prod (t - a_i)` with distinct roots.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPoly {
    pub gamma: Scalar,
    pub roots: Vec<Scalar>,
}

/// Reduced univariate rational function with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct UniRat {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl UniRat {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(UniRat { num, den: UniPoly::one() });
        }
        let g = UPoly::gcd(&num, &den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let l = den.lc().finv();
        Ok(UniRat { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn add(&self, o: &UniRat) -> UniRat {
        UniRat::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn mul(&self, o: &UniRat) -> UniRat {
        UniRat::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn derivative(&self) -> UniRat {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        UniRat::new(n, self.den.mul(&self.den)).unwrap()
    }

    /// `s'/s`.
    pub fn log_derivative(&self) -> Result<UniRat> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        UniRat::new(n, self.num.mul(&self.den))
    }

    /// Residue `N(a)/D'(a)` at a simple pole `a`.
    pub fn residue_at(&self, a: &Scalar) -> Scalar {
        self.num.eval(a).fdiv(&self.den.derivative().eval(a))
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

fn linear(a: &Scalar) -> UniPoly {
    UniPoly::from_coeffs(vec![a.fneg(), Scalar::one()])
}

impl PowerProduct {
    pub fn expand(&self) -> UniRat {
        let mut num = UniPoly::constant(self.scale.clone());
        let mut den = UniPoly::one();
        for (a, z) in &self.factors {
            let p = linear(a).pow(z.unsigned_abs() as u32);
            if *z > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        UniRat::new(num, den).unwrap()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let mut parts = Vec::new();
        if !self.scale.is_one() || self.factors.is_empty() {
            parts.push(self.scale.to_string());
        }
        for (a, z) in &self.factors {
            let base = if a.is_zero() { var.to_string() } else { format!("({})", linear(a).fmt_var(var)) };
            parts.push(if *z == 1 { base } else { format!("{base}^{z}") });
        }
        parts.join("*")
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl SplitPoly {
    pub fn new(gamma: Scalar, roots: Vec<Scalar>) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::InvalidInput("gamma must be nonzero".into()));
        }
        for i in 0..roots.len() {
            if roots[i + 1..].contains(&roots[i]) {
                return Err(Error::InvalidInput("roots must be distinct".into()));
            }
        }
        Ok(SplitPoly { gamma, roots })
    }

    pub fn expand(&self) -> UniPoly {
        UniPoly::from_roots(&self.roots).scale(&self.gamma)
    }

    /// Split a squarefree polynomial over Q by rational-root extraction.
    pub fn from_unipoly(p: &UniPoly, mode: Mode) -> Result<Self> {
        if mode != Mode::Q {
            return Err(Error::RootsUnavailable);
        }
        let q: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
        let q = UPoly::from_coeffs(q.ok_or(Error::RootsUnavailable)?);
        let roots = q.rational_roots();
        if roots.iter().any(|r| r.1 > 1) {
            return Err(Error::InvalidInput("repeated root".into()));
        }
        if roots.len() != q.degree().unwrap_or(0) {
            return Err(Error::RootsUnavailable);
        }
        SplitPoly::new(p.lc(), roots.into_iter().map(|r| Scalar::Q(r.0)).collect())
    }

    /// `z_i = gamma^-1 prod_{j != i} (a_i - a_j)^-1`.
    pub fn exponents(&self) -> Vec<Scalar> {
        let gi = self.gamma.finv();
        self.roots
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let p = self
                    .roots
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .fold(Scalar::one(), |acc, (_, b)| acc * (a - b));
                &gi / &p
            })
            .collect()
    }
}

/// Residues of `s'/s`: the pairs `(a_i, z_i)`.
pub fn logderiv_residues(s: &PowerProduct) -> Vec<(Scalar, i64)> {
    s.factors.clone()
}

/// Check that `sum z_i/(t - a_i)` equals `s'/s` exactly.
pub fn verify_residues(s: &PowerProduct, residues: &[(Scalar, i64)]) -> bool {
    let Ok(ld) = s.expand().log_derivative() else { return false };
    let sum = residues.iter().fold(UniRat::new(UniPoly::zero(), UniPoly::one()).unwrap(), |acc, (a, z)| {
        acc.add(&UniRat::new(UniPoly::constant(Scalar::int(*z)), linear(a)).unwrap())
    });
    sum == ld
}

/// Find `s = prod (t - a_i)^z_i` with `s'/s = 1/f`, if the exponents are integers.
pub fn solve_inverse_logderiv(f: &SplitPoly) -> Result<Option<PowerProduct>> {
    if f.roots.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let zs = f.exponents();
    let mut factors = Vec::new();
    for (a, z) in f.roots.iter().zip(&zs) {
        match z.as_i64() {
            Some(n) => factors.push((a.clone(), n)),
            None => return Ok(None),
        }
    }
    let s = PowerProduct { scale: Scalar::one(), factors };
    let ld = s.expand().log_derivative()?;
    let check = ld.mul(&UniRat::new(f.expand(), UniPoly::one())?);
    if !check.is_one() {
        return Err(Error::IdentityFails("s'/s * f != 1".into()));
    }
    Ok(Some(s))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Conditions {
    pub sum_zero: bool,
    pub moment_zero: bool,
    pub zs: Vec<Scalar>,
}

/// `sum z_i = 0` and `sum z_i a_i = 0` for the exponents of `f`.
pub fn necessary_conditions(f: &SplitPoly) -> Result<Conditions> {
    if f.roots.len() < 3 {
        return Err(Error::TooFewRoots);
    }
    let zs = f.exponents();
    let sum = zs.iter().fold(Scalar::zero(), |acc, z| acc + z);
    let moment = zs.iter().zip(&f.roots).fold(Scalar::zero(), |acc, (z, a)| acc + z * a);
    Ok(Conditions { sum_zero: sum.is_zero(), moment_zero: moment.is_zero(), zs })
}
