//! Explicit Poisson subfields `k(u, v)` of `K{f}` and the flag they carry.

use crate::arith::{Field, RatFunc2, Scalar};
use crate::error::{Error, Result};
use crate::poisson::{bracket, weyl_bracket};

/// Constructions of a subfield together with the flag of its generators.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessKind {
    /// In the Weyl field, `k(f, y/f')` for nonconstant `f` in `k(x)`.
    WeylF { f: RatFunc2 },
    /// In the Weyl field, `k(x^a, xy)`.
    WeylPower { a: i64 },
    /// In `K_q`, `k(x^a y^b, x^c y^d)`.
    Torus { q: Scalar, a: i64, b: i64, c: i64, d: i64 },
    /// In `K{q x^(ac+1) y^(bd+1)}`, `k(x^c, y^d)`.
    MonomialPower { q: Scalar, a: i64, b: i64, c: i64, d: i64 },
    /// In `K{(q x^a - b) x y}`, `k(b x^-a - q, y)`.
    QskewSub { q: Scalar, a: i64, b: Scalar },
    /// In `K{f(x) g(y)}`, `k(p, y)` when `p' / r(p) = lambda / f`; `r` is given in x.
    Reparam { f: RatFunc2, g: RatFunc2, r: RatFunc2, p: RatFunc2, lambda: Scalar },
    /// The case `r = x^m`.
    PowerReparam { f: RatFunc2, g: RatFunc2, p: RatFunc2, lambda: Scalar, m: i64 },
    /// In `K{x (x - a1)(x - a2) y}` with `a1 / a2` rational, `k(p, y)` for the
    /// product `p = x^s0 (x - a1)^s1 (x - a2)^s2` with `s1 a1 + s2 a2 = 0`.
    CubicLog { a1: Scalar, a2: Scalar },
    /// In `K{q x^(n+1) y}`, `k(x^-n, y)`.
    WeylIn1n0 { n: u32, q: Scalar },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubfieldWitness {
    pub base_flag: RatFunc2,
    pub generators: (RatFunc2, RatFunc2),
    /// Flag in the new variables: `{u, v} = target(u, v)`.
    pub target_flag: RatFunc2,
    /// Bracket identity holds and the generators are algebraically independent.
    pub verified: bool,
}

impl SubfieldWitness {
    pub fn new(base_flag: RatFunc2, generators: (RatFunc2, RatFunc2), target_flag: RatFunc2) -> Self {
        let (u, v) = &generators;
        let independent = !weyl_bracket(u, v).is_zero();
        let holds = matches!(target_flag.substitute(u, v), Ok(t) if t == bracket(&base_flag, u, v));
        SubfieldWitness { verified: independent && holds, base_flag, generators, target_flag }
    }
}

fn mono(c: Scalar, i: i64, j: i64) -> RatFunc2 {
    RatFunc2::monomial(c, i, j)
}

fn nonzero(s: &Scalar, what: &str) -> Result<()> {
    if s.is_zero() {
        return Err(Error::InvalidInput(format!("{what} must be nonzero")));
    }
    Ok(())
}

fn x_only(f: &RatFunc2, what: &str) -> Result<()> {
    if !f.free_of_y() {
        return Err(Error::InvalidInput(format!("{what} must depend on x only")));
    }
    Ok(())
}

fn reparam(f: &RatFunc2, g: &RatFunc2, r: &RatFunc2, p: &RatFunc2, lambda: &Scalar) -> Result<SubfieldWitness> {
    x_only(f, "f")?;
    x_only(r, "r")?;
    x_only(p, "p")?;
    if !g.free_of_x() {
        return Err(Error::InvalidInput("g must depend on y only".into()));
    }
    nonzero(lambda, "lambda")?;
    if f.is_zero() || g.is_zero() || r.is_zero() || p.is_constant() {
        return Err(Error::InvalidInput("f, g, r must be nonzero and p nonconstant".into()));
    }
    let rp = r.substitute(p, &RatFunc2::y())?;
    if rp.is_zero() {
        return Err(Error::IdentityFails("r(p) vanishes".into()));
    }
    if &p.dx() * f != &rp * &RatFunc2::constant(lambda.clone()) {
        return Err(Error::IdentityFails("p' / r(p) differs from lambda / f".into()));
    }
    let target = &(r * g).scale(lambda) * &RatFunc2::one();
    Ok(SubfieldWitness::new(f * g, (p.clone(), RatFunc2::y()), target))
}

/// Build the generators and target flag for `kind`, and re-verify the bracket.
pub fn subfield_witness(kind: &WitnessKind) -> Result<SubfieldWitness> {
    let one = Scalar::one();
    let (x, y) = (RatFunc2::x(), RatFunc2::y());
    Ok(match kind {
        WitnessKind::WeylF { f } => {
            x_only(f, "f")?;
            if f.is_constant() {
                return Err(Error::InvalidInput("f must be nonconstant".into()));
            }
            SubfieldWitness::new(RatFunc2::one(), (f.clone(), &y / &f.dx()), RatFunc2::one())
        }
        WitnessKind::WeylPower { a } => {
            if *a == 0 {
                return Err(Error::InvalidInput("a must be nonzero".into()));
            }
            SubfieldWitness::new(RatFunc2::one(), (mono(one, *a, 0), &x * &y), mono(Scalar::int(*a), 1, 0))
        }
        WitnessKind::Torus { q, a, b, c, d } => {
            nonzero(q, "q")?;
            let det = a * d - b * c;
            if det == 0 {
                return Err(Error::InvalidInput("ad - bc must be nonzero".into()));
            }
            let target = mono(&Scalar::int(det) * q, 1, 1);
            SubfieldWitness::new(mono(q.clone(), 1, 1), (mono(one.clone(), *a, *b), mono(one, *c, *d)), target)
        }
        WitnessKind::MonomialPower { q, a, b, c, d } => {
            nonzero(q, "q")?;
            if *c == 0 || *d == 0 {
                return Err(Error::InvalidInput("c and d must be nonzero".into()));
            }
            let base = mono(q.clone(), a * c + 1, b * d + 1);
            let target = mono(&Scalar::int(c * d) * q, a + 1, b + 1);
            SubfieldWitness::new(base, (mono(one.clone(), *c, 0), mono(one, 0, *d)), target)
        }
        WitnessKind::QskewSub { q, a, b } => {
            nonzero(q, "q")?;
            nonzero(b, "b")?;
            if *a == 0 {
                return Err(Error::InvalidInput("a must be nonzero".into()));
            }
            let base = &(&mono(q.clone(), *a, 0) - &RatFunc2::constant(b.clone())) * &(&x * &y);
            let u = &mono(b.clone(), -a, 0) - &RatFunc2::constant(q.clone());
            SubfieldWitness::new(base, (u, y), mono(&Scalar::int(*a) * b, 1, 1))
        }
        WitnessKind::Reparam { f, g, r, p, lambda } => reparam(f, g, r, p, lambda)?,
        WitnessKind::PowerReparam { f, g, p, lambda, m } => reparam(f, g, &mono(one, *m, 0), p, lambda)?,
        WitnessKind::CubicLog { a1, a2 } => {
            nonzero(a1, "a1")?;
            nonzero(a2, "a2")?;
            if a1 == a2 {
                return Err(Error::InvalidInput("a1 and a2 must be distinct".into()));
            }
            let ratio = (a1 / a2).as_rational().cloned().ok_or_else(|| Error::InvalidInput("a1 / a2 must be rational".into()))?;
            let s1 = i64::try_from(ratio.denom().clone()).map_err(|_| Error::InvalidInput("ratio too large".into()))?;
            let s2 = -i64::try_from(ratio.numer().clone()).map_err(|_| Error::InvalidInput("ratio too large".into()))?;
            let s0 = -(s1 + s2);
            let lin = |a: &Scalar| &x - &RatFunc2::constant(a.clone());
            let p = &(&mono(one, s0, 0) * &lin(a1).pow(s1)) * &lin(a2).pow(s2);
            let f = &(&x * &lin(a1)) * &lin(a2);
            let lambda = &(&Scalar::int(s0) * a1) * a2;
            let w = reparam(&f, &y, &x, &p, &lambda)?;
            SubfieldWitness::new(w.base_flag, w.generators, mono(lambda, 1, 1))
        }
        WitnessKind::WeylIn1n0 { n, q } => {
            nonzero(q, "q")?;
            let n = *n as i64;
            if n < 1 {
                return Err(Error::InvalidInput("n must be positive".into()));
            }
            let target = mono(-&(&Scalar::int(n) * q), 0, 1);
            SubfieldWitness::new(mono(q.clone(), n + 1, 1), (mono(one, -n, 0), y), target)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse, Mode};

    fn p(s: &str) -> RatFunc2 {
        parse(s, Mode::Q).unwrap()
    }

    #[test]
    fn weyl_examples() {
        let w = subfield_witness(&WitnessKind::WeylF { f: p("x^3") }).unwrap();
        assert!(w.verified);
        assert_eq!(w.generators, (p("x^3"), p("y/(3*x^2)")));
        for a in [-3, -1, 2, 5] {
            assert!(subfield_witness(&WitnessKind::WeylPower { a }).unwrap().verified);
        }
    }

    #[test]
    fn torus_and_monomial() {
        let q = Scalar::int(5);
        let w = subfield_witness(&WitnessKind::Torus { q: q.clone(), a: 1, b: 1, c: 1, d: -1 }).unwrap();
        assert!(w.verified);
        assert_eq!(w.target_flag, p("-10*x*y"));
        assert_eq!(w.generators, (p("x*y"), p("x/y")));
        let w = subfield_witness(&WitnessKind::MonomialPower { q: q.clone(), a: 2, b: 0, c: 3, d: -2 }).unwrap();
        assert!(w.verified);
        assert_eq!(w.target_flag, p("-30*x^3*y"));
        let w = subfield_witness(&WitnessKind::QskewSub { q, a: 2, b: Scalar::int(3) }).unwrap();
        assert!(w.verified);
        assert_eq!(w.target_flag, p("6*x*y"));
    }

    #[test]
    fn reparametrizations() {
        let w = subfield_witness(&WitnessKind::CubicLog { a1: Scalar::int(1), a2: Scalar::int(3) }).unwrap();
        assert!(w.verified);
        assert_eq!(w.generators.0, p("(x-1)^3/(x^2*(x-3))"));
        assert_eq!(w.target_flag, p("-6*x*y"));
        assert_eq!(w.base_flag, p("x*(x-1)*(x-3)*y"));
        // x^3 g(y): p = x^-2 has p' = -2 x^-3
        let w = subfield_witness(&WitnessKind::PowerReparam {
            f: p("x^3"),
            g: p("y^2+1"),
            p: p("x^-2"),
            lambda: Scalar::int(-2),
            m: 0,
        })
        .unwrap();
        assert!(w.verified);
        let bad = WitnessKind::Reparam { f: p("x^3"), g: p("y"), r: p("1"), p: p("x^2"), lambda: Scalar::one() };
        assert!(matches!(subfield_witness(&bad), Err(Error::IdentityFails(_))));
        for n in 2..6 {
            assert!(subfield_witness(&WitnessKind::WeylIn1n0 { n, q: Scalar::int(7) }).unwrap().verified);
        }
    }
}
