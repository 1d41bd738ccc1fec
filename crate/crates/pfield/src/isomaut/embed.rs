//! Embeddings among the canonical types and isomorphism across the
//! recognized families.

use super::affine::affine_iso_search;
use super::dixmier::dixmier_report;
use super::family2::iso_family2_general;
use super::witness::SubfieldWitness;
use crate::arith::{Field, RatFunc2, Scalar};
use crate::classify::{iso_decide_canonical, recognize, CanonicalType, Recognized};
use crate::error::{Error, Result};
use crate::poisson::PoissonField;
use crate::valuation::gamma1_zero;

#[derive(Clone, Debug, PartialEq)]
pub struct EmbedResult {
    pub embeds: bool,
    /// Generators of a subfield of the target isomorphic to the source.
    pub witness: Option<SubfieldWitness>,
    pub reason: String,
}

fn no(reason: &str) -> Result<EmbedResult> {
    Ok(EmbedResult { embeds: false, witness: None, reason: reason.into() })
}

fn yes(reason: &str, w: SubfieldWitness) -> Result<EmbedResult> {
    Ok(EmbedResult { embeds: true, witness: Some(w), reason: reason.into() })
}

fn mono(c: Scalar, i: i64, j: i64) -> RatFunc2 {
    RatFunc2::monomial(c, i, j)
}

/// Does the field of type `t1` embed in the field of type `t2`?
pub fn embed_decide(t1: &CanonicalType, t2: &CanonicalType) -> Result<EmbedResult> {
    use CanonicalType::*;
    if !t1.is_resolved() || !t2.is_resolved() {
        return Err(Error::UnresolvedInput(format!("{t1} / {t2}")));
    }
    let one = Scalar::one();
    match (t1, t2) {
        (Weyl, Weyl) => yes("identity", SubfieldWitness::new(RatFunc2::one(), (RatFunc2::x(), RatFunc2::y()), RatFunc2::one())),
        (Weyl, K1n0 { n, q }) => {
            let n = *n as i64;
            let base = mono(q.clone(), n + 1, 1);
            let target = mono(-&(&Scalar::int(n) * q), 0, 1);
            let gens = (mono(one, -n, 0), RatFunc2::y());
            yes("x^-n and y generate a Weyl subfield", SubfieldWitness::new(base, gens, target))
        }
        (Kq(p), Kq(q)) => {
            let k = (p / q).as_integer().and_then(|k| i64::try_from(k).ok());
            match k {
                Some(k) if k != 0 => {
                    let w = SubfieldWitness::new(mono(q.clone(), 1, 1), (RatFunc2::x(), mono(one, 0, k)), mono(p.clone(), 1, 1));
                    yes("p is an integer multiple of q", w)
                }
                _ => no("p is not an integer multiple of q"),
            }
        }
        (K1n0 { n: m, q: r }, K1n0 { n, q }) => {
            if n % m != 0 {
                return no("m does not divide n");
            }
            let (m, n) = (*m as i64, *n as i64);
            let c = &(&Scalar::int(n) * q) / &(&Scalar::int(m) * r);
            let (cn, cd) = c.parts();
            let rho = Scalar::Q(cn.lc() / cd.lc());
            let Some(gamma) = (&c / &rho).nth_roots(m as u32).into_iter().next() else {
                return no("n q z / (m r) is never an m-th power for integer z");
            };
            let rq = rho.as_rational().expect("rational").clone();
            let (u, v) = (Scalar::from_bigint(rq.numer().clone()), Scalar::from_bigint(rq.denom().clone()));
            // beta^m = c z with z = u^(m-1) v and beta = u gamma
            let z = &u.fpow(m as u32 - 1) * &v;
            let Some(z) = z.as_i64() else {
                return Ok(EmbedResult { embeds: true, witness: None, reason: "m divides n; exponent too large to display".into() });
            };
            let beta = &u * &gamma;
            let base = mono(q.clone(), n + 1, 1);
            let gens = (mono(beta, n / m, 0), mono(one, 0, z));
            yes("m divides n", SubfieldWitness::new(base, gens, mono(r.clone(), m + 1, 1)))
        }
        (Kq(_), Weyl | K1n0 { .. }) => no("no K_q embeds in the Weyl field or in K_{1,n,0}"),
        (Weyl | K1n0 { .. }, Kq(_)) => no("the Weyl field and K_{1,n,0} do not embed in any K_q"),
        (K1n0 { .. }, Weyl) => no("K_{1,n,0} does not embed in the Weyl field"),
        _ => unreachable!("resolved types"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub reason: String,
}

fn label(r: &Recognized) -> &'static str {
    match r {
        Recognized::Canonical(_) => "canonical",
        Recognized::Family2 { .. } => "p(x)xy",
        Recognized::Family4 { .. } | Recognized::Flabby(_) => "flabby",
    }
}

/// Isomorphism of two fields in the recognized families.
pub fn iso_decide(k1: &PoissonField, k2: &PoissonField) -> Result<IsoResult> {
    let (r1, r2) = (recognize(k1)?, recognize(k2)?);
    let res = |b: bool, why: String| Ok(IsoResult { isomorphic: b, reason: why });
    match (&r1, &r2) {
        (Recognized::Canonical(a), Recognized::Canonical(b)) => {
            let iso = iso_decide_canonical(&a.ctype, &b.ctype)?;
            res(iso, format!("{} vs {}", a.ctype, b.ctype))
        }
        (Recognized::Family2 { p: p1, .. }, Recognized::Family2 { p: p2, .. }) => {
            let e = iso_family2_general(p1, p2, None)?;
            match e.first() {
                Some(w) => res(true, format!("equivalence {w}")),
                None => res(false, "no (a, b, e) satisfies the polynomial identity".into()),
            }
        }
        (
            Recognized::Family4 { flag: f, .. } | Recognized::Flabby(f),
            Recognized::Family4 { flag: g, .. } | Recognized::Flabby(g),
        ) => {
            if f.degree() != g.degree() {
                return res(false, "flabby flags of different degree".into());
            }
            let maps = affine_iso_search(f, g)?;
            match maps.first() {
                Some(m) => res(true, format!("affine map {m}")),
                None => res(false, "no affine map carries one flag to the other".into()),
            }
        }
        _ => {
            let (g1, g2) = (gamma1_zero(k1)?.ring, gamma1_zero(k2)?.ring);
            let (d1, d2) = (dixmier_report(k1)?.verdict, dixmier_report(k2)?.verdict);
            if g1 != g2 {
                res(false, format!("{} vs {}: cap rings {g1} and {g2} differ", label(&r1), label(&r2)))
            } else if d1.is_some() && d2.is_some() && d1 != d2 {
                res(false, format!("{} vs {}: Dixmier property differs", label(&r1), label(&r2)))
            } else {
                Err(Error::Unsupported("no invariant separates these families".into()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Mode;
    use CanonicalType::*;

    fn k1n0(n: u32) -> CanonicalType {
        K1n0 { n, q: Scalar::one() }
    }

    #[test]
    fn table() {
        let r = embed_decide(&Kq(Scalar::int(6)), &Kq(Scalar::int(2))).unwrap();
        assert!(r.embeds);
        let w = r.witness.unwrap();
        assert!(w.verified);
        assert_eq!(w.generators.1, RatFunc2::monomial(Scalar::one(), 0, 3));
        assert!(!embed_decide(&Kq(Scalar::one()), &Kq(Scalar::int(2))).unwrap().embeds);
        let r = embed_decide(&k1n0(2), &k1n0(4)).unwrap();
        assert!(r.embeds && r.witness.unwrap().verified);
        assert!(!embed_decide(&k1n0(3), &k1n0(4)).unwrap().embeds);
        for n in 2..6 {
            let r = embed_decide(&Weyl, &k1n0(n)).unwrap();
            assert!(r.embeds && r.witness.unwrap().verified);
            assert!(!embed_decide(&k1n0(n), &Kq(Scalar::int(3))).unwrap().embeds);
            assert!(!embed_decide(&k1n0(n), &Weyl).unwrap().embeds);
        }
        assert!(!embed_decide(&Kq(Scalar::one()), &Weyl).unwrap().embeds);
        assert!(!embed_decide(&Weyl, &Kq(Scalar::one())).unwrap().embeds);
        assert!(embed_decide(&CanonicalType::OutsideScope, &Weyl).is_err());
    }

    #[test]
    fn nontrivial_coefficients() {
        let r = embed_decide(&K1n0 { n: 2, q: Scalar::int(3) }, &K1n0 { n: 6, q: Scalar::int(5) }).unwrap();
        assert!(r.embeds && r.witness.unwrap().verified);
        let t = Scalar::t();
        let r = embed_decide(&K1n0 { n: 2, q: t.clone() }, &K1n0 { n: 4, q: t.fpow(3) }).unwrap();
        assert!(r.embeds && r.witness.unwrap().verified);
        let r = embed_decide(&K1n0 { n: 2, q: Scalar::one() }, &K1n0 { n: 4, q: t }).unwrap();
        assert!(!r.embeds);
    }

    #[test]
    fn iso_across_families() {
        let k = |s: &str| PoissonField::parse(s, Mode::Q).unwrap();
        assert!(!iso_decide(&k("x*y*(y-1)"), &k("3*x*y")).unwrap().isomorphic);
        assert!(iso_decide(&k("x*y*(y-1)"), &k("x*y*(y+1)")).unwrap().isomorphic);
        assert!(iso_decide(&k("(x^2+x)*x*y"), &k("(x^2-x)*x*y")).unwrap().isomorphic);
        assert!(!iso_decide(&k("(x^2+1)*x*y"), &k("(x^2+2)*x*y")).unwrap().isomorphic);
        let f = k("x*y*(x+y)*(x+2*y)");
        assert!(iso_decide(&f, &k("y*(x+y)*(x+2*y)*(x+3*y)")).unwrap().isomorphic);
        assert!(!iso_decide(&f, &k("x*y*(x+y)*(x+3*y)")).unwrap().isomorphic);
        assert!(!iso_decide(&f, &k("(x^2-1)*x*y")).unwrap().isomorphic);
        assert!(!iso_decide(&k("(x^2-1)*x*y"), &k("x^4*y")).unwrap().isomorphic);
    }
}
