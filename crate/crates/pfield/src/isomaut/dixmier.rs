//! Dixmier property: every Poisson endomorphism is an automorphism.

use super::affine::AffineMap;
use super::{GroupElement, GroupReport};
use crate::arith::{Field, RatFunc2, Scalar};
use crate::classify::{recognize, CanonicalType, Recognized};
use crate::error::{Error, Result};
use crate::poisson::bracket;

/// A Poisson endomorphism `x -> images.0`, `y -> images.1` of `K{base_flag}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endomorphism {
    pub base_flag: RatFunc2,
    pub images: (RatFunc2, RatFunc2),
    /// Degree of `K` over the image, when known.
    pub index: Option<u64>,
    /// `{phi(x), phi(y)} = f(phi(x), phi(y))` holds exactly.
    pub verified: bool,
}

impl Endomorphism {
    pub fn new(base_flag: RatFunc2, images: (RatFunc2, RatFunc2), index: Option<u64>) -> Self {
        let (u, v) = &images;
        let verified = matches!(base_flag.substitute(u, v), Ok(t) if t == bracket(&base_flag, u, v));
        Endomorphism { base_flag, images, index, verified }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DixmierReport {
    /// `None` when no verdict is known.
    pub verdict: Option<bool>,
    pub family: String,
    pub theorem: &'static str,
    /// A proper endomorphism when the verdict is false.
    pub certificate: Option<Endomorphism>,
}

fn mono(c: Scalar, i: i64, j: i64) -> RatFunc2 {
    RatFunc2::monomial(c, i, j)
}

/// The pair `(g, f)` with `{g, f} = q g f` in `K_q`.
pub fn skew_pair() -> (RatFunc2, RatFunc2) {
    let (x, y) = (RatFunc2::x(), RatFunc2::y());
    let one = RatFunc2::one();
    let s = &one / &(&y - &(&one / &y));
    let xy = &x * &y;
    let f = &s * &(&xy - &(&one / &xy));
    let g = &s * &(&x - &(&one / &x));
    (g, f)
}

pub fn dixmier_report(k: &crate::poisson::PoissonField) -> Result<DixmierReport> {
    if k.certificate.is_some() {
        return Ok(DixmierReport {
            verdict: None,
            family: "infinite flag".into(),
            theorem: "no verdict",
            certificate: None,
        });
    }
    let rep = |verdict, family: String, theorem, certificate| Ok(DixmierReport { verdict, family, theorem, certificate });
    match recognize(k)? {
        Recognized::Canonical(c) => match &c.ctype {
            CanonicalType::Weyl => {
                let e = Endomorphism::new(RatFunc2::one(), (mono(Scalar::one(), 3, 0), mono(Scalar::ratio(1, 3), -2, 1)), Some(3));
                rep(Some(false), c.ctype.to_string(), "weyl-subfield", Some(e))
            }
            CanonicalType::Kq(q) => {
                let e = Endomorphism::new(mono(q.clone(), 1, 1), skew_pair(), None);
                rep(Some(false), c.ctype.to_string(), "skew-dixmier", Some(e))
            }
            CanonicalType::K1n0 { n, q } => {
                let z = 1i64.checked_shl(*n).filter(|&z| z > 0).ok_or_else(|| Error::Unsupported("exponent too large".into()))?;
                let e = Endomorphism::new(
                    mono(q.clone(), *n as i64 + 1, 1),
                    (mono(Scalar::int(2), 1, 0), mono(Scalar::one(), 0, z)),
                    Some(z as u64),
                );
                rep(Some(false), c.ctype.to_string(), "monomial-endomorphism", Some(e))
            }
            _ => Err(Error::Unsupported("unresolved classification".into())),
        },
        Recognized::Family2 { p, .. } => {
            let nonzero_root = (0..p.coeffs().len() - 1).any(|i| !p.coeff(i).is_zero());
            rep(Some(nonzero_root), "p(x)xy".into(), "family2-dixmier", None)
        }
        Recognized::Family4 { .. } => rep(Some(true), "split product".into(), "flabby-dixmier", None),
        Recognized::Flabby(_) => rep(Some(true), "flabby".into(), "flabby-dixmier", None),
    }
}

/// Structure of `Aut(K{x^(n+1) y})`, with its rational points in the
/// generator families.
pub fn aut_family1_structure(n: u32) -> Result<GroupReport> {
    if n < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let split = n % 2 == 1;
    let scale = |a: i64| AffineMap {
        c11: Scalar::int(a),
        c12: Scalar::zero(),
        c21: Scalar::zero(),
        c22: Scalar::one(),
        c1: Scalar::zero(),
        c2: Scalar::zero(),
    };
    let mut elements = vec![scale(1)];
    if n.is_multiple_of(2) {
        elements.push(scale(-1));
    }
    let closure = elements.iter().all(|g| {
        elements.contains(&g.inverse()) && elements.iter().all(|h| elements.contains(&g.then(h)))
    });
    let flag = mono(Scalar::one(), n as i64 + 1, 1);
    let sound = elements.iter().all(|m| {
        let (u, v) = m.images();
        flag.substitute(&u, &v).map(|t| t == bracket(&flag, &u, &v)).unwrap_or(false)
    });
    let mut notes = vec![
        "valid over the algebraic closure".to_string(),
        "eta_{a,b}: x -> a x, y -> b(x) y with a^n = 1; tau_c: x -> c x, y -> 1/y with c^n = -1".into(),
    ];
    let tau = if split { "tau_c over Q: c = -1" } else { "tau_c over Q: none" };
    notes.push(tau.into());
    notes.push(if split { "split: (k(x)^x ⋊ C_n) ⋊ C_2".into() } else { "not split".to_string() });
    let mut factors = vec!["k(x)^x".to_string(), format!("C_n({n})"), "C_2".into()];
    factors.push(if split { "semidirect".into() } else { "extension".into() });
    Ok(GroupReport {
        elements: elements.into_iter().map(GroupElement::Affine).collect(),
        infinite_factors: factors,
        order: None,
        exact_sequence: Some("1 -> k(x)^x ⋊ C_n -> Aut -> C_2 -> 1".into()),
        closure_verified: closure,
        bound: None,
        checks: vec![("rational scalings eta_{a,1} preserve the flag".into(), sound)],
        notes,
    })
}
