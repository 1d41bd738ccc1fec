//! Flags `p(x) x y`: equivalence parameters `(a, b, e)` with
//! `a^-1 (a x - b) p1(a x - b) = e x p2(x)`.

use std::fmt;

use super::{q_rank, GroupElement, GroupReport};
use crate::arith::upoly::UPoly;
use crate::arith::{Field, Scalar, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivParams {
    pub a: Scalar,
    pub b: Scalar,
    pub e: i8,
}

impl EquivParams {
    pub fn identity() -> Self {
        EquivParams { a: Scalar::one(), b: Scalar::zero(), e: 1 }
    }

    /// `(a, b, e)(a', b', e') = (a a', b a' + b', e e')`.
    pub fn compose(&self, o: &EquivParams) -> EquivParams {
        EquivParams { a: &self.a * &o.a, b: &(&self.b * &o.a) + &o.b, e: self.e * o.e }
    }

    pub fn inverse(&self) -> EquivParams {
        let ai = self.a.finv();
        EquivParams { b: -(&self.b * &ai), a: ai, e: self.e }
    }

    /// Check the defining identity for `(p1, p2)`.
    pub fn holds(&self, p1: &UniPoly, p2: &UniPoly) -> bool {
        let g = UniPoly::from_coeffs(vec![-&self.b, self.a.clone()]);
        let lhs = g.mul(&p1.compose(&g)).scale(&self.a.finv());
        let rhs = UniPoly::x().mul(p2).scale(&Scalar::int(self.e as i64));
        lhs == rhs
    }
}

impl fmt::Display for EquivParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, e={})", self.a, self.b, if self.e > 0 { "+1" } else { "-1" })
    }
}

fn sort_key(p: &EquivParams) -> String {
    p.to_string()
}

/// Roots of `p`: supplied ones are checked, otherwise rational roots when
/// the coefficients are rational.
fn roots_of(p: &UniPoly, supplied: Option<&[Scalar]>) -> Result<Vec<Scalar>> {
    if let Some(r) = supplied {
        if r.iter().any(|a| !p.eval(a).is_zero()) {
            return Err(Error::InvalidInput("supplied value is not a root".into()));
        }
        return Ok(r.to_vec());
    }
    let q: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    let q = UPoly::from_coeffs(q.ok_or(Error::RootsUnavailable)?);
    Ok(q.rational_roots().into_iter().map(|r| Scalar::Q(r.0)).collect())
}

/// All `(a, b, e)` for arbitrary (not necessarily monic) `p1`, `p2`.
pub fn iso_family2_general(p1: &UniPoly, p2: &UniPoly, roots1: Option<&[Scalar]>) -> Result<Vec<EquivParams>> {
    let (d1, d2) = (p1.degree().unwrap_or(0), p2.degree().unwrap_or(0));
    if d1 == 0 || d2 == 0 {
        return Err(Error::DegreeTooSmall);
    }
    if d1 != d2 {
        return Ok(Vec::new());
    }
    let mut bs = vec![Scalar::zero()];
    for r in roots_of(p1, roots1)? {
        let b = -&r;
        if !bs.contains(&b) {
            bs.push(b);
        }
    }
    let mut out = Vec::new();
    for e in [1i8, -1] {
        // a^d lc(p1) = e lc(p2)
        let target = &(&Scalar::int(e as i64) * &p2.lc()) / &p1.lc();
        for a in target.nth_roots(d1 as u32) {
            for b in &bs {
                let cand = EquivParams { a: a.clone(), b: b.clone(), e };
                if cand.holds(p1, p2) && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort_by_key(sort_key);
    Ok(out)
}

/// All `(a, b, e)` for monic `p1`, `p2`.
pub fn iso_family2(p1: &UniPoly, p2: &UniPoly, roots1: Option<&[Scalar]>) -> Result<Vec<EquivParams>> {
    if !p1.lc().is_one() || !p2.lc().is_one() {
        return Err(Error::NotMonic);
    }
    iso_family2_general(p1, p2, roots1)
}

/// `Z`-independent roots with distinct `2d`-th powers.
pub fn roots_independent(roots: &[Scalar]) -> bool {
    let d = roots.len() as u32;
    if q_rank(roots) != roots.len() {
        return false;
    }
    let pw: Vec<Scalar> = roots.iter().map(|r| r.fpow(2 * d)).collect();
    (0..pw.len()).all(|i| !pw[i + 1..].contains(&pw[i]))
}

/// Automorphisms of `K{p(x) x y}`: the finite quotient `G_p` and the kernel `k(x)^x`.
pub fn aut_family2(p: &UniPoly, roots: Option<&[Scalar]>) -> Result<GroupReport> {
    let d = p.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let ep = iso_family2_general(p, p, roots)?;
    let closure = ep.contains(&EquivParams::identity())
        && ep.iter().all(|g| ep.contains(&g.inverse()) && ep.iter().all(|h| ep.contains(&g.compose(h))));
    let bound = (d * (d + 1)) as u64;
    let mut checks = vec![("|G_p| <= d(d+1)".to_string(), ep.len() as u64 <= bound)];
    if let Some(r) = roots {
        if r.len() == d && roots_independent(r) {
            checks.push(("independent roots force |G_p| = 1".to_string(), ep.len() == 1));
        }
    }
    Ok(GroupReport {
        order: None,
        elements: ep.into_iter().map(GroupElement::Equiv).collect(),
        infinite_factors: vec!["k(x)^x".into()],
        exact_sequence: Some("1 -> k(x)^x -> Aut -> G_p -> 1".into()),
        closure_verified: closure,
        bound: Some(bound),
        checks,
        notes: vec!["x -> a x - b, y -> v(x) y^e for (a,b,e) in G_p, v in k(x)^x".into()],
    })
}
