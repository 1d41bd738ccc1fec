//! Affine maps between flags that are products of distinct linear forms.
//!
//! For such flags every Poisson morphism is affine, so matching the linear
//! factors of F against those of G and solving for the scalings is a
//! complete search.

use std::fmt;

use super::{q_rank, GroupElement, GroupReport};
use crate::arith::linalg::{solve, Solution};
use crate::arith::upoly::UPoly;
use crate::arith::{FactoredFlag, Field, LinearForm, RatFunc2, Scalar, UniPoly};
use crate::classify::family4_data;
use crate::error::{Error, Result};
use crate::valuation::is_flabby;

/// `x -> c11 x + c12 y + c1`, `y -> c21 x + c22 y + c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub c11: Scalar,
    pub c12: Scalar,
    pub c21: Scalar,
    pub c22: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
}

impl AffineMap {
    pub fn identity() -> Self {
        let (o, z) = (Scalar::one(), Scalar::zero());
        AffineMap { c11: o.clone(), c12: z.clone(), c21: z.clone(), c22: o, c1: z.clone(), c2: z }
    }

    pub fn det(&self) -> Scalar {
        &(&self.c11 * &self.c22) - &(&self.c12 * &self.c21)
    }

    pub fn images(&self) -> (RatFunc2, RatFunc2) {
        let f = |a: &Scalar, b: &Scalar, c: &Scalar| {
            LinearForm { a: a.clone(), b: b.clone(), c: c.clone() }.to_ratfunc()
        };
        (f(&self.c11, &self.c12, &self.c1), f(&self.c21, &self.c22, &self.c2))
    }

    /// First apply `self`, then `o` (as substitutions of generators).
    pub fn then(&self, o: &AffineMap) -> AffineMap {
        // o's images evaluated at self's images
        let m = |a1: &Scalar, a2: &Scalar, r: (&Scalar, &Scalar)| &(a1 * r.0) + &(a2 * r.1);
        AffineMap {
            c11: m(&o.c11, &o.c12, (&self.c11, &self.c21)),
            c12: m(&o.c11, &o.c12, (&self.c12, &self.c22)),
            c21: m(&o.c21, &o.c22, (&self.c11, &self.c21)),
            c22: m(&o.c21, &o.c22, (&self.c12, &self.c22)),
            c1: &m(&o.c11, &o.c12, (&self.c1, &self.c2)) + &o.c1,
            c2: &m(&o.c21, &o.c22, (&self.c1, &self.c2)) + &o.c2,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let di = self.det().finv();
        let c11 = &self.c22 * &di;
        let c12 = -(&self.c12 * &di);
        let c21 = -(&self.c21 * &di);
        let c22 = &self.c11 * &di;
        let c1 = -(&(&c11 * &self.c1) + &(&c12 * &self.c2));
        let c2 = -(&(&c21 * &self.c1) + &(&c22 * &self.c2));
        AffineMap { c11, c12, c21, c22, c1, c2 }
    }

    /// `det * G = F(phi)`.
    pub fn carries(&self, f: &RatFunc2, g: &RatFunc2) -> bool {
        let d = self.det();
        if d.is_zero() {
            return false;
        }
        let (u, v) = self.images();
        matches!(f.substitute(&u, &v), Ok(fp) if fp == g.scale(&d))
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.images();
        write!(f, "x -> {u}, y -> {v}")
    }
}

fn distinct_forms(f: &FactoredFlag) -> Result<Vec<LinearForm>> {
    Ok(f.all_factors()?.into_iter().map(|(l, _)| l).collect())
}

/// Coordinates of `l` in the basis `(l1, l2, 1)`.
fn coords(l: &LinearForm, l1: &LinearForm, l2: &LinearForm) -> (Scalar, Scalar, Scalar) {
    let d = l1.det(l2);
    let mu1 = &(&l.a * &l2.b - &l.b * &l2.a) / &d;
    let mu2 = &(&l1.a * &l.b - &l1.b * &l.a) / &d;
    let kappa = &(&l.c - &(&mu1 * &l1.c)) - &(&mu2 * &l2.c);
    (mu1, mu2, kappa)
}

struct Search<'a> {
    f_forms: &'a [LinearForm],
    g_forms: &'a [LinearForm],
    f: RatFunc2,
    g: RatFunc2,
    i1: usize,
    i2: usize,
    rest: Vec<usize>,
    f_coeff: Scalar,
    found: Vec<AffineMap>,
    incomplete: bool,
}

impl Search<'_> {
    /// Map with `l_i1(phi) = lambda1 m_j1`, `l_i2(phi) = lambda2 m_j2`; no
    /// check that the scalings are nonzero.
    fn raw_map(&self, j1: usize, j2: usize, lambda1: &Scalar, lambda2: &Scalar) -> AffineMap {
        let (l1, l2) = (&self.f_forms[self.i1], &self.f_forms[self.i2]);
        let (m1, m2) = (&self.g_forms[j1], &self.g_forms[j2]);
        // phi = L^-1 (lambda1 m1 - c1, lambda2 m2 - c2)
        let d = l1.det(l2);
        let p = [&m1.a * lambda1, &m1.b * lambda1, &(&m1.c * lambda1) - &l1.c];
        let q = [&m2.a * lambda2, &m2.b * lambda2, &(&m2.c * lambda2) - &l2.c];
        let row = |s: &Scalar, t: &Scalar| -> Vec<Scalar> { (0..3).map(|k| &(s * &p[k]) + &(t * &q[k])).collect() };
        let r1 = row(&(&l2.b / &d), &-(&l1.b / &d));
        let r2 = row(&-(&l2.a / &d), &(&l1.a / &d));
        AffineMap {
            c11: r1[0].clone(),
            c12: r1[1].clone(),
            c1: r1[2].clone(),
            c21: r2[0].clone(),
            c22: r2[1].clone(),
            c2: r2[2].clone(),
        }
    }

    fn record(&mut self, j1: usize, j2: usize, lambda1: &Scalar, lambda2: &Scalar) {
        if lambda1.is_zero() || lambda2.is_zero() {
            return;
        }
        let m = self.raw_map(j1, j2, lambda1, lambda2);
        if m.carries(&self.f, &self.g) && !self.found.contains(&m) {
            self.found.push(m);
        }
    }

    fn run(&mut self) {
        let n = self.g_forms.len();
        for j1 in 0..n {
            for j2 in 0..n {
                if j1 == j2 || self.g_forms[j1].det(&self.g_forms[j2]).is_zero() {
                    continue;
                }
                let mut used = vec![false; n];
                used[j1] = true;
                used[j2] = true;
                let mut rows = Vec::new();
                let mut rhs = Vec::new();
                self.assign(j1, j2, 0, &mut used, &mut rows, &mut rhs);
            }
        }
    }

    /// Unknowns: `lambda1, lambda2, sigma_k` for each remaining factor of F.
    fn assign(
        &mut self,
        j1: usize,
        j2: usize,
        k: usize,
        used: &mut [bool],
        rows: &mut Vec<Vec<Scalar>>,
        rhs: &mut Vec<Scalar>,
    ) {
        let cols = 2 + self.rest.len();
        let Solution::Affine { particular, directions } = solve(rows, rhs, cols) else { return };
        if k == self.rest.len() {
            self.finish(j1, j2, &particular, &directions);
            return;
        }
        let (l1, l2) = (&self.f_forms[self.i1], &self.f_forms[self.i2]);
        let (m1, m2) = (&self.g_forms[j1], &self.g_forms[j2]);
        let (mu1, mu2, kappa) = coords(&self.f_forms[self.rest[k]], l1, l2);
        let targets: Vec<(usize, (Scalar, Scalar, Scalar))> =
            (0..used.len()).filter(|&j| !used[j]).map(|j| (j, coords(&self.g_forms[j], m1, m2))).collect();
        for (j, (nu1, nu2, rho)) in targets {
            let mut r1 = vec![Scalar::zero(); cols];
            r1[0] = mu1.clone();
            r1[2 + k] = -&nu1;
            let mut r2 = vec![Scalar::zero(); cols];
            r2[1] = mu2.clone();
            r2[2 + k] = -&nu2;
            let mut r3 = vec![Scalar::zero(); cols];
            r3[2 + k] = rho;
            let before = rows.len();
            rows.extend([r1, r2, r3]);
            rhs.extend([Scalar::zero(), Scalar::zero(), kappa.clone()]);
            used[j] = true;
            self.assign(j1, j2, k + 1, used, rows, rhs);
            used[j] = false;
            rows.truncate(before);
            rhs.truncate(before);
        }
    }

    fn finish(&mut self, j1: usize, j2: usize, p: &[Scalar], dirs: &[Vec<Scalar>]) {
        match dirs.len() {
            0 => self.record(j1, j2, &p[0], &p[1]),
            1 => {
                let d = &dirs[0];
                for s in self.scaling_roots(j1, j2, p, d) {
                    let l1 = &p[0] + &(&s * &d[0]);
                    let l2 = &p[1] + &(&s * &d[1]);
                    self.record(j1, j2, &l1, &l2);
                }
            }
            _ => self.incomplete = true,
        }
    }

    /// Values of `s` for which `phi(p + s d)` can carry F to G, from the
    /// identity evaluated at a few points.
    fn scaling_roots(&mut self, j1: usize, j2: usize, p: &[Scalar], d: &[Scalar]) -> Vec<Scalar> {
        // coefficients of phi(s) are affine in s
        let m0 = self.raw_map(j1, j2, &p[0], &p[1]);
        let m1 = self.raw_map(j1, j2, &(&p[0] + &d[0]), &(&p[1] + &d[1]));
        let aff = |a: &Scalar, b: &Scalar| UniPoly::from_coeffs(vec![a.clone(), b - a]);
        let det = aff(&m0.c11, &m1.c11).mul(&aff(&m0.c22, &m1.c22)).sub(&aff(&m0.c12, &m1.c12).mul(&aff(&m0.c21, &m1.c21)));
        let mut acc: Option<UniPoly> = None;
        for (px, py) in [(2, 3), (5, -7), (-11, 13), (17, 19)] {
            let (x0, y0) = (Scalar::int(px), Scalar::int(py));
            let at = |m: &AffineMap| {
                let (u, v) = m.images();
                (u.eval(&x0, &y0).expect("polynomial"), v.eval(&x0, &y0).expect("polynomial"))
            };
            let ((u0, v0), (u1, v1)) = (at(&m0), at(&m1));
            let (u, v) = (aff(&u0, &u1), aff(&v0, &v1));
            let mut fval = UniPoly::constant(self.f_coeff.clone());
            for l in self.f_forms {
                fval = fval.mul(&u.scale(&l.a).add(&v.scale(&l.b)).add(&UniPoly::constant(l.c.clone())));
            }
            let gval = self.g.eval(&x0, &y0).expect("polynomial");
            let e = fval.sub(&det.scale(&gval));
            acc = Some(match acc {
                None => e,
                Some(a) => UPoly::gcd(&a, &e),
            });
        }
        match acc {
            Some(e) if !e.is_zero() => poly_roots(&e, &mut self.incomplete),
            _ => {
                self.incomplete = true;
                Vec::new()
            }
        }
    }
}

/// Roots of a univariate polynomial that can be found exactly.
fn poly_roots(p: &UniPoly, incomplete: &mut bool) -> Vec<Scalar> {
    let q: Option<Vec<_>> = p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
    if let Some(q) = q {
        return UPoly::from_coeffs(q).rational_roots().into_iter().map(|r| Scalar::Q(r.0)).collect();
    }
    let nz: Vec<usize> = (0..p.coeffs().len()).filter(|&i| !p.coeff(i).is_zero()).collect();
    let mut out = Vec::new();
    if nz[0] > 0 {
        out.push(Scalar::zero());
    }
    match nz.len() {
        1 => {}
        2 => {
            let (i, j) = (nz[0], nz[1]);
            let c = -(&p.coeff(i) / &p.coeff(j));
            out.extend(c.nth_roots((j - i) as u32));
        }
        _ => *incomplete = true,
    }
    out
}

/// Every affine map `phi` with `det(phi) G = F(phi)`.
pub fn affine_iso_search(f: &FactoredFlag, g: &FactoredFlag) -> Result<Vec<AffineMap>> {
    if !is_flabby(f)?.flabby {
        return Err(Error::NotFlabby);
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch);
    }
    let f_forms = distinct_forms(f)?;
    let g_forms = distinct_forms(g)?;
    if g.all_factors()?.iter().any(|(_, m)| *m != 1) || f_forms.len() != g_forms.len() {
        return Ok(Vec::new());
    }
    let (i1, i2) = (0..f_forms.len())
        .flat_map(|i| (i + 1..f_forms.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !f_forms[i].det(&f_forms[j]).is_zero())
        .ok_or(Error::NotFlabby)?;
    let rest = (0..f_forms.len()).filter(|&i| i != i1 && i != i2).collect();
    let mut s = Search {
        f_forms: &f_forms,
        g_forms: &g_forms,
        f: f.expand(),
        g: g.expand(),
        i1,
        i2,
        rest,
        f_coeff: f.coeff.clone(),
        found: Vec::new(),
        incomplete: false,
    };
    s.run();
    if s.incomplete {
        return Err(Error::Unsupported("scaling equation has roots outside the scalar field search".into()));
    }
    Ok(s.found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialAutCriteria {
    pub applies: bool,
    /// `"b"`, `"c"` or `"d"`.
    pub failed_hypothesis: Option<&'static str>,
}

/// Hypotheses under which the flag `c prod (x + xi_i) prod (y + chi_j)` has no
/// nontrivial automorphism.
pub fn trivial_aut_criteria(xi: &[Scalar], chi: &[Scalar]) -> Result<TrivialAutCriteria> {
    let (m, n) = (xi.len(), chi.len());
    if m < 3 || n < 3 {
        return Err(Error::TooFewRoots);
    }
    for v in [xi, chi] {
        if (0..v.len()).any(|i| v[i + 1..].contains(&v[i])) {
            return Err(Error::InvalidInput("shifts must be distinct".into()));
        }
    }
    let fail = |h| Ok(TrivialAutCriteria { applies: false, failed_hypothesis: Some(h) });
    if m == n && m % 2 == 0 {
        return fail("b");
    }
    let diffs = |v: &[Scalar]| v[1..].iter().map(|a| a - &v[0]).collect::<Vec<_>>();
    for v in [xi, chi] {
        let d = diffs(v);
        if q_rank(&d) != d.len() {
            return fail("c");
        }
    }
    for v in [xi, chi] {
        let k = v.len() as u32;
        for i in 0..v.len() {
            for j in 0..v.len() {
                if i != j && (&v[i] - &v[0]).fpow(k) == (&v[0] - &v[j]).fpow(k) {
                    return fail("d");
                }
            }
        }
    }
    Ok(TrivialAutCriteria { applies: true, failed_hypothesis: None })
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Automorphism group of K{F} for a flabby product of distinct linear forms.
pub fn aut_group(f: &FactoredFlag) -> Result<GroupReport> {
    let maps = affine_iso_search(f, f)?;
    let closure = maps.contains(&AffineMap::identity())
        && maps.iter().all(|g| maps.contains(&g.inverse()) && maps.iter().all(|h| maps.contains(&g.then(h))));
    let n = f.degree() as u64;
    let mut bound = (n - 2) * factorial(n);
    let mut checks = vec![("|Aut| <= (n-2) n!".to_string(), maps.len() as u64 <= bound)];
    // maps fixing every factor are scalings x -> a x, y -> a y with a^(n-2) = 1
    let forms = distinct_forms(f)?;
    let kernel_ok = maps.iter().all(|m| {
        let fixes_all = forms.iter().all(|l| {
            let (u, v) = m.images();
            let img = &(&u.scale(&l.a) + &v.scale(&l.b)) + &RatFunc2::constant(l.c.clone());
            (&img / &l.to_ratfunc()).is_constant()
        });
        !fixes_all || (m.c12.is_zero() && m.c21.is_zero() && m.c11 == m.c22 && m.c11.fpow((n - 2) as u32).is_one())
    });
    checks.push(("factor-fixing maps are scalings by (n-2)-th roots of unity".into(), kernel_ok));
    let mut notes = Vec::new();
    if let Some((_, xi, chi)) = family4_data(f) {
        let (mm, nn) = (xi.len(), chi.len());
        let star = |v: &[Scalar]| {
            let k = v.len();
            let sum = v.iter().fold(Scalar::zero(), |a, b| &a + b);
            if v.iter().any(|s| &Scalar::int(k as i64) * s == sum) { k - 1 } else { k }
        };
        let (ms, ns) = (star(&xi), star(&chi));
        notes.push(format!("m={mm} n={nn} m*={ms} n*={ns}"));
        let b2 = ((mm - 1) * (nn - 1)) as u64;
        bound = bound.min(b2);
        checks.push(("|Aut| <= (m-1)(n-1)".into(), maps.len() as u64 <= b2));
        let g: Vec<&AffineMap> = maps.iter().filter(|m| m.c12.is_zero() && m.c21.is_zero()).collect();
        let in_h = g.iter().all(|m| {
            m.c11.fpow(ms as u32).is_one()
                && m.c22.fpow(ns as u32).is_one()
                && (&m.c11.fpow(mm as u32 - 1) * &m.c22.fpow(nn as u32 - 1)).is_one()
        });
        checks.push(("diagonal part lies in H".into(), in_h));
        checks.push(("diagonal part has index at most 2".into(), maps.len() <= 2 * g.len()));
        if g.len() != maps.len() {
            checks.push(("swapping maps need m = n even, m* = n* = m".into(), mm == nn && mm % 2 == 0 && ms == mm && ns == nn));
        }
        if let Ok(c) = trivial_aut_criteria(&xi, &chi) {
            if c.applies {
                checks.push(("criteria for a trivial group hold, order is 1".into(), maps.len() == 1));
            }
        }
    }
    Ok(GroupReport {
        order: Some(maps.len()),
        elements: maps.into_iter().map(GroupElement::Affine).collect(),
        infinite_factors: Vec::new(),
        exact_sequence: None,
        closure_verified: closure,
        bound: Some(bound),
        checks,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Mode;

    fn ff(s: &str) -> FactoredFlag {
        FactoredFlag::parse(s, Mode::Q).unwrap()
    }

    fn affine(c: [i64; 6]) -> AffineMap {
        let s = |i: usize| Scalar::int(c[i]);
        AffineMap { c11: s(0), c12: s(1), c21: s(2), c22: s(3), c1: s(4), c2: s(5) }
    }

    #[test]
    fn map_algebra() {
        let a = affine([1, 1, 0, 1, 2, 0]);
        let b = affine([0, 1, -1, 0, 0, 3]);
        assert_eq!(a.then(&a.inverse()), AffineMap::identity());
        assert_eq!(a.inverse().then(&a), AffineMap::identity());
        let (u, v) = a.then(&b).images();
        let (bu, bv) = b.images();
        let (au, av) = a.images();
        assert_eq!(u, bu.substitute(&au, &av).unwrap());
        assert_eq!(v, bv.substitute(&au, &av).unwrap());
    }

    #[test]
    fn shear_between_homogeneous_flags() {
        let f = ff("x*y*(x+y)*(x+2*y)");
        let g = ff("y*(x+y)*(x+2*y)*(x+3*y)");
        let maps = affine_iso_search(&f, &g).unwrap();
        assert!(maps.contains(&affine([1, 1, 0, 1, 0, 0])), "{maps:?}");
        assert!(maps.iter().all(|m| m.carries(&f.expand(), &g.expand())));
        let h = ff("x*y*(x+y)*(x+3*y)");
        assert!(affine_iso_search(&f, &h).unwrap().is_empty());
    }

    #[test]
    fn homogeneous_group() {
        let g = aut_group(&ff("x*y*(x+y)*(x+2*y)")).unwrap();
        assert!(g.elements.contains(&GroupElement::Affine(affine([-1, 0, 0, -1, 0, 0]))));
        // x -> x, y -> -x - y permutes the four lines and carries F to -F
        assert!(g.elements.contains(&GroupElement::Affine(affine([1, 0, -1, -1, 0, 0]))));
        assert_eq!(g.order, Some(8));
        assert!(g.checks_pass(), "{:?}", g.checks);
    }

    #[test]
    fn split_product_group() {
        let g = aut_group(&ff("x*y*(x^2-1)*(y^2-1)")).unwrap();
        assert_eq!(g.order, Some(4));
        assert!(g.checks_pass(), "{:?}", g.checks);
        assert_eq!(aut_group(&ff("x*y*(x+1)")), Err(Error::NotFlabby));
    }

    #[test]
    fn criteria() {
        let q = |v: &[i64]| v.iter().map(|&a| Scalar::int(a)).collect::<Vec<_>>();
        let r = trivial_aut_criteria(&q(&[0, 1, 2]), &q(&[0, 1, 2])).unwrap();
        assert_eq!(r.failed_hypothesis, Some("c"));
        let t = Scalar::t();
        let xi = vec![Scalar::zero(), t.clone(), t.fpow(4)];
        let chi = vec![Scalar::zero(), t.fpow(2), t.fpow(5)];
        assert!(trivial_aut_criteria(&xi, &chi).unwrap().applies);
        let xi4 = vec![Scalar::zero(), t.clone(), t.fpow(4), t.fpow(9)];
        let chi4 = vec![Scalar::zero(), t.fpow(2), t.fpow(5), t.fpow(11)];
        assert_eq!(trivial_aut_criteria(&xi4, &chi4).unwrap().failed_hypothesis, Some("b"));
        assert_eq!(trivial_aut_criteria(&q(&[0, 1]), &q(&[0, 1, 2])), Err(Error::TooFewRoots));
    }

    #[test]
    fn qt_generic_split_product_is_rigid() {
        let t = Scalar::t();
        let xi = [Scalar::zero(), t.clone(), t.fpow(4)];
        let chi = [Scalar::zero(), t.fpow(2), t.fpow(5)];
        let forms: Vec<LinearForm> = xi
            .iter()
            .map(|a| LinearForm::x_plus(a.clone()))
            .chain(chi.iter().map(|b| LinearForm::y_plus(b.clone())))
            .collect();
        let f = FactoredFlag::from_forms(Scalar::one(), &forms);
        let g = aut_group(&f).unwrap();
        assert_eq!(g.order, Some(1));
        assert!(g.checks_pass(), "{:?}", g.checks);
    }
}
