mod common;

use std::collections::BTreeSet;

use pfield::arith::Field;
use pfield::classify::{iso_decide_canonical, CanonicalType};
use pfield::isomaut::{
    affine_iso_search, aut_family2, aut_group, embed_decide, iso_family2_general, trivial_aut_criteria, AffineMap,
    EquivParams, GroupElement,
};
use pfield::{FactoredFlag, LinearForm, Mode, Scalar, UniPoly};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| Scalar::int(n)).collect()
}

fn split_poly() -> impl Strategy<Value = Vec<i64>> {
    subsequence((-4i64..=4).collect::<Vec<_>>(), 2..=4)
}

/// Monic `p2` such that the roots of `x p2(x)` are `(b + r) / a` for the
/// roots `r` of `x p1(x)`.
fn transported(roots: &[i64], a: i64, b: i64) -> UniPoly {
    let moved = roots.iter().chain(&[0]).map(|&r| Scalar::ratio(b + r, a));
    UniPoly::from_roots(&moved.filter(|r| !r.is_zero()).collect::<Vec<_>>())
}

fn affine(c: [i64; 6]) -> AffineMap {
    let s = |i: usize| Scalar::int(c[i]);
    AffineMap { c11: s(0), c12: s(1), c21: s(2), c22: s(3), c1: s(4), c2: s(5) }
}

fn compose_form(l: &LinearForm, m: &AffineMap) -> LinearForm {
    LinearForm {
        a: &(&l.a * &m.c11) + &(&l.b * &m.c21),
        b: &(&l.a * &m.c12) + &(&l.b * &m.c22),
        c: &(&(&l.a * &m.c1) + &(&l.b * &m.c2)) + &l.c,
    }
}

fn linear_form() -> impl Strategy<Value = LinearForm> {
    (-3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("nonconstant", |(a, b, _)| *a != 0 || *b != 0)
        .prop_map(|(a, b, c)| LinearForm { a: Scalar::int(a), b: Scalar::int(b), c: Scalar::int(c) })
}

fn invertible_map() -> impl Strategy<Value = AffineMap> {
    ((-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2), (-2i64..=2, -2i64..=2))
        .prop_map(|((a, b, c, d), (e, f))| affine([a, b, c, d, e, f]))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn canonical_types() -> Vec<CanonicalType> {
    let mut v = vec![CanonicalType::Weyl];
    v.extend([1, 2, 3, -2, 6, -6].iter().map(|&q| CanonicalType::Kq(Scalar::int(q))));
    v.extend((2..7).map(|n| CanonicalType::K1n0 { n, q: Scalar::one() }));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn family2_equivalence_counts(roots in split_poly(), a in prop::sample::select(vec![1i64, -1, 2]), b in -3i64..=3) {
        let p1 = UniPoly::from_roots(&ints(&roots));
        let d = roots.len();
        let p2 = transported(&roots, a, b);
        prop_assume!(p2.degree() == Some(d));
        let e = iso_family2_general(&p1, &p2, None).unwrap();
        prop_assert!(e.len() <= 2 * d * (d + 1));
        prop_assert!(e.iter().all(|c| c.holds(&p1, &p2)));
        let g = aut_family2(&p1, None).unwrap();
        prop_assert!(g.finite_order() <= d * (d + 1));
        prop_assert!(g.checks_pass());
    }

    #[test]
    fn family2_group_matches_search(roots in split_poly()) {
        let p = UniPoly::from_roots(&ints(&roots));
        let listed: BTreeSet<String> = aut_family2(&p, None).unwrap().elements.iter().map(|g| g.to_string()).collect();
        // a^d = +-1 forces a = +-1 over Q; then b = a s - r is an integer in a small range
        let mut brute = BTreeSet::new();
        for a in [1i64, -1] {
            for b in -12i64..=12 {
                for e in [1i8, -1] {
                    let c = EquivParams { a: Scalar::int(a), b: Scalar::int(b), e };
                    if c.holds(&p, &p) {
                        brute.insert(c.to_string());
                    }
                }
            }
        }
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn affine_transport_is_found(forms in prop::collection::vec(linear_form(), 3..=5), m in invertible_map()) {
        let f = FactoredFlag::from_forms(Scalar::one(), &forms);
        let flabby = pfield::valuation::is_flabby(&f).map(|r| r.flabby).unwrap_or(false);
        prop_assume!(flabby && f.degree() == forms.len() as i64);
        let g_forms: Vec<LinearForm> = forms.iter().map(|l| compose_form(l, &m)).collect();
        let g = FactoredFlag::from_forms(m.det().finv(), &g_forms);
        prop_assert!(m.carries(&f.expand(), &g.expand()));
        if let Ok(maps) = affine_iso_search(&f, &g) {
            prop_assert!(maps.contains(&m));
            prop_assert!(maps.iter().all(|phi| phi.carries(&f.expand(), &g.expand())));
        }
        if let Ok(grp) = aut_group(&f) {
            prop_assert!(grp.checks_pass(), "{:?}", grp.checks);
            let n = f.degree() as u64;
            prop_assert!(grp.finite_order() as u64 <= (n - 2) * (1..=n).product::<u64>());
        }
    }

    #[test]
    fn criteria_force_trivial_group(e in subsequence((1u32..=9).collect::<Vec<_>>(), 4), c in prop::collection::vec(1i64..=3, 4)) {
        let t = Scalar::t();
        let term = |i: usize| &Scalar::int(c[i]) * &t.fpow(e[i]);
        let xi = vec![Scalar::zero(), term(0), term(1)];
        let chi = vec![Scalar::zero(), term(2), term(3)];
        let crit = trivial_aut_criteria(&xi, &chi).unwrap();
        if crit.applies {
            let forms: Vec<LinearForm> = xi
                .iter()
                .map(|a| LinearForm::x_plus(a.clone()))
                .chain(chi.iter().map(|b| LinearForm::y_plus(b.clone())))
                .collect();
            let g = aut_group(&FactoredFlag::from_forms(Scalar::one(), &forms)).unwrap();
            prop_assert_eq!(g.order, Some(1));
        }
    }
}

#[test]
fn homogeneous_group_against_brute_force() {
    let f = FactoredFlag::parse("x*y*(x+y)*(x+2*y)", Mode::Q).unwrap();
    let fx = f.expand();
    let grp = aut_group(&f).unwrap();
    let listed: Vec<AffineMap> = grp
        .elements
        .iter()
        .map(|g| match g {
            GroupElement::Affine(m) => m.clone(),
            GroupElement::Equiv(_) => panic!("affine elements expected"),
        })
        .collect();
    let mut brute = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            for c in -2..=2 {
                for d in -2..=2 {
                    for e in -1..=1 {
                        for g in -1..=1 {
                            let m = affine([a, b, c, d, e, g]);
                            if m.carries(&fx, &fx) {
                                brute.push(m);
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(brute.len(), 8);
    assert_eq!(listed.len(), brute.len());
    assert!(brute.iter().all(|m| listed.contains(m)));
}

#[test]
fn embedding_is_antisymmetric_up_to_isomorphism() {
    let types = canonical_types();
    for a in &types {
        for b in &types {
            let ab = embed_decide(a, b).unwrap();
            let ba = embed_decide(b, a).unwrap();
            if let Some(w) = &ab.witness {
                assert!(w.verified, "{a} -> {b}");
            }
            let iso = iso_decide_canonical(a, b).unwrap();
            assert_eq!(ab.embeds && ba.embeds, iso, "{a} / {b}");
        }
    }
}
