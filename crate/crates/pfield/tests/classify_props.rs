mod common;

use common::*;
use pfield::arith::Field;
use pfield::classify::{classify_raw, iso_decide_canonical, verify_classification, CanonicalType, ChangeOfVars};
use pfield::{Mode, RatFunc2, Scalar, UniPoly};
use proptest::prelude::*;

fn lin(a: &Scalar, b: &Scalar, c: &Scalar) -> RatFunc2 {
    &(&RatFunc2::x().scale(a) + &RatFunc2::y().scale(b)) + &RatFunc2::constant(c.clone())
}

/// Flags in the shapes the engine rewrites: monomials, x^a g(y), products of lines.
fn shaped_flag() -> impl Strategy<Value = RatFunc2> {
    let mono = (nonzero_scalar(), -2i64..=4, -2i64..=4).prop_map(|(q, a, b)| RatFunc2::monomial(q, a, b));
    let xg = (0i64..=3, proptest::collection::vec(scalar(), 1..4)).prop_filter_map("nonzero", |(a, g)| {
        let g = RatFunc2::from_upoly_y(&UniPoly::from_coeffs(g));
        (!g.is_zero()).then(|| &RatFunc2::monomial(Scalar::one(), a, 0) * &g)
    });
    let lines = (nonzero_scalar(), proptest::collection::vec((scalar(), scalar(), scalar()), 1..4)).prop_filter_map(
        "nondegenerate",
        |(c, ls)| {
            let mut f = RatFunc2::constant(c);
            for (a, b, k) in &ls {
                if a.is_zero() && b.is_zero() {
                    return None;
                }
                f = &f * &lin(a, b, k);
            }
            Some(f)
        },
    );
    prop_oneof![mono, xg, lines, nonzero_bipoly(2, 3).prop_map(RatFunc2::from_poly)]
}

fn canonical_type() -> impl Strategy<Value = CanonicalType> {
    prop_oneof![
        Just(CanonicalType::Weyl),
        nonzero_scalar().prop_map(CanonicalType::Kq),
        (2u32..=5).prop_map(|n| CanonicalType::K1n0 { n, q: Scalar::one() }),
    ]
}

/// `u = a x + b y + e`, `v = c x + d y + f` with nonzero determinant.
fn affine_cov() -> impl Strategy<Value = ChangeOfVars> {
    proptest::array::uniform6(-2i64..=2).prop_filter_map("invertible", |[a, b, c, d, e, f]| {
        let det = a * d - b * c;
        if det == 0 {
            return None;
        }
        let s = Scalar::int;
        let di = Scalar::ratio(1, det);
        let u = lin(&s(a), &s(b), &s(e));
        let v = lin(&s(c), &s(d), &s(f));
        // x = (d (u - e) - b (v - f)) / det, y = (-c (u - e) + a (v - f)) / det
        let x = lin(&(&s(d) * &di), &(&s(-b) * &di), &(&s(-d * e + b * f) * &di));
        let y = lin(&(&s(-c) * &di), &(&s(a) * &di), &(&s(c * e - a * f) * &di));
        Some(ChangeOfVars { forward: (u, v), inverse: (x, y) })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn resolved_results_are_verified(f in shaped_flag()) {
        let c = classify_raw(&f, Mode::Q);
        if c.ctype.is_resolved() {
            prop_assert!(c.verified, "{} -> {}", f, c.ctype);
            let cov = c.cov.clone().unwrap();
            prop_assert!(cov.is_inverse_pair());
            prop_assert!(verify_classification(&f, &c.ctype, &cov));
            prop_assert_ne!(c.ctype.flag_height(), Some(1));
        }
    }

    #[test]
    fn canonical_flags_are_fixed(t in canonical_type()) {
        let c = classify_raw(&t.flag().unwrap(), Mode::Q);
        prop_assert!(c.verified);
        prop_assert!(iso_decide_canonical(&c.ctype, &t).unwrap(), "{} -> {}", t, c.ctype);
        let again = classify_raw(&c.ctype.flag().unwrap(), Mode::Q);
        prop_assert_eq!(again.ctype, c.ctype);
    }

    #[test]
    fn affine_transport_preserves_type(t in canonical_type(), cov in affine_cov()) {
        prop_assert!(cov.is_inverse_pair());
        let g = cov.transport(&t.flag().unwrap()).unwrap();
        let c = classify_raw(&g, Mode::Q);
        if c.ctype.is_resolved() {
            prop_assert!(c.verified);
            prop_assert!(iso_decide_canonical(&c.ctype, &t).unwrap(), "{} as {} -> {}", t, g, c.ctype);
        }
    }
}
