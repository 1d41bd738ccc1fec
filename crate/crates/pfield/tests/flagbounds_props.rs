mod common;

use pfield::arith::Field;
use pfield::flagbounds::{bounds_certified, build_infinite_flag, BoundedElement};
use pfield::valuation::{height, Height};
use pfield::{Mode, RatFunc2, Scalar, UniPoly};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Distinct integer shifts split into numerator and denominator roots, with
/// at most `w + 1` numerator roots.
fn shifts() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (subsequence((-6i64..=6).collect::<Vec<_>>(), 1..=6).prop_shuffle(), any::<prop::sample::Index>())
        .prop_map(|(all, cut)| {
            let nb = 1 + cut.index(all.len());
            let (b, a) = all.split_at(nb);
            let a: Vec<i64> = a.iter().copied().take(nb).collect();
            (a, b.to_vec())
        })
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| Scalar::int(n)).collect()
}

/// `h(1/s + b0)` computed factor by factor:
/// `s^(|b| - |a|) prod (1 + (b0 - a_i) s) / prod_{j >= 1} (1 + (b0 - b_j) s)`.
fn framed_oracle(a: &[i64], b: &[i64]) -> RatFunc2 {
    let s = RatFunc2::x();
    let lin = |c: i64| &RatFunc2::one() + &s.scale(&Scalar::int(b[0] - c));
    let num = a.iter().fold(RatFunc2::one(), |acc, &c| &acc * &lin(c));
    let den = b[1..].iter().fold(RatFunc2::one(), |acc, &c| &acc * &lin(c));
    &(&num / &den) * &s.pow(b.len() as i64 - a.len() as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn framed_denominator_degree_is_w((a, b) in shifts()) {
        let h = BoundedElement::new(RatFunc2::x(), scalars(&a), scalars(&b)).unwrap();
        let r = bounds_certified(&h);
        let w = b.len() as i64 - 1;
        prop_assert_eq!(r.dpb_lower, w);
        prop_assert_eq!(r.ddb_exact, Some(w));
        prop_assert_eq!(r.dpb_exact, Some(w));
        let framed = r.framed.unwrap();
        prop_assert_eq!(framed.den().total_degree(), Some(w as u32));
        prop_assert_eq!(framed, framed_oracle(&a, &b));
    }

    #[test]
    fn certificate_flags_have_infinite_height((a, b) in shifts(), deg in 2usize..4, c0 in -3i64..=3) {
        prop_assume!(b.len() >= 2);
        let h = BoundedElement::new(RatFunc2::x(), scalars(&a), scalars(&b)).unwrap();
        let mut coeffs = vec![Scalar::int(c0)];
        coeffs.extend((1..deg).map(|i| Scalar::int(i as i64)));
        coeffs.push(Scalar::one());
        let f = UniPoly::from_coeffs(coeffs);
        let cert = build_infinite_flag(&h, &f).unwrap();
        let w = b.len() as i64 - 1;
        prop_assert_eq!(cert.w_threshold, w);
        prop_assert_eq!(cert.gamma_degree, deg - 1);
        prop_assert!(!cert.flag.is_polynomial());
        for d in 0..w + 2 {
            prop_assert_eq!(cert.excludes(d), d < w);
        }
        // x y f(h) at sample points
        for (px, py) in [(7i64, 2i64), (-9, 3), (11, -4)] {
            let (sx, sy) = (Scalar::int(px), Scalar::int(py));
            let hv = h.expand().eval(&sx, &sy).unwrap();
            let fv = f.eval(&hv);
            prop_assert_eq!(cert.flag.eval(&sx, &sy).unwrap(), &(&sx * &sy) * &fv);
        }
        let rep = height(&cert.field(Mode::Q).unwrap()).unwrap();
        prop_assert_eq!(rep.flag_height, Height::PosInf);
        prop_assert!(rep.certificate.is_some());
    }
}
