//! Acceptance criteria, one PASS/FAIL line each. Exact comparisons only.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_integer::Integer;
use pfield::arith::{parse, Field};
use pfield::classify::{classify_flag, CanonicalType};
use pfield::flagbounds::{build_infinite_flag, dpb_upper_for_flag, BoundedElement};
use pfield::isomaut::{
    affine_iso_search, aut_group, dixmier_report, embed_decide, iso_family2, iso_family2_general,
    trivial_aut_criteria, AffineMap, EquivParams, GroupElement,
};
use pfield::logderiv::{solve_inverse_logderiv, PowerProduct, SplitPoly};
use pfield::poisson::{bracket, jacobiator, monomial_bracket, weyl_bracket};
use pfield::valuation::{height, mono_val, verify_witness, Height, MonomialValuation};
use pfield::{BiPoly, FactoredFlag, LinearForm, Mode, PoissonField, RatFunc2, Scalar, UniPoly};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

fn ensure(cond: bool, what: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn p(s: &str) -> RatFunc2 {
    parse(s, Mode::Q).unwrap()
}

fn field(s: &str) -> PoissonField {
    PoissonField::parse(s, Mode::Q).unwrap()
}

fn ff(s: &str) -> FactoredFlag {
    FactoredFlag::parse(s, Mode::Q).unwrap()
}

fn rand_scalar(rng: &mut StdRng) -> Scalar {
    Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn rand_poly(rng: &mut StdRng, deg: u32, terms: usize) -> BiPoly {
    loop {
        let n = rng.gen_range(1..=terms);
        let p = BiPoly::from_terms((0..n).map(|_| {
            let i = rng.gen_range(0..=deg);
            let j = rng.gen_range(0..=deg - i);
            ((i, j), rand_scalar(rng))
        }));
        if !p.is_zero() {
            return p;
        }
    }
}

fn rand_ratfunc(rng: &mut StdRng, deg: u32, terms: usize) -> RatFunc2 {
    RatFunc2::new(rand_poly(rng, deg, terms), rand_poly(rng, deg, terms)).unwrap()
}

fn jacobi_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..50 {
        let f = rand_ratfunc(&mut rng, 4, 3);
        let (a, b) = (RatFunc2::from_poly(rand_poly(&mut rng, 3, 3)), rand_ratfunc(&mut rng, 1, 2));
        let c = RatFunc2::from_poly(rand_poly(&mut rng, 2, 3));
        ensure(jacobiator(&f, &a, &b, &c).is_zero(), format!("case {i}: f = {f}"))?;
    }
    Ok(())
}

fn skew_fixture() -> Check {
    let s = p("1/(y - 1/y)");
    let f = &s * &p("x*y - 1/(x*y)");
    let g = &s * &p("x - 1/x");
    let gf = &g * &f;
    ensure(weyl_bracket(&g, &f) == &gf / &p("x*y"), "{g,f}_w")?;
    for q in [1, -2, 7] {
        let q = Scalar::int(q);
        ensure(bracket(&p("x*y").scale(&q), &g, &f) == gf.scale(&q), "{g,f} under q x y")?;
    }
    Ok(())
}

fn monomial_grid() -> Check {
    for flag in ["1", "2*x*y", "x^3*y", "x+y"] {
        let f = p(flag);
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    for d in -3..=3 {
                        let u = RatFunc2::monomial(Scalar::one(), a, b);
                        let v = RatFunc2::monomial(Scalar::one(), c, d);
                        ensure(monomial_bracket(&f, a, b, c, d) == bracket(&f, &u, &v), format!("{flag} ({a},{b},{c},{d})"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn classification() -> Check {
    let expect: [(&str, &dyn Fn(&CanonicalType) -> bool); 4] = [
        ("x*y*(y-1)", &|t| *t == CanonicalType::Kq(Scalar::one()) || *t == CanonicalType::Kq(Scalar::int(-1))),
        ("x*(y+2)^2", &|t| *t == CanonicalType::Weyl),
        ("(3*x+2)*x*y", &|t| *t == CanonicalType::Kq(Scalar::int(2)) || *t == CanonicalType::Kq(Scalar::int(-2))),
        ("x*y*(x+y)", &|t| *t == CanonicalType::Weyl),
    ];
    for (s, ok) in expect {
        let c = classify_flag(&field(s));
        ensure(ok(&c.ctype), format!("{s} -> {}", c.ctype))?;
        ensure(c.verified, format!("{s} not verified"))?;
    }
    Ok(())
}

fn logderiv() -> Check {
    let ints = |v: &[i64]| v.iter().map(|&a| Scalar::int(a)).collect::<Vec<_>>();
    let f = SplitPoly::new(Scalar::ratio(1, 2), ints(&[0, 1, -1])).unwrap();
    let s = solve_inverse_logderiv(&f).unwrap().ok_or("no solution for t(t-1)(t+1)/2")?;
    let want = PowerProduct { scale: Scalar::one(), factors: vec![(Scalar::zero(), -2), (Scalar::one(), 1), (Scalar::int(-1), 1)] };
    ensure(s.expand() == want.expand(), "s = t^-2 (t-1)(t+1)")?;
    let ld = s.expand().log_derivative().unwrap();
    ensure(ld.num.mul(&f.expand()) == ld.den, "s'/s f = 1")?;
    let f = SplitPoly::new(Scalar::one(), ints(&[0, 1, 3])).unwrap();
    ensure(solve_inverse_logderiv(&f).unwrap().is_none(), "t(t-1)(t-3) has no solution")?;
    let mut rng = StdRng::seed_from_u64(5);
    let pool: Vec<i64> = (-3..=3).collect();
    for i in 0..100 {
        let n = rng.gen_range(3..=4);
        let roots: Vec<i64> = pool.choose_multiple(&mut rng, n).copied().collect();
        let prods: Vec<i64> =
            roots.iter().map(|a| roots.iter().filter(|b| *b != a).map(|b| a - b).product()).collect();
        let l = prods.iter().fold(1i64, |acc, p| acc.lcm(p));
        let s = PowerProduct { scale: Scalar::one(), factors: roots.iter().map(|&a| Scalar::int(a)).zip(prods.iter().map(|p| l / p)).collect() };
        let f = SplitPoly::new(Scalar::ratio(1, l), ints(&roots)).unwrap();
        let found = solve_inverse_logderiv(&f).unwrap().ok_or(format!("round trip {i}: none"))?;
        ensure(found.expand() == s.expand(), format!("round trip {i}"))?;
    }
    Ok(())
}

fn affine_elements(g: &pfield::isomaut::GroupReport) -> Vec<AffineMap> {
    g.elements.iter().filter_map(|e| if let GroupElement::Affine(m) = e { Some(m.clone()) } else { None }).collect()
}

fn automorphisms() -> Check {
    let g = aut_group(&ff("x*y*(x^2-1)*(y^2-1)")).map_err(|e| e.to_string())?;
    ensure(g.order == Some(4), format!("order {:?}", g.order))?;
    ensure(g.checks_pass(), format!("{:?}", g.checks))?;
    let g = aut_group(&ff("x*y*(x+y)*(x+2*y)")).map_err(|e| e.to_string())?;
    let neg = AffineMap {
        c11: Scalar::int(-1),
        c12: Scalar::zero(),
        c21: Scalar::zero(),
        c22: Scalar::int(-1),
        c1: Scalar::zero(),
        c2: Scalar::zero(),
    };
    ensure(affine_elements(&g).contains(&neg), "(-x, -y) missing")?;
    ensure(g.finite_order() <= 48, "bound 48")?;
    ensure(g.checks_pass(), format!("{:?}", g.checks))
}

fn isomorphisms() -> Check {
    let shear = AffineMap {
        c11: Scalar::one(),
        c12: Scalar::one(),
        c21: Scalar::zero(),
        c22: Scalar::one(),
        c1: Scalar::zero(),
        c2: Scalar::zero(),
    };
    let maps = affine_iso_search(&ff("x*y*(x+y)*(x+2*y)"), &ff("y*(x+y)*(x+2*y)*(x+3*y)")).map_err(|e| e.to_string())?;
    ensure(maps.contains(&shear), "shear missing")?;
    let q = UniPoly::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
    let e = iso_family2(&q, &q, None).map_err(|e| e.to_string())?;
    let ep = |a: i64| EquivParams { a: Scalar::int(a), b: Scalar::zero(), e: 1 };
    ensure(e.len() == 2 && e.contains(&ep(1)) && e.contains(&ep(-1)), "x^2+1 equivalences")?;
    let mut rng = StdRng::seed_from_u64(7);
    let pool: Vec<i64> = (-4..=4).collect();
    for _ in 0..20 {
        let d = rng.gen_range(1..=4);
        let roots: Vec<Scalar> = pool.choose_multiple(&mut rng, d).map(|&a| Scalar::int(a)).collect();
        let p = UniPoly::from_roots(&roots);
        let e = iso_family2_general(&p, &p, None).map_err(|e| e.to_string())?;
        ensure(e.len() <= 2 * d * (d + 1), format!("|E_p| = {} for d = {d}", e.len()))?;
        ensure(e.iter().all(|c| c.holds(&p, &p)), "identity")?;
    }
    Ok(())
}

fn embeddings() -> Check {
    use CanonicalType::*;
    let k1n0 = |n| K1n0 { n, q: Scalar::one() };
    let kq = |q| Kq(Scalar::int(q));
    let r = embed_decide(&kq(6), &kq(2)).unwrap();
    let w = r.witness.ok_or("no witness for K_6 in K_2")?;
    ensure(r.embeds && w.verified && w.generators == (RatFunc2::x(), p("y^3")), "K_6 in K_2")?;
    ensure(!embed_decide(&kq(1), &kq(2)).unwrap().embeds, "K_1 in K_2")?;
    ensure(embed_decide(&k1n0(2), &k1n0(4)).unwrap().embeds, "K_{1,2,0} in K_{1,4,0}")?;
    ensure(!embed_decide(&k1n0(3), &k1n0(4)).unwrap().embeds, "K_{1,3,0} in K_{1,4,0}")?;
    for n in 2..=6u32 {
        let r = embed_decide(&Weyl, &k1n0(n)).unwrap();
        let w = r.witness.ok_or("no witness for Weyl")?;
        let gens = (RatFunc2::monomial(Scalar::one(), -(n as i64), 0), RatFunc2::y());
        ensure(r.embeds && w.verified && w.generators == gens, format!("Weyl in K_{{1,{n},0}}"))?;
        ensure(!embed_decide(&k1n0(n), &kq(3)).unwrap().embeds, format!("K_{{1,{n},0}} in K_q"))?;
    }
    ensure(!embed_decide(&kq(1), &Weyl).unwrap().embeds, "K_q in Weyl")
}

fn heights() -> Check {
    let mut cases: Vec<(String, Height, Height)> = vec![
        ("1".into(), Height::Finite(0), Height::NegInf),
        ("3*x*y".into(), Height::Finite(2), Height::Finite(2)),
        ("(x^2-1)*x*y".into(), Height::Finite(4), Height::Finite(4)),
        ("x*y*(x+y)*(x+2*y)".into(), Height::Finite(4), Height::Finite(4)),
    ];
    for n in 2..=5 {
        cases.push((format!("x^{}*y", n + 1), Height::Finite(n + 2), Height::Finite(n + 2)));
    }
    for (s, fht, vht) in cases {
        let k = field(&s);
        let r = height(&k).map_err(|e| format!("{s}: {e}"))?;
        ensure(r.flag_height == fht && r.valuation_height1 == Some(vht), format!("{s}: {:?} {:?}", r.flag_height, r.valuation_height1))?;
        if let Height::Finite(f) = fht {
            if f >= 2 {
                ensure(verify_witness(&k, MonomialValuation::new(-1, -1), f - 2), format!("{s}: witness"))?;
            }
        }
    }
    Ok(())
}

fn infinite_flag() -> Check {
    let h = BoundedElement::from_univariate(&p("(x-1)/(x*(x-2))"), Mode::Q).map_err(|e| e.to_string())?;
    let c = build_infinite_flag(&h, &UniPoly::monomial(Scalar::one(), 2)).map_err(|e| e.to_string())?;
    let r = height(&c.field(Mode::Q).unwrap()).map_err(|e| e.to_string())?;
    ensure(r.flag_height == Height::PosInf, "fht")?;
    for s in ["1", "x*y", "x^3*y", "(x^2-1)*x*y", "x*y*(x+y)*(x+2*y)", "x^4+y^3-2*x*y+7"] {
        let d = dpb_upper_for_flag(&p(s), Mode::Q).map_err(|e| e.to_string())?;
        ensure(d == 0 && c.excludes(d), format!("{s}: dpb {d}"))?;
    }
    Ok(())
}

fn dixmier() -> Check {
    for s in ["(x^2-1)*x*y", "x*y*(x+y)*(x+2*y)", "x*y*(x^2-1)*(y^2-1)"] {
        let r = dixmier_report(&field(s)).map_err(|e| e.to_string())?;
        ensure(r.verdict == Some(true), format!("{s}: {:?}", r.verdict))?;
    }
    for s in ["1", "5*x*y", "x^3*y"] {
        let r = dixmier_report(&field(s)).map_err(|e| e.to_string())?;
        let c = r.certificate.ok_or(format!("{s}: no certificate"))?;
        ensure(r.verdict == Some(false) && c.verified, format!("{s}: {:?}", r.verdict))?;
        if s == "x^3*y" {
            ensure(c.images == (p("2*x"), p("y^4")), "x^3 y endomorphism")?;
        }
    }
    Ok(())
}

fn valuation_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(12);
    for i in 0..100 {
        let nu = MonomialValuation::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let mut terms = BTreeMap::new();
        for _ in 0..rng.gen_range(1..6) {
            let c = loop {
                let c = rand_scalar(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            terms.insert((rng.gen_range(0u32..6), rng.gen_range(0u32..6)), c);
        }
        let brute = terms.keys().map(|&(a, b)| a as i64 * nu.z1 + b as i64 * nu.z2).min();
        let f = RatFunc2::from_poly(BiPoly::from_terms(terms));
        ensure(mono_val(nu, &f) == brute, format!("polynomial {i}"))?;
    }
    for i in 0..200 {
        let nu = MonomialValuation::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let (u, v) = (rand_ratfunc(&mut rng, 3, 3), rand_ratfunc(&mut rng, 3, 3));
        let (a, b) = (mono_val(nu, &u).unwrap(), mono_val(nu, &v).unwrap());
        ensure(mono_val(nu, &(&u * &v)) == Some(a + b), format!("pair {i}: product"))?;
        match mono_val(nu, &(&u + &v)) {
            None => ensure(a == b, format!("pair {i}: cancellation"))?,
            Some(s) => ensure(s >= a.min(b) && (a == b || s == a.min(b)), format!("pair {i}: sum"))?,
        }
    }
    Ok(())
}

fn qt_mode() -> Check {
    let t = Scalar::t();
    let xi = vec![Scalar::zero(), t.clone(), t.fpow(4)];
    let chi = vec![Scalar::zero(), t.fpow(2), t.fpow(5)];
    ensure(trivial_aut_criteria(&xi, &chi).map_err(|e| e.to_string())?.applies, "criteria")?;
    let forms: Vec<LinearForm> =
        xi.iter().map(|a| LinearForm::x_plus(a.clone())).chain(chi.iter().map(|b| LinearForm::y_plus(b.clone()))).collect();
    let g = aut_group(&FactoredFlag::from_forms(Scalar::one(), &forms)).map_err(|e| e.to_string())?;
    ensure(g.order == Some(1) && g.checks_pass(), format!("order {:?}", g.order))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("jacobi suite", jacobi_suite),
        ("skew pair fixture", skew_fixture),
        ("monomial bracket grid", monomial_grid),
        ("classification fixtures", classification),
        ("inverse logarithmic derivative", logderiv),
        ("automorphism groups", automorphisms),
        ("isomorphism search", isomorphisms),
        ("embedding table", embeddings),
        ("heights", heights),
        ("infinite flag", infinite_flag),
        ("dixmier verdicts", dixmier),
        ("valuation oracle", valuation_oracle),
        ("Q(t) mode", qt_mode),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
