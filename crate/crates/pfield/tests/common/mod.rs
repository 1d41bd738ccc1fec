#![allow(dead_code)]

use pfield::arith::Field;
use pfield::{BiPoly, RatFunc2, Scalar};
use proptest::prelude::*;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// Polynomials of total degree at most `deg` with at most `terms` terms.
pub fn bipoly(deg: u32, terms: usize) -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec(((0..=deg, 0..=deg), scalar()), 0..=terms).prop_map(move |v| {
        BiPoly::from_terms(v.into_iter().filter(|((i, j), _)| i + j <= deg))
    })
}

pub fn nonzero_bipoly(deg: u32, terms: usize) -> impl Strategy<Value = BiPoly> {
    bipoly(deg, terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc(deg: u32, terms: usize) -> impl Strategy<Value = RatFunc2> {
    (bipoly(deg, terms), nonzero_bipoly(deg, terms)).prop_map(|(n, d)| RatFunc2::new(n, d).unwrap())
}

pub fn nonzero_ratfunc(deg: u32, terms: usize) -> impl Strategy<Value = RatFunc2> {
    (nonzero_bipoly(deg, terms), nonzero_bipoly(deg, terms)).prop_map(|(n, d)| RatFunc2::new(n, d).unwrap())
}

/// Expression text in the input grammar, built from a random tree.
pub fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| n.to_string()),
        Just("x".to_string()),
        Just("y".to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), -2i64..=3).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner.clone(), 1i64..5).prop_map(|(a, k)| format!("({a})/(x + {k})")),
        ]
    })
}
