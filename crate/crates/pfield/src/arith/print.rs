//! Canonical text form of rational functions. Output parses back to the
//! same value.

use super::bipoly::BiPoly;
use super::field::Field;
use super::ratfunc::RatFunc2;

fn den_is_atomic(d: &BiPoly) -> bool {
    match d.as_monomial() {
        Some((c, i, j)) => c.is_one() && (i == 0 || j == 0),
        None => false,
    }
}

pub fn print_poly(p: &BiPoly) -> String {
    p.fmt_terms()
}

pub fn print_canonical(f: &RatFunc2) -> String {
    let n = f.num().fmt_terms();
    if f.den().is_one() {
        return n;
    }
    let n = if f.num().num_terms() > 1 { format!("({n})") } else { n };
    let d = f.den().fmt_terms();
    if den_is_atomic(f.den()) {
        format!("{n}/{d}")
    } else {
        format!("{n}/({d})")
    }
}
