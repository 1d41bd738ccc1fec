//! Exact arithmetic: scalars, polynomials, rational functions, parsing.

pub mod bipoly;
pub mod factored;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod print;
pub mod ratfunc;
pub mod scalar;
pub mod upoly;

pub use bipoly::BiPoly;
pub use factored::{FactoredFlag, LinearForm};
pub use field::{Field, Rational};
pub use parse::{parse, parse_expr, parse_scalar, parse_tpoly};
pub use print::print_canonical;
pub use ratfunc::RatFunc2;
pub use scalar::{Mode, Scalar};
pub use upoly::UPoly;

/// Univariate polynomials over the base field.
pub type UniPoly = UPoly<Scalar>;

/// Bivariate gcd, normalized.
pub fn gcd_bi(a: &BiPoly, b: &BiPoly) -> BiPoly {
    BiPoly::gcd(a, b)
}

/// Partial derivative in `x` (`var == 'x'`) or `y`.
pub fn partial_derivative(f: &RatFunc2, var: char) -> RatFunc2 {
    match var {
        'x' => f.dx(),
        'y' => f.dy(),
        _ => panic!("unknown variable {var}"),
    }
}
