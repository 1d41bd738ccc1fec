//! Isomorphism, automorphism, embedding and Dixmier questions for the
//! recognized families, and explicit Poisson subfields.

mod affine;
mod dixmier;
mod embed;
mod family2;
mod witness;

use std::fmt;

pub use affine::{affine_iso_search, aut_group, trivial_aut_criteria, AffineMap, TrivialAutCriteria};
pub use dixmier::{aut_family1_structure, dixmier_report, DixmierReport, Endomorphism};
pub use embed::{embed_decide, iso_decide, EmbedResult, IsoResult};
pub use family2::{aut_family2, iso_family2, iso_family2_general, roots_independent, EquivParams};
pub use witness::{subfield_witness, SubfieldWitness, WitnessKind};

use crate::arith::linalg::rank;
use crate::arith::upoly::UPoly;
use crate::arith::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Affine(AffineMap),
    Equiv(EquivParams),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Affine(m) => write!(f, "{m}"),
            GroupElement::Equiv(e) => write!(f, "{e}"),
        }
    }
}

/// A finite group of explicit elements, possibly extended by symbolic infinite factors.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupReport {
    pub elements: Vec<GroupElement>,
    pub infinite_factors: Vec<String>,
    /// `None` when the group is infinite.
    pub order: Option<usize>,
    pub exact_sequence: Option<String>,
    /// Identity present, closed under composition and inverse.
    pub closure_verified: bool,
    /// Proven upper bound on the finite part.
    pub bound: Option<u64>,
    /// Named checks against the structure theorems, with outcome.
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl GroupReport {
    pub fn finite_order(&self) -> usize {
        self.elements.len()
    }

    pub fn checks_pass(&self) -> bool {
        self.closure_verified && self.checks.iter().all(|c| c.1)
    }
}

/// Rank over Q of scalars in Q(t), viewed as vectors of coefficients after
/// clearing a common denominator.
pub fn q_rank(vals: &[Scalar]) -> usize {
    let den = vals.iter().fold(UPoly::<Rational>::one(), |acc, v| acc.mul(&v.parts().1));
    let vecs: Vec<UPoly<Rational>> =
        vals.iter().map(|v| { let (n, d) = v.parts(); n.mul(&den.div_exact(&d).expect("divides")) }).collect();
    let width = vecs.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let rows: Vec<Vec<Rational>> =
        vecs.iter().map(|p| (0..width).map(|i| p.coeff(i)).collect()).collect();
    if width == 0 {
        return 0;
    }
    rank(&rows)
}
