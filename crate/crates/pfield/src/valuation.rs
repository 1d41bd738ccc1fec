//! Monomial valuations, flabbiness, the cap of nonnegative elements, and
//! flag and valuation heights for the recognized families.

use std::fmt;

use crate::arith::{BiPoly, FactoredFlag, Field, RatFunc2};
use crate::classify::{recognize, CanonicalType, Recognized};
use crate::error::{Error, Result};
use crate::flagbounds::InfiniteFlagCertificate;
use crate::poisson::PoissonField;

/// `nu(x) = z1`, `nu(y) = z2`, extended by the minimum over terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialValuation {
    pub z1: i64,
    pub z2: i64,
}

impl MonomialValuation {
    pub fn new(z1: i64, z2: i64) -> Self {
        MonomialValuation { z1, z2 }
    }
}

impl fmt::Display for MonomialValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z1, self.z2)
    }
}

fn poly_val(nu: MonomialValuation, p: &BiPoly) -> Option<i64> {
    p.terms().map(|(&(i, j), _)| i as i64 * nu.z1 + j as i64 * nu.z2).min()
}

/// `nu(u)`; `None` stands for `+inf` (u = 0).
pub fn mono_val(nu: MonomialValuation, u: &RatFunc2) -> Option<i64> {
    Some(poly_val(nu, u.num())? - poly_val(nu, u.den())?)
}

/// Smallest `w` for which `nu` is a `w`-valuation on K{flag}: `z1 + z2 - nu(flag)`.
pub fn w_level(nu: MonomialValuation, flag: &RatFunc2) -> i64 {
    let v = mono_val(nu, flag).expect("flag must be nonzero");
    nu.z1 + nu.z2 - v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlabbyReport {
    pub flabby: bool,
    /// First factor (in `all_factors` order) with fewer than three independent partners.
    pub failing_index: Option<usize>,
}

/// Every factor has at least three factors with independent linear part.
pub fn is_flabby(f: &FactoredFlag) -> Result<FlabbyReport> {
    let forms = f.all_factors()?;
    if forms.iter().any(|(_, m)| *m != 1) {
        return Err(Error::NotDistinctForms);
    }
    for i in 0..forms.len() {
        if forms[i + 1..].iter().any(|(l, _)| *l == forms[i].0) {
            return Err(Error::NotDistinctForms);
        }
    }
    for (i, (li, _)) in forms.iter().enumerate() {
        let partners = forms.iter().filter(|(lj, _)| !li.det(lj).is_zero()).count();
        if partners < 3 {
            return Ok(FlabbyReport { flabby: false, failing_index: Some(i) });
        }
    }
    Ok(FlabbyReport { flabby: true, failing_index: None })
}

/// The ring of elements nonnegative under every 1-valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaRing {
    K,
    KX,
    KY,
    KXY,
}

impl fmt::Display for GammaRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GammaRing::K => "k",
            GammaRing::KX => "k[x]",
            GammaRing::KY => "k[y]",
            GammaRing::KXY => "k[x,y]",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaReport {
    pub ring: GammaRing,
    /// Flag on which the ring is read (the canonical presentation).
    pub presentation: RatFunc2,
    pub family: String,
    pub theorem: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    NegInf,
    Finite(i64),
    PosInf,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::NegInf => write!(f, "-inf"),
            Height::Finite(n) => write!(f, "{n}"),
            Height::PosInf => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    pub flag_height: Height,
    /// `None` when no value is proven.
    pub valuation_height1: Option<Height>,
    /// Witness valuation and its w-level on `presentation`.
    pub witness: Option<(MonomialValuation, i64)>,
    pub presentation: RatFunc2,
    /// `Some(true)` when proven, `None` when unknown.
    pub cohereditary: Option<bool>,
    pub family: String,
    pub theorem: &'static str,
    pub certificate: Option<InfiniteFlagCertificate>,
}

struct FamilyData {
    family: String,
    presentation: RatFunc2,
    fht: i64,
    vht1: Height,
    ring: GammaRing,
    gamma_thm: &'static str,
    height_thm: &'static str,
}

fn family_data(k: &PoissonField) -> Result<FamilyData> {
    let r = recognize(k)?;
    Ok(match r {
        Recognized::Canonical(c) => {
            let presentation = c.ctype.flag().expect("resolved");
            match c.ctype {
                CanonicalType::Weyl => FamilyData {
                    family: "Weyl".into(),
                    presentation,
                    fht: 0,
                    vht1: Height::NegInf,
                    ring: GammaRing::K,
                    gamma_thm: "weyl-gamma",
                    height_thm: "weyl-height",
                },
                CanonicalType::Kq(q) => FamilyData {
                    family: format!("Kq(q={q})"),
                    presentation,
                    fht: 2,
                    vht1: Height::Finite(2),
                    ring: GammaRing::K,
                    gamma_thm: "skew-gamma",
                    height_thm: "skew-height",
                },
                CanonicalType::K1n0 { n, q } => FamilyData {
                    family: format!("K1n0(n={n}, q={q})"),
                    presentation,
                    fht: n as i64 + 2,
                    vht1: Height::Finite(n as i64 + 2),
                    ring: GammaRing::KX,
                    gamma_thm: "monomial-gamma",
                    height_thm: "monomial-height",
                },
                _ => unreachable!(),
            }
        }
        Recognized::Family2 { p, flag, .. } => {
            let d = p.degree().unwrap_or(0) as i64;
            FamilyData {
                family: format!("p(x)xy with p = {}", p.fmt_var("x")),
                presentation: flag,
                fht: d + 2,
                vht1: Height::Finite(d + 2),
                ring: GammaRing::KX,
                gamma_thm: "family2-gamma",
                height_thm: "family2-height",
            }
        }
        Recognized::Family4 { flag, .. } => {
            let d = flag.degree();
            FamilyData {
                family: "f(x)g(y) split".into(),
                presentation: k.flag.clone(),
                fht: d,
                vht1: Height::Finite(d),
                ring: GammaRing::KXY,
                gamma_thm: "split-product-flabby",
                height_thm: "flabby-height",
            }
        }
        Recognized::Flabby(f) => {
            let d = f.degree();
            FamilyData {
                family: "flabby product of linear forms".into(),
                presentation: k.flag.clone(),
                fht: d,
                vht1: Height::Finite(d),
                ring: GammaRing::KXY,
                gamma_thm: "linear-forms-flabby",
                height_thm: "flabby-height",
            }
        }
    })
}

/// The ring of elements nonnegative under every 1-valuation, for the recognized families.
pub fn gamma1_zero(k: &PoissonField) -> Result<GammaReport> {
    if k.certificate.is_some() {
        return Err(Error::Unsupported("no cap value is known for this flag".into()));
    }
    let d = family_data(k)?;
    Ok(GammaReport { ring: d.ring, presentation: d.presentation, family: d.family, theorem: d.gamma_thm })
}

/// Flag height and 1-valuation height with a checked witness.
pub fn height(k: &PoissonField) -> Result<HeightReport> {
    if let Some(c) = &k.certificate {
        return Ok(HeightReport {
            flag_height: Height::PosInf,
            valuation_height1: None,
            witness: None,
            presentation: k.flag.clone(),
            cohereditary: None,
            family: "x y f(h)".into(),
            theorem: "bounded-denominator-obstruction",
            certificate: Some((**c).clone()),
        });
    }
    let d = family_data(k)?;
    let nu = MonomialValuation::new(-1, -1);
    let w = d.fht - 2;
    let witness = verify_witness_flag(&d.presentation, nu, w).then_some((nu, w));
    Ok(HeightReport {
        flag_height: Height::Finite(d.fht),
        valuation_height1: Some(d.vht1),
        witness,
        presentation: d.presentation,
        cohereditary: Some(true),
        family: d.family,
        theorem: d.height_thm,
        certificate: None,
    })
}

fn verify_witness_flag(flag: &RatFunc2, nu: MonomialValuation, claimed: i64) -> bool {
    if flag.is_zero() || w_level(nu, flag) != claimed {
        return false;
    }
    if nu == MonomialValuation::new(-1, -1) {
        if let Some(p) = flag.as_poly() {
            let d = p.total_degree().unwrap_or(0) as i64;
            return claimed == d - 2 && nu.z1 < 0 && nu.z2 < 0;
        }
    }
    true
}

/// `nu` is a non-classical `claimed`-valuation on K, and for `(-1,-1)` on a
/// polynomial flag of degree d the level is `d - 2`.
pub fn verify_witness(k: &PoissonField, nu: MonomialValuation, claimed: i64) -> bool {
    verify_witness_flag(&k.flag, nu, claimed)
}
