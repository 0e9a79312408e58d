//! Root-ordering criteria for the families whose real locus is studied by
//! projection from a real plane.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::exact::{isolate_real_roots, rat, IsolatedRoot, Rat, UPoly};
use crate::families::discriminant::{d1, d2, delta1, delta2, delta_2a3_2a1, delta_conic};
use crate::families::{build_cubic, FamilyId, LinearSubspace, ParamRecord, SubspaceKind};

use super::quadric::{quadric_bundle, QuadricBundle};
use super::BundleError;

/// Families with a printed connectedness criterion.
pub fn lemma_families() -> &'static [FamilyId] {
    use FamilyId::*;
    &[TwoD4MinusQ, TwoD4PlusQ, TwoA3TwoA1ThreePlanes, SixA1OneRealPlane, ConicLocus]
}

fn catalog_plane(family: FamilyId) -> Option<&'static str> {
    use FamilyId::*;
    Some(match family {
        TwoD4MinusQ | TwoD4PlusQ => "x3 = x4 = 0",
        TwoA3TwoA1ThreePlanes | ConicLocus => "x4 = x5 = 0",
        SixA1ThreeRealPlanes => "x1 = x2 = 0",
        SixA1OneRealPlane => "x2 = x1 = 0",
        TwoD4TwoA1 => "x3 = x5 = 0",
        _ => return None,
    })
}

/// Projection from the family's real plane, with the base chart used in
/// the printed fiber diagonalizations.
pub fn catalog_bundle(family: FamilyId, params: &ParamRecord) -> Result<QuadricBundle, BundleError> {
    let plane = catalog_plane(family).ok_or(BundleError::NoCatalogBundle)?;
    let f = build_cubic(family, params)?;
    quadric_bundle(&f, &LinearSubspace::parse(SubspaceKind::Plane, plane)?)
}

/// Real roots of `p`, or `None` when `p` has a repeated factor or its
/// degree is below `deg` (boundary draws).
fn simple_roots(p: &UPoly, deg: usize) -> Option<Vec<IsolatedRoot>> {
    if p.degree() != Some(deg) || p.squarefree_part().degree() != Some(deg) {
        return None;
    }
    isolate_real_roots(p).ok()
}

fn less(r: &IsolatedRoot, c: &Rat) -> bool {
    r.cmp_rational(c) == Ordering::Less
}

fn greater(r: &IsolatedRoot, c: &Rat) -> bool {
    r.cmp_rational(c) == Ordering::Greater
}

fn t6(params: &ParamRecord, family: FamilyId) -> Result<[Rat; 6], BundleError> {
    let r = params.resolve(family)?;
    Ok(std::array::from_fn(|k| r.v(&format!("t{}", k + 1)).clone()))
}

/// Two components iff D1 has four real roots, all below t5.
pub fn d1_two_components(t: &[Rat; 6]) -> Option<bool> {
    let roots = simple_roots(&d1(t), 4)?;
    Some(roots.len() == 4 && roots.iter().all(|r| less(r, &t[4])))
}

/// A real line disjoint from two of the three real planes exists iff
/// `t3 = −t5 t6` with `t1 + t2 t5 + t4 t5² + t5³ < 0`, or D1 has a real
/// root above t5.
pub fn d1_line_exists(t: &[Rat; 6]) -> Option<bool> {
    let [t1, t2, t3, t4, t5, t6] = t;
    let cubic_at_t5 = t1 + t2 * t5 + t4 * t5 * t5 + t5 * t5 * t5;
    if *t3 == -(t5 * t6) && cubic_at_t5.is_negative() {
        return Some(true);
    }
    let roots = simple_roots(&d1(t), 4)?;
    Some(roots.last().is_some_and(|r| greater(r, t5)))
}

/// Connected iff D2 has no real root, two real roots with α1 ≤ −t5, or four
/// with α3 ≤ −t5.
pub fn d2_connected(t: &[Rat; 6]) -> Option<bool> {
    let roots = simple_roots(&d2(t), 4)?;
    let m = -t[4].clone();
    let le = |r: &IsolatedRoot| r.cmp_rational(&m) != Ordering::Greater;
    Some(match roots.len() {
        0 => true,
        2 => le(&roots[0]),
        4 => le(&roots[2]),
        _ => return None,
    })
}

/// Disconnected iff Δ has three real roots and either t6 > 0 < α1, or
/// t6 < 0 and α3 < 0.
fn delta_2a3_2a1_disconnected(p: &ParamRecord) -> Result<Option<bool>, BundleError> {
    let r = p.resolve(FamilyId::TwoA3TwoA1ThreePlanes)?;
    let t6 = r.v("t6").clone();
    if t6.is_zero() {
        return Ok(None);
    }
    let b = [r.v("b1").clone(), r.v("b2").clone(), r.v("b3").clone(), r.v("b4").clone()];
    let Some(roots) = simple_roots(&delta_2a3_2a1(r.v("a"), &b, r.v("t2"), &t6), 3) else {
        return Ok(None);
    };
    let zero = Rat::zero();
    Ok(Some(roots.len() == 3 && ((t6.is_positive() && greater(&roots[0], &zero)) || (t6.is_negative() && less(&roots[2], &zero)))))
}

/// The three printed disconnection cases for Δ2.
fn delta2_disconnected(p: &ParamRecord) -> Result<Option<bool>, BundleError> {
    let r = p.resolve(FamilyId::SixA1OneRealPlane)?;
    let Some(roots) = simple_roots(&delta2(r.v("a"), r.v("a1"), r.v("a2"), r.v("a3")), 4) else {
        return Ok(None);
    };
    let (zero, four) = (Rat::zero(), rat(4));
    let inside = |k: usize| greater(&roots[k], &zero) && less(&roots[k], &four);
    Ok(Some(match roots.len() {
        2 => inside(0) && inside(1),
        4 => (inside(0) && inside(1)) || (less(&roots[0], &zero) && inside(2) && inside(3)),
        _ => false,
    }))
}

fn delta_conic_disconnected(p: &ParamRecord) -> Result<Option<bool>, BundleError> {
    let r = p.resolve(FamilyId::ConicLocus)?;
    let a: [Rat; 13] = std::array::from_fn(|k| r.v(&format!("a{}", k + 1)).clone());
    Ok(simple_roots(&delta_conic(&a), 4).map(|rs| rs.len() == 4))
}

/// Connectedness by the family's printed root-ordering criterion; `None`
/// when the discriminant has a repeated root or drops degree.
pub fn criterion_connected(family: FamilyId, params: &ParamRecord) -> Result<Option<bool>, BundleError> {
    use FamilyId::*;
    Ok(match family {
        TwoD4MinusQ => d1_two_components(&t6(params, family)?).map(|two| !two),
        TwoD4PlusQ => d2_connected(&t6(params, family)?),
        TwoA3TwoA1ThreePlanes => delta_2a3_2a1_disconnected(params)?.map(|d| !d),
        SixA1OneRealPlane => delta2_disconnected(params)?.map(|d| !d),
        ConicLocus => delta_conic_disconnected(params)?.map(|d| !d),
        _ => return Err(BundleError::NoCatalogBundle),
    })
}

/// The family's discriminant and the values its roots are compared with.
fn criterion_data(family: FamilyId, params: &ParamRecord) -> Result<(UPoly, Vec<Rat>), BundleError> {
    use FamilyId::*;
    let r = params.resolve(family)?;
    let v = |k: &str| r.v(k).clone();
    Ok(match family {
        TwoD4MinusQ => (d1(&t6(params, family)?), vec![v("t5")]),
        TwoD4PlusQ => (d2(&t6(params, family)?), vec![-v("t5")]),
        TwoA3TwoA1ThreePlanes => {
            if v("t6").is_zero() {
                return Ok((UPoly::zero(), vec![]));
            }
            let b = [v("b1"), v("b2"), v("b3"), v("b4")];
            (delta_2a3_2a1(&v("a"), &b, &v("t2"), &v("t6")), vec![Rat::zero()])
        }
        SixA1OneRealPlane => (delta2(&v("a"), &v("a1"), &v("a2"), &v("a3")), vec![Rat::zero(), rat(4)]),
        ConicLocus => {
            let a: [Rat; 13] = std::array::from_fn(|k| v(&format!("a{}", k + 1)));
            (delta_conic(&a), vec![])
        }
        _ => return Err(BundleError::NoCatalogBundle),
    })
}

/// The draw lies on a wall of the family's criterion: the discriminant
/// vanishes identically, has a repeated root, drops degree, or has a root
/// at one of the comparison values.
pub fn on_criterion_boundary(family: FamilyId, params: &ParamRecord) -> Result<bool, BundleError> {
    let (p, marks) = criterion_data(family, params)?;
    let full = if family == FamilyId::TwoA3TwoA1ThreePlanes { 3 } else { 4 };
    Ok(simple_roots(&p, full).is_none() || marks.iter().any(|m| p.eval(m).is_zero()))
}

/// Some Δ1 instance of the three-real-plane 6A1 form has a real root.
pub fn delta1_has_real_root(params: &ParamRecord) -> Result<bool, BundleError> {
    let r = params.resolve(FamilyId::SixA1ThreeRealPlanes)?;
    let (a, a1, a2, a3) = (r.v("a"), r.v("a1"), r.v("a2"), r.v("a3"));
    Ok([delta1(a, a1, a2, a3), delta1(a, a2, a1, a3), delta1(a, a3, a2, a1)]
        .iter()
        .any(|p| !isolate_real_roots(p).unwrap_or_default().is_empty()))
}
