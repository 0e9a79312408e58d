use num_traits::{Signed, Zero};

use super::{FamilyError, FamilyId, ParamRecord, Resolved};
use crate::cubic::{CubicForm, ProjPoint};
use crate::exact::{fmt_rat, linalg, rat, ratio, Field, GaussRat, Rat};
use crate::singular::{conjugation_permutation, SingularityType};

/// The (q1, q2) pairs of binary quadratics in x4, x5 for the two-point
/// normal form, numbered row by row; `λ` is the free scalar of the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QPair(pub u32);

impl QPair {
    pub const COUNT: u32 = 10;

    /// Cells whose entries carry the scalar λ (which must then be positive).
    pub fn uses_lambda(self) -> bool {
        !matches!(self.0, 2 | 3)
    }

    /// `q1 + i q2` is the square of a linear form, which the A2 points of
    /// the two-point form need.
    pub fn rank_one(self, lambda: &Rat) -> bool {
        match self.0 {
            1 => true,
            8 => *lambda == ratio(1, 2),
            _ => false,
        }
    }

    /// `(q1, q2)` as polynomial strings.
    pub fn forms(self, lambda: &Rat) -> (String, String) {
        let l = paren(lambda);
        let (q1, q2) = match self.0 {
            1 => ("x4^2".into(), format!("{l}*x4^2")),
            2 => ("x4^2".into(), "x5^2".into()),
            3 => ("x4^2".into(), "x4*x5".into()),
            4 => ("x4^2".into(), format!("{l}*(x4^2 - x5^2)")),
            5 => ("x4^2".into(), format!("{l}*(x4^2 + x5^2)")),
            6 => ("x4*x5".into(), format!("{l}*x4*x5")),
            7 => ("x4*x5".into(), format!("{l}*x4*(x4 - x5)")),
            8 => ("x4*x5".into(), format!("{l}*(x4^2 - x5^2)")),
            9 => ("x4*x5".into(), format!("{l}*(x4^2 + x5^2)")),
            10 => ("x4^2 + x5^2".into(), format!("x4^2 + {l}*x5^2")),
            k => panic!("no q-pair cell {k}"),
        };
        (q1, q2)
    }
}

fn paren(r: &Rat) -> String {
    format!("({})", fmt_rat(r))
}

/// The cubic `f3` in x3, x4, x5 with coefficients t1..t10.
fn f3(p: &Resolved) -> String {
    let t = |k: usize| paren(p.v(&format!("t{k}")));
    format!(
        "{}*x3^3 + x3^2*({}*x4 + {}*x5) + x3*({}*x4^2 + {}*x5^2 + {}*x4*x5) + {}*x4^2*x5 + {}*x5^2*x4 + {}*x4^3 + {}*x5^3",
        t(1), t(2), t(3), t(4), t(5), t(6), t(7), t(8), t(9), t(10)
    )
}

const A3_QPAIR: (&str, &str) = ("x4*x5", "1/2*(x4^2 - x5^2)");

/// Normal-form equation of the family as a polynomial string.
pub(crate) fn normal_form_text(p: &Resolved) -> Result<String, FamilyError> {
    use FamilyId::*;
    let v = |k: &str| paren(p.v(k));
    let s = match p.family() {
        TwoA1 | TwoA2 => {
            let (q1, q2) = QPair(p.selector("qpair")).forms(p.v("lambda"));
            format!("(x1^2 + x2^2)*x3 + x1*({q1}) + x2*({q2}) + {}", f3(p))
        }
        TwoA3NoPlane | TwoA4 => {
            let (q1, q2) = A3_QPAIR;
            format!("(x1^2 + x2^2)*x3 + x1*({q1}) + x2*({q2}) + {}", f3(p))
        }
        TwoA5 => format!("(x1^2 + x2^2)*x3 + x3^3 + 1/2*x2*(x4^2 - x5^2) + x1*x4*x5 + {}*x3*(x4^2 + x5^2)", v("b")),
        TwoD4MinusQ | TwoD4PlusQ => {
            let q = if p.family() == TwoD4MinusQ { "x4^2 - x5^2" } else { "x4^2 + x5^2" };
            format!(
                "(x1^2 + x2^2)*x3 + {}*x3^3 + x3^2*({}*x4 + {}*x5) + x3*({}*x4^2 + {}*x5^2 + {}*x4*x5) + x4*({q})",
                v("t1"), v("t2"), v("t3"), v("t4"), v("t5"), v("t6")
            )
        }
        FourA1Gen | TwoA2TwoA1 | FourA2 => format!(
            "(x1 + x2)*(x3^2 + x4^2) + (x3 + x4)*(x1^2 + x2^2) + {}*x5^3 + x5^2*({}*x1 + {}*x2 + {}*x3 + {}*x4) + x5*({}*(x1*x3 + x2*x4) + {}*(x1*x4 + x2*x3))",
            v("a"), v("b1"), v("b2"), v("b3"), v("b4"), v("t1"), v("t2")
        ),
        TwoA3TwoA1ThreePlanes => format!(
            "x4*(x1^2 + x2^2) + {}*x5^3 + x5^2*({}*x1 + {}*x2 + {}*x3 + {}*x4) + x5*({}*(x1 + x2)*x4 + {}*(x3^2 + x4^2))",
            v("a"), v("b1"), v("b2"), v("b3"), v("b4"), v("t2"), v("t6")
        ),
        TwoA3TwoA1OnePlane => format!(
            "({}*x1 + {}*x2)*(x3^2 + x4^2) + ({}*x3 + {}*x4)*(x1^2 + x2^2) + {}*x5^3 + x5^2*({}*x1 + {}*x2 + {}*x3 + {}*x4) + x5*({}*x1*x3 + {}*x1*x4 + {}*x2*x3 + {}*x2*x4 + {}*(x1^2 + x2^2) + {}*(x3^2 + x4^2))",
            v("r1"), v("r2"), v("r3"), v("r4"), v("a"), v("b1"), v("b2"), v("b3"), v("b4"),
            v("t1"), v("t2"), v("t3"), v("t4"), v("t5"), v("t6")
        ),
        TwoD4TwoA1 => format!("(x1^2 + x2^2)*x3 + x5*(x3^2 + x4^2) + ({}*x3 + {}*x4)*x5^2 + {}*x5^3", v("b3"), v("b4"), v("a")),
        SixA1ThreeRealPlanes => format!(
            "x2*x3*x4 + {}*x1^3 + x1^2*({}*x2 + {}*x3 + {}*x4) + x1*(x2^2 + x3^2 + x4^2 + x5^2)",
            v("a"), v("a1"), v("a2"), v("a3")
        ),
        SixA1OneRealPlane => format!(
            "x2*(x3^2 + x4^2) + {}*x1^3 + x1^2*({}*x2 + {}*x3 + {}*x4) + x1*(x2^2 - x4*x5 + x5^2)",
            v("a"), v("a1"), v("a2"), v("a3")
        ),
        EightA1 => {
            let (s1, s2) = match p.selector("variant") {
                1 => ("+", "-"),
                2 => ("-", "+"),
                _ => ("+", "+"),
            };
            format!(
                "{}*(x1^2 {s1} x3^2)*x4 + x4*x5^2 + {}*(x2^2*x5 {s2} x3^2*x5 + x4^2*x5) + {}*x3*x4*x5",
                v("a1"), v("a2"), v("a3")
            )
        }
        ConicLocus => {
            let a = |k: usize| v(&format!("a{k}"));
            format!(
                "{}*x4^3 + {}*x4*x5^2 + {}*x4^2*x5 + {}*x5^3 + x1*({}*x4^2 + {}*x4*x5 + {}*x5^2) + x2*({}*x4^2 + {}*x4*x5 + {}*x5^2) + x3*({}*x4^2 + {}*x4*x5 + {}*x5^2) + x4*(x1^2 + x2^2 + x3^2)",
                a(1), a(2), a(3), a(4), a(5), a(6), a(7), a(8), a(9), a(10), a(11), a(12), a(13)
            )
        }
        Chordal => "x1^2*x2 + x1*x2^2 + x2*x3^2 + x1*x4^2 - 2*x3*x4*x5 - (x1 + x2)*x5^2".into(),
        f => return Err(FamilyError::NoNormalForm(f)),
    };
    Ok(s)
}

/// The normal form of `family` with the parameters substituted.
pub fn build_cubic(family: FamilyId, params: &ParamRecord) -> Result<CubicForm, FamilyError> {
    let r = params.resolve(family)?;
    build_resolved(&r)
}

pub(crate) fn build_resolved(r: &Resolved) -> Result<CubicForm, FamilyError> {
    Ok(CubicForm::parse(&normal_form_text(r)?)?)
}

fn point(s: &str) -> ProjPoint {
    ProjPoint::parse(s).expect("catalog point")
}

fn gauss_point(cs: [GaussRat; 5]) -> ProjPoint {
    ProjPoint::new(cs.to_vec()).expect("catalog point")
}

/// Exact square root of a nonnegative rational, if it is a square.
pub(crate) fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    let s = Rat::new(n, d);
    (&s * &s == *r).then_some(s)
}

/// Labeled singular points with their declared types.
#[derive(Clone, Debug)]
pub struct CatalogPoints {
    pub points: Vec<(String, ProjPoint, SingularityType)>,
    /// Set when some declared points lie outside ℚ(i) and were left out.
    pub note: Option<String>,
}

/// Declared singular points of the normal form. `None` for families
/// without a normal form and for non-isolated singular loci.
pub fn catalog_points(family: FamilyId, params: &ParamRecord) -> Result<Option<CatalogPoints>, FamilyError> {
    let r = params.resolve(family)?;
    Ok(catalog_points_resolved(&r))
}

pub(crate) fn catalog_points_resolved(r: &Resolved) -> Option<CatalogPoints> {
    use FamilyId::*;
    use SingularityType::*;
    let labeled = |pts: Vec<(&str, SingularityType)>| -> Vec<(String, ProjPoint, SingularityType)> {
        pts.into_iter().enumerate().map(|(k, (s, t))| (format!("p{}", k + 1), point(s), t)).collect()
    };
    let two = |t| labeled(vec![("[1:i:0:0:0]", t), ("[1:-i:0:0:0]", t)]);
    let four = |t12, t34| labeled(vec![("[1:i:0:0:0]", t12), ("[1:-i:0:0:0]", t12), ("[0:0:1:i:0]", t34), ("[0:0:1:-i:0]", t34)]);
    let points = match r.family() {
        TwoA1 => two(A(1)),
        TwoA2 => two(A(2)),
        TwoA3NoPlane => two(A(3)),
        TwoA4 => two(A(4)),
        TwoA5 => two(A(5)),
        TwoD4MinusQ | TwoD4PlusQ => two(D4),
        FourA1Gen => four(A(1), A(1)),
        TwoA2TwoA1 => four(A(2), A(1)),
        FourA2 => four(A(2), A(2)),
        TwoA3TwoA1ThreePlanes | TwoA3TwoA1OnePlane => four(A(3), A(1)),
        TwoD4TwoA1 => four(D4, A(1)),
        SixA1ThreeRealPlanes => labeled(
            ["[0:0:0:1:i]", "[0:0:0:1:-i]", "[0:1:0:0:i]", "[0:1:0:0:-i]", "[0:0:1:0:i]", "[0:0:1:0:-i]"].map(|s| (s, A(1))).to_vec(),
        ),
        SixA1OneRealPlane => labeled(
            ["[0:0:1:i:0]", "[0:0:1:i:i]", "[0:1:0:0:i]", "[0:1:0:0:-i]", "[0:0:1:-i:0]", "[0:0:1:-i:-i]"].map(|s| (s, A(1))).to_vec(),
        ),
        EightA1 => return Some(eight_a1_points(r)),
        _ => return None,
    };
    Some(CatalogPoints { points, note: None })
}

/// The eight nodes of the 8A1 forms in the labeling of the plane incidence
/// table. Two of them are `[1:0:0:0:±i√a1]`; when `a1` is not a rational
/// square those two are omitted.
fn eight_a1_points(r: &Resolved) -> CatalogPoints {
    let labels = eight_a1_point_labels(r.selector("variant"));
    let a1 = r.v("a1");
    let c = rat_sqrt(a1);
    let mut points = Vec::new();
    for (k, spec) in labels.iter().enumerate() {
        let p = match spec {
            PointSpec::Fixed(s) => point(s),
            PointSpec::OnX5(sgn) => match &c {
                Some(c) => {
                    let z = GaussRat::zero();
                    gauss_point([GaussRat::real(rat(1)), z.clone(), z.clone(), z, GaussRat::new(Rat::zero(), c * rat(*sgn))])
                }
                None => continue,
            },
        };
        points.push((format!("p{}", k + 1), p, SingularityType::A(1)));
    }
    let note = c.is_none().then(|| format!("a1 = {} is not a rational square; p3, p4 lie outside Q(i) and are not audited", fmt_rat(a1)));
    CatalogPoints { points, note }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum PointSpec {
    Fixed(&'static str),
    /// `[1:0:0:0:sgn·i√a1]`
    OnX5(i64),
}

/// Point list p1..p8 for each 8A1 variant, ordered so that the planes are
/// Π1 ⊃ {1,2,6,8}, Π2 ⊃ {1,2,5,7}, Π3 ⊃ {5,6,7,8}, Π4 ⊃ {3,4,5,6},
/// Π5 ⊃ {3,4,7,8}.
pub(crate) fn eight_a1_point_labels(variant: u32) -> [PointSpec; 8] {
    use PointSpec::*;
    match variant {
        1 => [
            Fixed("[0:1:0:-i:0]"), Fixed("[0:1:0:i:0]"), OnX5(-1), OnX5(1),
            Fixed("[1:-i:-i:0:0]"), Fixed("[1:i:i:0:0]"), Fixed("[1:i:-i:0:0]"), Fixed("[1:-i:i:0:0]"),
        ],
        2 => [
            Fixed("[0:1:0:-i:0]"), Fixed("[0:1:0:i:0]"), OnX5(-1), OnX5(1),
            Fixed("[1:-i:-1:0:0]"), Fixed("[1:i:1:0:0]"), Fixed("[1:i:-1:0:0]"), Fixed("[1:-i:1:0:0]"),
        ],
        _ => [
            OnX5(-1), OnX5(1), Fixed("[0:1:0:-i:0]"), Fixed("[0:1:0:i:0]"),
            Fixed("[1:-1:-i:0:0]"), Fixed("[1:1:-i:0:0]"), Fixed("[1:1:i:0:0]"), Fixed("[1:-1:i:0:0]"),
        ],
    }
}

/// The eight points with `√a1` replaced by 1; used for the conjugation
/// combinatorics, which do not depend on `a1 > 0`.
pub(crate) fn eight_a1_combinatorial_points(variant: u32) -> Vec<ProjPoint> {
    eight_a1_point_labels(variant)
        .iter()
        .map(|s| match s {
            PointSpec::Fixed(s) => point(s),
            PointSpec::OnX5(sgn) => {
                let z = GaussRat::zero();
                gauss_point([GaussRat::real(rat(1)), z.clone(), z.clone(), z, GaussRat::new(Rat::zero(), rat(*sgn))])
            }
        })
        .collect()
}

/// Complex conjugation on p1..p8 of an 8A1 variant, as 1-based images.
pub fn eight_a1_conjugation(variant: u32) -> [usize; 8] {
    let (perm, _) = conjugation_permutation(&eight_a1_combinatorial_points(variant)).expect("the eight points are closed under conjugation");
    std::array::from_fn(|k| perm[k] + 1)
}

/// Fills the parameters that the family's defining equalities determine
/// from the free ones: t9, t10 (A3 relations), t4, t6 (A4 relations),
/// b1, b2 (2A2+2A1), b1..b4 (4A2; `strict` selects the literal reading),
/// and b1, b2, a, b4 for the one-plane 2A3+2A1 form (corank one and a
/// vanishing cubic term at p1). Returns `None` when the one-plane system is
/// degenerate for the given free parameters.
pub fn complete_constraints(family: FamilyId, params: &ParamRecord, strict: bool) -> Option<ParamRecord> {
    use FamilyId::*;
    let mut out = params.clone();
    let get = |name: &str| params.get(name).cloned().unwrap_or_else(|| family.defaults().get(name).cloned().unwrap_or_else(Rat::zero));
    match family {
        TwoA2 if get("qpair") == rat(8) => out.set("lambda", ratio(1, 2)),
        TwoA3NoPlane | TwoA4 => {
            out.set("t9", get("t8"));
            out.set("t10", get("t7"));
            if family == TwoA4 {
                let (t5, t7, t8) = (get("t5"), get("t7"), get("t8"));
                out.set("t6", rat(-8) * &t7 * &t8);
                out.set("t4", &t5 + rat(4) * &t7 * &t7 - rat(4) * &t8 * &t8);
            }
        }
        TwoA2TwoA1 => {
            let d = get("t1") - get("t2");
            let b = -(&d * &d) / rat(8);
            out.set("b1", b.clone());
            out.set("b2", b);
        }
        FourA2 => {
            let d = get("t1") - get("t2");
            let q = &d * &d / rat(8);
            if strict {
                let b = get("b1");
                out.set("b2", b.clone());
                out.set("b3", b.clone());
                out.set("b4", b + q);
            } else {
                for k in ["b1", "b2", "b3", "b4"] {
                    out.set(k, -q.clone());
                }
            }
        }
        TwoA3TwoA1OnePlane => {
            let solved = one_plane_solve(&get)?;
            for (k, v) in solved {
                out.set(k, v);
            }
        }
        _ => {}
    }
    Some(out)
}

/// Solves for (b1, b2, a, b4) in the four-point normal form so that p1 has
/// corank one with vanishing cubic term along the kernel (type A≥3).
fn one_plane_solve(get: &dyn Fn(&str) -> Rat) -> Option<Vec<(&'static str, Rat)>> {
    let g = |re: Rat, im: Rat| GaussRat::new(re, im);
    let i = GaussRat::i();
    let half = ratio(1, 2);
    let (r1, r2, r3, r4) = (get("r1"), get("r2"), get("r3"), get("r4"));
    let t: Vec<Rat> = (1..=6).map(|k| get(&format!("t{k}"))).collect();
    let rho = g(r1.clone(), r2.clone());
    // Quadratic form of the germ at p1 in (y2, x3, x4, x5), x2 = i + y2.
    let build_h = |z: &GaussRat| -> Vec<Vec<GaussRat>> {
        let e13 = g(&t[0] * &half, &t[2] * &half);
        let e23 = g(&t[1] * &half, &t[3] * &half);
        let it5 = i.clone() * GaussRat::real(t[4].clone());
        vec![
            vec![GaussRat::zero(), i.clone() * GaussRat::real(r3.clone()), i.clone() * GaussRat::real(r4.clone()), it5.clone()],
            vec![i.clone() * GaussRat::real(r3.clone()), rho.clone(), GaussRat::zero(), e13.clone()],
            vec![i.clone() * GaussRat::real(r4.clone()), GaussRat::zero(), rho.clone(), e23.clone()],
            vec![it5, e13, e23, z.clone()],
        ]
    };
    let cof = rho.clone() * GaussRat::real(&r3 * &r3 + &r4 * &r4);
    let d0 = det4(&build_h(&GaussRat::zero()));
    let z = -(d0 * cof.inverse()?);
    let h = build_h(&z);
    let ker = linalg::kernel(&h);
    if ker.len() != 1 {
        return None;
    }
    let v = &ker[0];
    let (vy, v3, v4, v5) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    let re = |x: Rat| GaussRat::real(x);
    let b2 = z.im.clone();
    let b3 = get("b3");
    // cubic part of the germ at v, without the a and b4 terms
    let sq34 = v3.clone() * v3.clone() + v4.clone() * v4.clone();
    let fixed = re(r2.clone()) * vy.clone() * sq34.clone()
        + (re(r3.clone()) * v3.clone() + re(r4.clone()) * v4.clone()) * vy.clone() * vy.clone()
        + v5.clone() * v5.clone() * (re(b2.clone()) * vy.clone() + re(b3) * v3.clone())
        + v5.clone()
            * (re(t[2].clone()) * vy.clone() * v3.clone()
                + re(t[3].clone()) * vy.clone() * v4.clone()
                + re(t[4].clone()) * vy.clone() * vy.clone()
                + re(t[5].clone()) * sq34);
    let ca = v5.clone() * v5.clone() * v5.clone();
    let cb = v4 * v5.clone() * v5;
    // a·ca + b4·cb = -fixed with a, b4 real
    let m = vec![vec![ca.re.clone(), cb.re.clone()], vec![ca.im.clone(), cb.im.clone()]];
    let sol = linalg::solve(&m, &[-fixed.re.clone(), -fixed.im.clone()])?;
    if linalg::rank(&m) < 2 {
        return None;
    }
    Some(vec![("b1", z.re.clone()), ("b2", b2), ("a", sol[0].clone()), ("b4", sol[1].clone())])
}

fn det4<C: Field>(m: &[Vec<C>]) -> C {
    // Laplace expansion is plenty for 4×4
    fn det<C: Field>(m: &[Vec<C>]) -> C {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = C::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<C>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = m[0][j].clone() * det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    det(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular::{ade_type, is_singular_at, DEFAULT_ADE_CAP};

    #[test]
    fn printed_forms() {
        let f = build_cubic(FamilyId::TwoA5, &ParamRecord::parse("b=0").unwrap()).unwrap();
        assert_eq!(f, CubicForm::parse("(x1^2+x2^2)x3 + x3^3 + 1/2 x2 (x4^2 - x5^2) + x1 x4 x5").unwrap());
        let c = build_cubic(FamilyId::Chordal, &ParamRecord::default()).unwrap();
        assert_eq!(c, CubicForm::parse("x1^2 x2 + x1 x2^2 + x2 x3^2 + x1 x4^2 - 2 x3 x4 x5 - (x1+x2) x5^2").unwrap());
        let d = build_cubic(FamilyId::TwoD4TwoA1, &ParamRecord::parse("a=1,b3=0,b4=0").unwrap()).unwrap();
        assert_eq!(d, CubicForm::parse("(x1^2 + x2^2)x3 + x5(x3^2 + x4^2) + x5^3").unwrap());
        assert!(matches!(build_cubic(FamilyId::SixA1NoPlane, &ParamRecord::default()), Err(FamilyError::NoNormalForm(_))));
    }

    #[test]
    fn one_plane_default_is_a_solution() {
        let p = complete_constraints(FamilyId::TwoA3TwoA1OnePlane, &ParamRecord::default(), false).unwrap();
        let want = FamilyId::TwoA3TwoA1OnePlane.defaults();
        for k in ["b1", "b2", "a", "b4"] {
            assert_eq!(p.get(k), want.get(k), "{k}");
        }
    }

    #[test]
    fn defaults_have_declared_types() {
        for &fam in FamilyId::ALL {
            let Ok(f) = build_cubic(fam, &ParamRecord::default()) else { continue };
            let Some(cat) = catalog_points(fam, &ParamRecord::default()).unwrap() else { continue };
            for (label, p, t) in &cat.points {
                assert!(is_singular_at(&f, p), "{fam} {label}");
                assert_eq!(ade_type(&f, p, DEFAULT_ADE_CAP).unwrap(), *t, "{fam} {label}");
            }
        }
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rat_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rat_sqrt(&rat(2)), None);
        assert_eq!(rat_sqrt(&rat(-4)), None);
    }
}
