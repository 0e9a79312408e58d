use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::build::{build_resolved, catalog_points_resolved, eight_a1_combinatorial_points, rat_sqrt};
use super::{FamilyError, FamilyId, ParamRecord};
use crate::cubic::{CubicForm, ProjPoint};
use crate::exact::{linalg, p4_vars, rat, vars, GaussPoly, GaussRat, MultiPoly};
use crate::singular::conjugation_permutation;

/// Plane/point incidence of the 8A1 configuration (1-based point labels).
pub fn eight_a1_incidence() -> [[usize; 4]; 5] {
    [[1, 2, 6, 8], [1, 2, 5, 7], [5, 6, 7, 8], [3, 4, 5, 6], [3, 4, 7, 8]]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogPlane {
    pub label: String,
    /// Two linear forms over ℚ(i); empty when the plane is not defined
    /// over ℚ(i) for these parameters.
    #[serde(serialize_with = "ser_forms")]
    pub equations: Vec<Vec<GaussRat>>,
    pub real: bool,
}

fn ser_forms<S: serde::Serializer>(eqs: &[Vec<GaussRat>], s: S) -> Result<S::Ok, S::Error> {
    let txt: Vec<String> = eqs
        .iter()
        .map(|e| {
            let p = e.iter().enumerate().fold(MultiPoly::zero(p4_vars()), |acc, (i, c)| {
                &acc + &MultiPoly::var(p4_vars(), i).scale(c)
            });
            p.to_string()
        })
        .collect();
    s.collect_seq(txt)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlaneReport {
    pub planes: Vec<CatalogPlane>,
    pub real_count: usize,
}

impl PlaneReport {
    fn new(planes: Vec<CatalogPlane>) -> Self {
        let real_count = planes.iter().filter(|p| p.real).count();
        PlaneReport { planes, real_count }
    }
}

fn g(re: i64, im: i64) -> GaussRat {
    GaussRat::new(rat(re), rat(im))
}

fn form(cs: [GaussRat; 5]) -> Vec<GaussRat> {
    cs.to_vec()
}

fn e(i: usize) -> Vec<GaussRat> {
    (0..5).map(|k| if k == i { GaussRat::one() } else { GaussRat::zero() }).collect()
}

fn plane(label: &str, eqs: Vec<Vec<GaussRat>>) -> CatalogPlane {
    let real = eqs.is_empty() || is_real_span(&eqs);
    CatalogPlane { label: label.into(), equations: eqs, real }
}

/// The span of the forms equals the span of their conjugates.
fn is_real_span(eqs: &[Vec<GaussRat>]) -> bool {
    let all: Vec<Vec<GaussRat>> = eqs.iter().cloned().chain(eqs.iter().map(|r| r.iter().map(|c| c.conj()).collect())).collect();
    linalg::rank(&all) == linalg::rank(&eqs.to_vec())
}

/// Catalog planes of the family and which of them are real.
pub fn real_planes_in_x3_section(family: FamilyId, params: &ParamRecord) -> Result<PlaneReport, FamilyError> {
    use FamilyId::*;
    let r = params.resolve(family)?;
    let z = GaussRat::zero;
    let planes = match family {
        TwoD4MinusQ => vec![
            plane("Pi1", vec![e(2), e(3)]),
            plane("Pi2", vec![e(2), form([z(), z(), z(), g(1, 0), g(1, 0)])]),
            plane("Pi3", vec![e(2), form([z(), z(), z(), g(1, 0), g(-1, 0)])]),
        ],
        TwoD4PlusQ => vec![
            plane("Pi1", vec![e(2), e(3)]),
            plane("Pi2", vec![e(2), form([z(), z(), z(), g(1, 0), g(0, 1)])]),
            plane("Pi3", vec![e(2), form([z(), z(), z(), g(1, 0), g(0, -1)])]),
        ],
        TwoD4TwoA1 => {
            let (a, b4) = (r.v("a").clone(), r.v("b4").clone());
            let disc = &b4 * &b4 - rat(4) * &a;
            let pair = |sgn: i64| -> CatalogPlane {
                let label = if sgn > 0 { "Pi3" } else { "Pi5" };
                let coeff = if disc.is_negative() {
                    rat_sqrt(&-disc.clone()).map(|s| GaussRat::new(b4.clone(), s * rat(sgn)))
                } else {
                    rat_sqrt(&disc).map(|s| GaussRat::real(&b4 + s * rat(sgn)))
                };
                match coeff {
                    Some(c) => plane(label, vec![e(2), form([z(), z(), z(), g(2, 0), c])]),
                    None => CatalogPlane { label: label.into(), equations: vec![], real: disc.is_positive() },
                }
            };
            vec![
                plane("Pi1", vec![form([g(1, 0), g(0, 1), z(), z(), z()]), e(4)]),
                plane("Pi2", vec![form([g(1, 0), g(0, -1), z(), z(), z()]), e(4)]),
                pair(1),
                plane("Pi4", vec![e(2), e(4)]),
                pair(-1),
            ]
        }
        SixA1ThreeRealPlanes => vec![plane("Pi1", vec![e(0), e(1)]), plane("Pi2", vec![e(0), e(2)]), plane("Pi3", vec![e(0), e(3)])],
        SixA1OneRealPlane => vec![
            plane("Pi1", vec![e(0), e(1)]),
            plane("Pi2", vec![e(0), form([z(), z(), g(1, 0), g(0, 1), z()])]),
            plane("Pi3", vec![e(0), form([z(), z(), g(1, 0), g(0, -1), z()])]),
        ],
        EightA1 => {
            let variant = r.selector("variant");
            let comb = eight_a1_combinatorial_points(variant);
            let (iota, _) = conjugation_permutation(&comb).expect("closed point set");
            let actual = catalog_points_resolved(&r).expect("8A1 points");
            let full = actual.points.len() == 8;
            eight_a1_incidence()
                .iter()
                .enumerate()
                .map(|(k, pts)| {
                    let mut image: Vec<usize> = pts.iter().map(|&p| iota[p - 1] + 1).collect();
                    image.sort();
                    let real = image == pts.to_vec();
                    let equations = if full {
                        plane_through(&pts[..3].iter().map(|&p| actual.points[p - 1].1.clone()).collect::<Vec<_>>())
                    } else {
                        vec![]
                    };
                    CatalogPlane { label: format!("Pi{}", k + 1), equations, real }
                })
                .collect()
        }
        TwoA3TwoA1ThreePlanes | TwoA3TwoA1OnePlane => {
            let f = build_resolved(&r)?;
            let pts: Vec<ProjPoint> = catalog_points_resolved(&r).expect("points").points.into_iter().map(|(_, p, _)| p).collect();
            let mut found: Vec<CatalogPlane> = planes_through_points(&f, &pts)
                .into_iter()
                .map(|(on, eqs)| {
                    let names: Vec<String> = on.iter().map(|k| format!("p{}", k + 1)).collect();
                    plane(&format!("<{}>", names.join(",")), eqs)
                })
                .collect();
            let base = vec![e(3), e(4)];
            if plane_in_cubic(&f, &base) {
                found.push(plane("{x4=x5=0}", base));
            }
            found
        }
        f => return Err(FamilyError::NoPlanes(f)),
    };
    Ok(PlaneReport::new(planes))
}

/// Two linear forms cutting out the plane spanned by three points.
pub(crate) fn plane_through(points: &[ProjPoint]) -> Vec<Vec<GaussRat>> {
    let m: Vec<Vec<GaussRat>> = points.iter().map(|p| p.coords().to_vec()).collect();
    linalg::kernel(&m)
}

/// `f` vanishes identically on the plane cut out by `eqs`.
pub fn plane_in_cubic(f: &CubicForm, eqs: &[Vec<GaussRat>]) -> bool {
    let basis = linalg::kernel(&eqs.to_vec());
    if basis.len() != 3 {
        return false;
    }
    let uvw = vars(&["u", "v", "w"]);
    let subs: Vec<GaussPoly> = (0..5)
        .map(|i| (0..3).fold(MultiPoly::zero(uvw.clone()), |acc, k| &acc + &MultiPoly::var(uvw.clone(), k).scale(&basis[k][i])))
        .collect();
    f.poly().substitute(&subs, None).is_zero()
}

/// Planes contained in `f` that are spanned by three of the given points,
/// each with the indices of all given points lying on it.
pub fn planes_through_points(f: &CubicForm, points: &[ProjPoint]) -> Vec<(Vec<usize>, Vec<Vec<GaussRat>>)> {
    let n = points.len();
    let mut out: Vec<(Vec<usize>, Vec<Vec<GaussRat>>)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let eqs = plane_through(&[points[i].clone(), points[j].clone(), points[k].clone()]);
                if eqs.len() != 2 || !plane_in_cubic(f, &eqs) {
                    continue;
                }
                let on: Vec<usize> = (0..n)
                    .filter(|&m| eqs.iter().all(|e| e.iter().zip(points[m].coords()).fold(GaussRat::zero(), |acc, (a, b)| acc + a.clone() * b.clone()).is_zero()))
                    .collect();
                if !out.iter().any(|(o, _)| o == &on) {
                    out.push((on, eqs));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(f: FamilyId, s: &str) -> usize {
        real_planes_in_x3_section(f, &ParamRecord::parse(s).unwrap()).unwrap().real_count
    }

    #[test]
    fn printed_plane_counts() {
        assert_eq!(count(FamilyId::TwoD4TwoA1, "a=1,b4=3"), 3);
        assert_eq!(count(FamilyId::TwoD4TwoA1, "a=1,b4=0"), 1);
        assert_eq!(count(FamilyId::TwoD4MinusQ, ""), 3);
        assert_eq!(count(FamilyId::TwoD4PlusQ, ""), 1);
        assert_eq!(count(FamilyId::SixA1ThreeRealPlanes, ""), 3);
        assert_eq!(count(FamilyId::SixA1OneRealPlane, ""), 1);
        assert_eq!(count(FamilyId::EightA1, "variant=1"), 3);
        assert_eq!(count(FamilyId::EightA1, "variant=2"), 3);
        assert_eq!(count(FamilyId::EightA1, "variant=3"), 1);
        assert_eq!(count(FamilyId::TwoA3TwoA1ThreePlanes, ""), 1);
    }

    #[test]
    fn catalog_planes_lie_in_the_cubic() {
        for (fam, s) in [
            (FamilyId::TwoD4MinusQ, "t1=2,t3=1"),
            (FamilyId::TwoD4PlusQ, "t2=1"),
            (FamilyId::TwoD4TwoA1, "a=2,b4=3"),
            (FamilyId::SixA1ThreeRealPlanes, ""),
            (FamilyId::SixA1OneRealPlane, ""),
            (FamilyId::EightA1, "variant=3,a1=4"),
        ] {
            let p = ParamRecord::parse(s).unwrap();
            let f = super::super::build_cubic(fam, &p).unwrap();
            for pl in real_planes_in_x3_section(fam, &p).unwrap().planes {
                assert!(pl.equations.is_empty() || plane_in_cubic(&f, &pl.equations), "{fam} {}", pl.label);
            }
        }
    }
}
