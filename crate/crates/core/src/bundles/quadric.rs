use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cubic::CubicForm;
use crate::exact::symmetric::{char_poly_upoly, det_upoly};
use crate::exact::{isolate_real_roots, linalg, rat, rational_between, vars, IsolatedRoot, Matrix, MultiPoly, Rat, UPoly};
use crate::families::{LinearSubspace, SubspaceKind};

use super::fiber::{fiber_at, BaseValue, FiberType};
use super::BundleError;

/// Affine chart of the base line: with base forms `(u, v)`, `First` sets
/// `(u, v) = (1, x)` and `Second` sets `(u, v) = (x, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Chart {
    First,
    Second,
}

/// Projection from a real plane `{u = v = 0} ⊂ X` to P¹(u, v), with the
/// fiber Gram matrices in both affine charts.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricBundle {
    pub base: [Vec<Rat>; 2],
    /// Gram matrix in the first chart, entries in ℚ[x].
    pub gram: Matrix<UPoly>,
    /// Gram matrix in the second chart; its value at x = 0 is the fiber
    /// over the point at infinity of the first chart.
    pub gram_at_infinity: Matrix<UPoly>,
}

impl QuadricBundle {
    /// The determinant in the first chart; its real roots are where the
    /// fiber type can change.
    pub fn discriminant(&self) -> UPoly {
        det_upoly(&self.gram)
    }

    /// The same bundle with the two base forms exchanged.
    pub fn swapped(&self) -> QuadricBundle {
        QuadricBundle {
            base: [self.base[1].clone(), self.base[0].clone()],
            gram: self.gram_at_infinity.clone(),
            gram_at_infinity: self.gram.clone(),
        }
    }
}

/// Builds the bundle for the plane cut out by `plane`'s two equations, in
/// the order given (the first equation is `u`).
pub fn quadric_bundle(f: &CubicForm, plane: &LinearSubspace) -> Result<QuadricBundle, BundleError> {
    Ok(QuadricBundle {
        base: [plane.equations()[0].clone(), plane.equations()[1].clone()],
        gram: quadric_bundle_gram(f, plane, Chart::First)?,
        gram_at_infinity: quadric_bundle_gram(f, plane, Chart::Second)?,
    })
}

/// Completes the plane's two equations to a basis of linear forms with
/// coordinate functions, and returns the inverse change of coordinates.
fn adapted_inverse(eqs: &[Vec<Rat>]) -> Matrix<Rat> {
    let mut rows: Matrix<Rat> = eqs.to_vec();
    for j in 0..5 {
        if rows.len() == 5 {
            break;
        }
        let mut e = vec![Rat::zero(); 5];
        e[j] = Rat::one();
        rows.push(e);
        if linalg::rank(&rows) < rows.len() {
            rows.pop();
        }
    }
    let cols: Vec<Vec<Rat>> = (0..5)
        .map(|k| {
            let mut e = vec![Rat::zero(); 5];
            e[k] = Rat::one();
            linalg::solve(&rows, &e).expect("invertible")
        })
        .collect();
    (0..5).map(|i| (0..5).map(|k| cols[k][i].clone()).collect()).collect()
}

/// Symmetric 4 × 4 Gram matrix of the residual quadric in the span of the
/// plane and the base point, over the chosen chart. Coordinates are the
/// three completing coordinates followed by the base direction.
pub fn quadric_bundle_gram(f: &CubicForm, plane: &LinearSubspace, chart: Chart) -> Result<Matrix<UPoly>, BundleError> {
    assert_eq!(plane.kind(), SubspaceKind::Plane);
    if !f.is_real() {
        return Err(BundleError::NotReal);
    }
    let minv = adapted_inverse(plane.equations());
    // ring: x (base), l (direction), y1, y2, y3
    let r = vars(&["x", "l", "y1", "y2", "y3"]);
    let var = |i: usize| MultiPoly::<Rat>::var(r.clone(), i);
    let (wu, wv) = match chart {
        Chart::First => (var(1), &var(1) * &var(0)),
        Chart::Second => (&var(1) * &var(0), var(1)),
    };
    let z = [wu, wv, var(2), var(3), var(4)];
    let subs: Vec<MultiPoly<Rat>> = (0..5)
        .map(|i| (0..5).fold(MultiPoly::zero(r.clone()), |acc, k| &acc + &z[k].scale(&minv[i][k])))
        .collect();
    let h = f.poly().real_part().substitute(&subs, None);
    let mut gram: Matrix<UPoly> = vec![vec![UPoly::zero(); 4]; 4];
    let half = rat(1) / rat(2);
    for (e, c) in h.terms() {
        if e[1] == 0 {
            return Err(BundleError::PlaneNotContained);
        }
        // divide by l; fiber coordinates ordered (y1, y2, y3, l)
        let fe = [e[2], e[3], e[4], e[1] - 1];
        let idx: Vec<usize> = fe.iter().enumerate().flat_map(|(k, &m)| std::iter::repeat(k).take(m as usize)).collect();
        let mono = UPoly::x().pow(e[0]);
        let (a, b) = (idx[0], idx[1]);
        if a == b {
            gram[a][a] = &gram[a][a] + &mono.scale(c);
        } else {
            let t = mono.scale(&(c * &half));
            gram[a][b] = &gram[a][b] + &t;
            gram[b][a] = &gram[b][a] + &t;
        }
    }
    Ok(gram)
}

/// A point of the base circle P¹(ℝ) in first-chart coordinates.
#[derive(Clone, Debug)]
pub enum BasePoint {
    Finite(IsolatedRoot),
    Infinity,
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Finite(r) => write!(f, "{r}"),
            BasePoint::Infinity => f.write_str("infinity"),
        }
    }
}

impl Serialize for BasePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Boundary {
    pub at: BasePoint,
    pub fiber: FiberType,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseArc {
    #[serde(serialize_with = "ser_rat")]
    pub sample: Rat,
    pub fiber: FiberType,
}

fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::fmt_rat(r))
}

/// The base circle cut at the real roots of the discriminant and at the
/// point at infinity. `arcs[k]` is the open arc that follows
/// `boundary[k]` in increasing direction (the arc after infinity is the
/// one below the smallest root).
#[derive(Clone, Debug, Serialize)]
pub struct BaseArcDecomposition {
    pub boundary: Vec<Boundary>,
    pub arcs: Vec<BaseArc>,
}

impl BaseArcDecomposition {
    /// Fiber types around the circle, alternating boundary point and arc.
    pub fn cells(&self) -> Vec<FiberType> {
        self.boundary.iter().zip(&self.arcs).flat_map(|(b, a)| [b.fiber, a.fiber]).collect()
    }

    /// Maximal circular runs of nonempty fibers. Every nonempty fiber type
    /// has a connected real locus, and a nonempty boundary fiber is a limit
    /// of the fibers on either side, so runs are the components.
    pub fn component_count(&self) -> usize {
        let cells = self.cells();
        let n = cells.len();
        let Some(start) = cells.iter().position(|c| c.is_empty()) else {
            return 1;
        };
        (1..=n)
            .filter(|&k| {
                let cur = cells[(start + k) % n];
                let prev = cells[(start + k - 1) % n];
                !cur.is_empty() && prev.is_empty()
            })
            .count()
    }
}

/// Counts the connected components of the image of X(ℝ) on P¹(ℝ).
pub fn component_count_over_line(bundle: &QuadricBundle) -> Result<(usize, BaseArcDecomposition), BundleError> {
    let det = bundle.discriminant();
    if det.is_zero() {
        return Err(BundleError::DegeneratePencil);
    }
    let cp = char_poly_upoly(&bundle.gram);
    let cp_inf = char_poly_upoly(&bundle.gram_at_infinity);
    let roots = isolate_real_roots(&det).unwrap_or_default();

    let mut boundary = vec![];
    let mut arcs = vec![];
    let below = |r: &IsolatedRoot| r.lo().floor() - rat(1);
    let above = |r: &IsolatedRoot| r.hi().ceil() + rat(1);

    let zero = Rat::zero();
    boundary.push(Boundary { at: BasePoint::Infinity, fiber: fiber_at(&cp_inf, BaseValue::Rational(&zero)) });
    let first_sample = roots.first().map_or_else(Rat::zero, below);
    arcs.push(BaseArc { fiber: fiber_at(&cp, BaseValue::Rational(&first_sample)), sample: first_sample });
    for (k, r) in roots.iter().enumerate() {
        boundary.push(Boundary { at: BasePoint::Finite(r.clone()), fiber: fiber_at(&cp, BaseValue::Root(r)) });
        let sample = match roots.get(k + 1) {
            Some(next) => rational_between(r, next),
            None => above(r),
        };
        arcs.push(BaseArc { fiber: fiber_at(&cp, BaseValue::Rational(&sample)), sample });
    }
    let d = BaseArcDecomposition { boundary, arcs };
    Ok((d.component_count(), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::symmetric::diagonalize_symmetric;
    use crate::exact::RatFunc;

    fn bundle(f: &str, plane: &str) -> QuadricBundle {
        let f = CubicForm::parse(f).unwrap();
        quadric_bundle(&f, &LinearSubspace::parse(SubspaceKind::Plane, plane).unwrap()).unwrap()
    }

    fn count(f: &str, plane: &str) -> usize {
        component_count_over_line(&bundle(f, plane)).unwrap().0
    }

    #[test]
    fn minus_q_fiber_diagonal() {
        // t = (1, 2, 3, 4, 5, 6)
        let b = bundle("(x1^2+x2^2)x3 + x3^3 + x3^2(2x4+3x5) + x3(4x4^2+5x5^2+6x4x5) + x4(x4^2-x5^2)", "x3 = x4 = 0");
        let d = diagonalize_symmetric(&b.gram);
        let x = UPoly::x();
        let t5mx = &UPoly::constant(rat(5)) - &x;
        assert_eq!(d.diag[0], RatFunc::poly(UPoly::constant(rat(1))));
        assert_eq!(d.diag[2], RatFunc::poly(t5mx.clone()));
        let t = [1, 2, 3, 4, 5, 6].map(rat);
        assert_eq!(d.diag[3], RatFunc::new(crate::families::discriminant::d1(&t), t5mx));
    }

    #[test]
    fn plane_must_lie_in_cubic() {
        let f = CubicForm::parse("x1^3+x2^3+x3^3+x4^3+x5^3").unwrap();
        let p = LinearSubspace::parse(SubspaceKind::Plane, "x1 = x2 = 0").unwrap();
        assert_eq!(quadric_bundle(&f, &p), Err(BundleError::PlaneNotContained));
    }

    #[test]
    fn definite_pencil_is_empty() {
        let id: Matrix<UPoly> = (0..4).map(|i| (0..4).map(|j| UPoly::constant(rat((i == j) as i64))).collect()).collect();
        let b = QuadricBundle { base: [vec![], vec![]], gram: id.clone(), gram_at_infinity: id };
        let (n, d) = component_count_over_line(&b).unwrap();
        assert_eq!(n, 0);
        assert!(d.cells().iter().all(|c| c.is_empty()));
    }

    #[test]
    fn printed_d4_plus_examples() {
        // D2 = x⁴ + x, roots -1 < 0 = -t5: connected
        assert_eq!(count("(x1^2+x2^2)x3+x3^3+x4(x4^2+x5^2)", "x3 = x4 = 0"), 1);
        // D2 = (x + 2)(x³ - 2x² - x + 1): the fibers over [0.55, 2.25] form
        // a compact piece of the affine chart x3 = 1
        assert_eq!(count("(x1^2+x2^2)x3+x3^3-x3^2x4+2x3(x5^2-x4^2)+x4(x4^2+x5^2)", "x3 = x4 = 0"), 2);
    }

    #[test]
    fn chart_swap_invariance() {
        for (f, p) in [
            ("(x1^2+x2^2)x3+x3^3+x4(x4^2+x5^2)", "x3 = x4 = 0"),
            ("(x1^2+x2^2)x3-x3^3+x4(x4^2-x5^2)", "x3 = x4 = 0"),
        ] {
            let b = bundle(f, p);
            let (n1, _) = component_count_over_line(&b).unwrap();
            let (n2, _) = component_count_over_line(&b.swapped()).unwrap();
            assert_eq!(n1, n2);
            let rev = p.split('=').map(str::trim).filter(|s| *s != "0").collect::<Vec<_>>();
            let q = bundle(f, &format!("{} = {} = 0", rev[1], rev[0]));
            assert_eq!(component_count_over_line(&q).unwrap().0, n1);
        }
    }
}
