use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cubic::{CubicForm, ProjPoint};
use crate::exact::{GaussRat, Rat};
use crate::singular::is_singular_at;

use super::FloatPoly;

/// Gradient norm (relative to the largest coefficient) below which a
/// converged start counts as a singular point.
const ACCEPT: f64 = 1e-9;
const MAX_DENOMINATOR: i64 = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct RealSingularPoint {
    /// Unit vector, sign fixed so the largest coordinate is positive.
    pub coords: Vec<f64>,
    pub residual: f64,
    /// Set when a nearby rational point is exactly singular.
    #[serde(serialize_with = "ser_point")]
    pub exact: Option<ProjPoint>,
}

fn ser_point<S: serde::Serializer>(p: &Option<ProjPoint>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSearch {
    pub starts: usize,
    pub points: Vec<RealSingularPoint>,
}

impl SingularSearch {
    pub fn found(&self) -> bool {
        !self.points.is_empty()
    }

    pub fn certified(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter().filter_map(|p| p.exact.as_ref())
    }
}

struct System {
    grad: Vec<FloatPoly>,
    hess: Vec<Vec<FloatPoly>>,
}

impl System {
    fn residual(&self, x: &DVector<f64>) -> DVector<f64> {
        let xs = x.as_slice();
        let mut r: Vec<f64> = self.grad.iter().map(|g| g.eval(xs)).collect();
        r.push((x.dot(x) - 1.0) / 2.0);
        DVector::from_vec(r)
    }

    fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let xs = x.as_slice();
        DMatrix::from_fn(6, 5, |i, j| if i < 5 { self.hess[i][j].eval(xs) } else { xs[j] })
    }

    fn grad_norm(&self, x: &DVector<f64>) -> f64 {
        self.residual(x).rows(0, 5).norm()
    }

    /// Levenberg–Marquardt on `∇f = 0`, `|x| = 1`.
    fn descend(&self, mut x: DVector<f64>) -> DVector<f64> {
        let mut mu = 1e-3;
        let mut cost = self.residual(&x).norm_squared();
        for _ in 0..200 {
            let r = self.residual(&x);
            let j = self.jacobian(&x);
            let jt = j.transpose();
            let a = &jt * &j + DMatrix::identity(5, 5) * mu;
            let Some(step) = a.lu().solve(&(-(&jt * &r))) else { break };
            let y = &x + &step;
            let c = self.residual(&y).norm_squared();
            if c < cost {
                x = y;
                cost = c;
                mu = (mu / 3.0).max(1e-15);
            } else {
                mu *= 4.0;
            }
            if cost < 1e-30 || mu > 1e12 {
                break;
            }
        }
        let n = x.norm();
        x / n
    }
}

/// Best rational approximation with bounded denominator.
fn rationalize(v: f64) -> Option<Rat> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = v;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > MAX_DENOMINATOR {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if ((h1 as f64) / (k1 as f64) - v).abs() < 1e-12 || frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0 && ((h1 as f64) / (k1 as f64) - v).abs() < 1e-7).then(|| Rat::new(h1.into(), k1.into()))
}

fn exact_point(f: &CubicForm, x: &[f64]) -> Option<ProjPoint> {
    let big = x.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
    let coords = x.iter().map(|v| rationalize(v / big).map(GaussRat::real)).collect::<Option<Vec<_>>>()?;
    let p = ProjPoint::new(coords).ok()?;
    is_singular_at(f, &p).then_some(p)
}

/// Numeric search for real singular points of a real cubic from `starts`
/// random points of the unit sphere. Candidates near a rational point are
/// verified exactly.
pub fn real_singular_search(f: &CubicForm, starts: usize, seed: u64) -> SingularSearch {
    let mut out = SingularSearch { starts, points: vec![] };
    if !f.is_real() {
        return out;
    }
    let grads: Vec<_> = f.gradient().iter().map(|g| g.real_part()).collect();
    let scale = FloatPoly::new(&f.poly().real_part()).max_abs_coeff();
    if scale == 0.0 {
        return out;
    }
    let scaled = |p: &crate::exact::MultiPoly<Rat>| {
        let mut fp = FloatPoly::new(p);
        fp.terms.iter_mut().for_each(|t| t.1 /= scale);
        fp
    };
    let sys = System {
        grad: grads.iter().map(scaled).collect(),
        hess: grads.iter().map(|g| (0..5).map(|j| scaled(&g.partial(j))).collect()).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..starts {
        let v: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x0 = DVector::from_vec(v);
        if x0.norm() < 1e-3 {
            continue;
        }
        let n = x0.norm();
        let x = sys.descend(x0 / n);
        let residual = sys.grad_norm(&x);
        if !(residual < ACCEPT) {
            continue;
        }
        let lead = x.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
        let x = if lead < 0.0 { -x } else { x };
        if out.points.iter().any(|p| p.coords.iter().zip(x.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) < 1e-5) {
            continue;
        }
        let coords: Vec<f64> = x.iter().copied().collect();
        let exact = exact_point(f, &coords);
        out.points.push(RealSingularPoint { coords, residual, exact });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_rational_node() {
        // nodes at [0:0:0:1:0] and [2:0:0:-3:-2]
        let f = CubicForm::parse("x4*(x1^2 + x2^2 + x3^2 - x5^2) + x1^3 + x5^3").unwrap();
        let s = real_singular_search(&f, 64, 1);
        let mut found: Vec<String> = s.certified().map(|p| p.to_string()).collect();
        found.sort();
        assert_eq!(found, vec!["[0:0:0:1:0]", "[1:0:0:-3/2:-1]"]);
    }

    #[test]
    fn conjugate_pairs_are_not_reported() {
        let f = CubicForm::parse("(x1^2 + x2^2)*x3 + x3^3 + 1/2*x2*(x4^2 - x5^2) + x1*x4*x5").unwrap();
        assert!(!real_singular_search(&f, 64, 1).found());
    }

    #[test]
    fn irrational_point_is_numeric_only() {
        // nodes at [1:0:0:0:±√2]
        let f = CubicForm::parse("(2x1^2 - x5^2)*x4 + x2^3 + x3^3 + x4^3").unwrap();
        let s = real_singular_search(&f, 128, 3);
        assert_eq!(s.points.len(), 2);
        assert!(s.certified().next().is_none());
        for p in &s.points {
            assert!(((p.coords[4] / p.coords[0]).abs() - std::f64::consts::SQRT_2).abs() < 1e-6);
        }
        assert_eq!(rationalize(0.75), Some(Rat::new(3.into(), 4.into())));
    }
}
