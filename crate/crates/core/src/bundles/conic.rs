use crate::cubic::CubicForm;
use crate::exact::{ratio, vars, MultiPoly, Rat};

use super::BundleError;

/// `Y: y1² + y2² + L·f3 − (q1² + q2²)/4 = 0` in P(2,2,1,1,1) and the region
/// polynomial `G = (q1² + q2²)/4 − L·f3` on P²(x3, x4, x5), whose
/// nonnegative locus is the image of Y(ℝ).
#[derive(Clone, Debug, PartialEq)]
pub struct ConicBundleModel {
    /// Variables y1, y2, x3, x4, x5.
    pub y_equation: MultiPoly<Rat>,
    /// Variables x3, x4, x5.
    pub region_poly: MultiPoly<Rat>,
}

fn base_vars() -> crate::exact::Vars {
    vars(&["x3", "x4", "x5"])
}

/// Builds the model from `L`, `q1`, `q2`, `f3`, all in x3, x4, x5 (given
/// as polynomials over the full x1..x5 ring).
pub fn conic_bundle_model(l: &MultiPoly<Rat>, q1: &MultiPoly<Rat>, q2: &MultiPoly<Rat>, f3: &MultiPoly<Rat>) -> Result<ConicBundleModel, BundleError> {
    for (p, name, d) in [(l, "L", 1), (q1, "q1", 2), (q2, "q2", 2), (f3, "f3", 3)] {
        if !p.supported_in(&[2, 3, 4]) {
            return Err(BundleError::WrongSupport(name));
        }
        if !p.is_zero() && !p.is_homogeneous(d) {
            return Err(BundleError::WrongDegree { what: name, expected: d });
        }
    }
    let to_base = |p: &MultiPoly<Rat>| MultiPoly::from_terms(base_vars(), p.terms().map(|(e, c)| (e[2..].to_vec(), c.clone())));
    let (l, q1, q2, f3) = (to_base(l), to_base(q1), to_base(q2), to_base(f3));
    let quarter = ratio(1, 4);
    let squares = (&(&q1 * &q1) + &(&q2 * &q2)).scale(&quarter);
    let region_poly = &squares - &(&l * &f3);

    let yv = vars(&["y1", "y2", "x3", "x4", "x5"]);
    let lift = |p: &MultiPoly<Rat>| p.embed(yv.clone(), &[2, 3, 4]);
    let y2sum = &MultiPoly::var(yv.clone(), 0).pow(2) + &MultiPoly::var(yv.clone(), 1).pow(2);
    let y_equation = &y2sum - &lift(&region_poly);
    Ok(ConicBundleModel { y_equation, region_poly })
}

/// Reads off `L, q1, q2, f3` from `F = L(x1² + x2²) + x1 q1 + x2 q2 + f3`.
pub fn conic_bundle_of(f: &CubicForm) -> Result<ConicBundleModel, BundleError> {
    if !f.is_real() {
        return Err(BundleError::NotReal);
    }
    let p = f.poly().real_part();
    let v = p.vars().clone();
    let zero = || MultiPoly::zero(v.clone());
    let (mut l1, mut l2, mut q1, mut q2, mut f3) = (zero(), zero(), zero(), zero(), zero());
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        rest[0] = 0;
        rest[1] = 0;
        let slot = match (e[0], e[1]) {
            (0, 0) => &mut f3,
            (1, 0) => &mut q1,
            (0, 1) => &mut q2,
            (2, 0) => &mut l1,
            (0, 2) => &mut l2,
            _ => return Err(BundleError::NotConicForm),
        };
        slot.add_term(rest, c.clone());
    }
    if l1 != l2 || l1.is_zero() {
        return Err(BundleError::NotConicForm);
    }
    conic_bundle_model(&l1, &q1, &q2, &f3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{p4_vars, parse_poly};

    fn real(s: &str) -> MultiPoly<Rat> {
        parse_poly(s, &p4_vars()).unwrap().real_part()
    }

    #[test]
    fn a3_pair_region_is_a_square_sum() {
        let m = conic_bundle_model(&real("x3"), &real("x4x5"), &real("1/2(x4^2-x5^2)"), &real("x3^3")).unwrap();
        let b = base_vars();
        let s = &MultiPoly::var(b.clone(), 1).pow(2) + &MultiPoly::var(b.clone(), 2).pow(2);
        let expected = &s.pow(2).scale(&ratio(1, 16)) - &MultiPoly::var(b, 0).pow(4);
        assert_eq!(m.region_poly, expected);
    }

    #[test]
    fn support_is_checked() {
        assert_eq!(conic_bundle_model(&real("x3"), &real("x1x4"), &real("x4^2"), &real("x3^3")), Err(BundleError::WrongSupport("q1")));
    }

    #[test]
    fn read_off_from_cubic() {
        let f = CubicForm::parse("(x1^2+x2^2)x3 + x1x4x5 + 1/2x2(x4^2-x5^2) + x3^3").unwrap();
        let direct = conic_bundle_model(&real("x3"), &real("x4x5"), &real("1/2(x4^2-x5^2)"), &real("x3^3")).unwrap();
        assert_eq!(conic_bundle_of(&f).unwrap(), direct);
        assert_eq!(conic_bundle_of(&CubicForm::parse("x1^2x3 + x2^2x4").unwrap()), Err(BundleError::NotConicForm));
    }
}
