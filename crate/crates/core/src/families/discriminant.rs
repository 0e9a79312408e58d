use num_traits::Zero;

use super::{FamilyError, FamilyId, ParamRecord};
use crate::exact::{rat, ratio, Rat, UPoly};

/// Catalog discriminant: one polynomial, or the three permuted quartics of
/// the three-real-plane 6A1 form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discriminant {
    Single(UPoly),
    Triple([UPoly; 3]),
}

impl Discriminant {
    pub fn polys(&self) -> Vec<&UPoly> {
        match self {
            Discriminant::Single(p) => vec![p],
            Discriminant::Triple(ps) => ps.iter().collect(),
        }
    }
}

fn up(cs: Vec<Rat>) -> UPoly {
    UPoly::new(cs)
}

/// `Δ(1, x)` for the 2D4 form with q = x4² − x5².
pub fn d1(t: &[Rat; 6]) -> UPoly {
    let [t1, t2, t3, t4, t5, t6] = t;
    let q = ratio(1, 4);
    let h = ratio(1, 2);
    up(vec![
        t1 * t5 - &q * t3 * t3,
        t2 * t5 - t1 - &h * t3 * t6,
        t4 * t5 - t2 - &q * t6 * t6,
        t5 - t4,
        rat(-1),
    ])
}

/// D2 for the 2D4 form with q = x4² + x5².
pub fn d2(t: &[Rat; 6]) -> UPoly {
    let [t1, t2, t3, t4, t5, t6] = t;
    let q = ratio(1, 4);
    let h = ratio(1, 2);
    up(vec![
        t1 * t5 - &q * t3 * t3,
        t1 + t2 * t5 - &h * t3 * t6,
        t2 + t4 * t5 - &q * t6 * t6,
        t4 + t5,
        rat(1),
    ])
}

/// Δ(x5) of the 2A3+2A1 three-plane form; requires t6 ≠ 0.
pub fn delta_2a3_2a1(a: &Rat, b: &[Rat; 4], t2: &Rat, t6: &Rat) -> UPoly {
    let [b1, b2, b3, b4] = b;
    up(vec![
        t6.clone(),
        b4 - ratio(1, 2) * t2 * t2,
        (rat(-2) * t2 * t6 * (b1 + b2) - b3 * b3 + rat(4) * a * t6) / (rat(4) * t6),
        -(b1 * b1 + b2 * b2) / rat(4),
    ])
}

/// Δ1(t1, t2, t3, x) of the three-real-plane 6A1 form.
pub fn delta1(a: &Rat, t1: &Rat, t2: &Rat, t3: &Rat) -> UPoly {
    up(vec![rat(-4) * a + t2 * t2 + t3 * t3, -(rat(4) * t1 + t2 * t3), a - rat(4), t1.clone(), rat(1)])
}

/// Δ2 of the one-real-plane 6A1 form.
pub fn delta2(a: &Rat, a1: &Rat, a2: &Rat, a3: &Rat) -> UPoly {
    up(vec![rat(4), rat(4) * a1 - rat(1), rat(4) * a - a1, -(a + a2 * a2 + a3 * a3), a2 * a2 / rat(4)])
}

/// Δ of the form singular along a conic; `a[k]` is a_{k+1}.
pub fn delta_conic(a: &[Rat; 13]) -> UPoly {
    let g = |k: usize| &a[k - 1];
    let s58 = g(5) + g(8);
    let s69 = g(6) + g(9);
    let s710 = g(7) + g(10);
    up(vec![
        rat(4) * g(1) - &s58 * &s58 - g(11) * g(11),
        rat(4) * g(3) - rat(2) * &s58 * &s69 - rat(2) * g(11) * g(12),
        rat(4) * g(2) - rat(2) * &s58 * &s710 - &s69 * &s69 - rat(2) * g(11) * g(13) - g(12) * g(12),
        rat(4) * g(4) - rat(2) * &s69 * &s710 - rat(2) * g(12) * g(13),
        -(&s710 * &s710 + g(13) * g(13)),
    ])
}

/// `4c − q1² − q2² − q3²` on the chart x4 = 1: the fiber discriminant of
/// the conic-locus normal form. Differs from [`delta_conic`] by `2 q1 q2`.
pub fn delta_conic_fiber(a: &[Rat; 13]) -> UPoly {
    let g = |k: usize| a[k - 1].clone();
    let q = |k: usize| up(vec![g(k), g(k + 1), g(k + 2)]);
    let c = up(vec![g(1), g(3), g(2), g(4)]);
    let sq = |p: UPoly| &p * &p;
    &(&(&c.scale(&rat(4)) - &sq(q(5))) - &sq(q(8))) - &sq(q(11))
}

/// The printed discriminant of a quadric-bundle family with the parameters
/// substituted.
pub fn discriminant_polynomial(family: FamilyId, params: &ParamRecord) -> Result<Discriminant, FamilyError> {
    use FamilyId::*;
    let p = params.resolve(family)?;
    let v = |k: &str| p.v(k).clone();
    let ts = |n: usize| -> Vec<Rat> { (1..=n).map(|k| v(&format!("t{k}"))).collect() };
    Ok(match family {
        TwoD4MinusQ => Discriminant::Single(d1(&ts(6).try_into().unwrap())),
        TwoD4PlusQ => Discriminant::Single(d2(&ts(6).try_into().unwrap())),
        TwoA3TwoA1ThreePlanes => {
            if v("t6").is_zero() {
                return Err(FamilyError::NoDiscriminant(family));
            }
            let b = [v("b1"), v("b2"), v("b3"), v("b4")];
            Discriminant::Single(delta_2a3_2a1(&v("a"), &b, &v("t2"), &v("t6")))
        }
        SixA1ThreeRealPlanes => {
            let (a, a1, a2, a3) = (v("a"), v("a1"), v("a2"), v("a3"));
            Discriminant::Triple([delta1(&a, &a1, &a2, &a3), delta1(&a, &a2, &a1, &a3), delta1(&a, &a3, &a2, &a1)])
        }
        SixA1OneRealPlane => Discriminant::Single(delta2(&v("a"), &v("a1"), &v("a2"), &v("a3"))),
        ConicLocus => {
            let a: Vec<Rat> = (1..=13).map(|k| v(&format!("a{k}"))).collect();
            Discriminant::Single(delta_conic(&a.try_into().unwrap()))
        }
        f => return Err(FamilyError::NoDiscriminant(f)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_line_example() {
        let d = discriminant_polynomial(FamilyId::TwoD4MinusQ, &ParamRecord::parse("t1=-1").unwrap()).unwrap();
        assert_eq!(d, Discriminant::Single(UPoly::from_ints(&[0, 1, 0, 0, -1])));
    }

    #[test]
    fn delta2_all_zero() {
        let d = discriminant_polynomial(FamilyId::SixA1OneRealPlane, &ParamRecord::parse("a=0,a1=0,a2=0,a3=0").unwrap()).unwrap();
        assert_eq!(d, Discriminant::Single(UPoly::from_ints(&[4, -1])));
    }

    #[test]
    fn conic_fiber_discriminant_differs_by_cross_term() {
        let a: [Rat; 13] = std::array::from_fn(|k| rat(k as i64 + 1));
        let g = |k: usize| a[k - 1].clone();
        let cross = &up(vec![g(5), g(6), g(7)]) * &up(vec![g(8), g(9), g(10)]);
        assert_eq!(&delta_conic_fiber(&a) - &delta_conic(&a), cross.scale(&rat(2)));
    }

    #[test]
    fn no_catalog_discriminant() {
        assert!(matches!(discriminant_polynomial(FamilyId::TwoA5, &ParamRecord::default()), Err(FamilyError::NoDiscriminant(_))));
    }
}
