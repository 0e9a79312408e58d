//! Singular points of cubic forms and their ADE types.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::cubic::{CubicForm, ProjPoint};
use crate::exact::{congruence_diagonalize, rat, vars, Field, GaussPoly, GaussRat, MultiPoly, Vars};

/// Default truncation cap for the A_n series.
pub const DEFAULT_ADE_CAP: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error("{0} is not a singular point of the cubic")]
    NotSingular(String),
    #[error("cap must be at least 1")]
    BadCap,
    #[error("point list is not closed under conjugation: the conjugate of {0} is missing")]
    NotConjugationClosed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityType {
    A(u32),
    D4,
    Smooth,
    Corank2Other,
    BeyondCap,
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::A(n) => write!(f, "A{n}"),
            SingularityType::D4 => write!(f, "D4"),
            SingularityType::Smooth => write!(f, "smooth"),
            SingularityType::Corank2Other => write!(f, "corank2-other"),
            SingularityType::BeyondCap => write!(f, "beyond-cap"),
        }
    }
}

impl std::str::FromStr for SingularityType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "D4" => Ok(SingularityType::D4),
            "smooth" => Ok(SingularityType::Smooth),
            "corank2-other" => Ok(SingularityType::Corank2Other),
            "beyond-cap" => Ok(SingularityType::BeyondCap),
            _ => s
                .strip_prefix('A')
                .and_then(|n| n.parse::<u32>().ok())
                .filter(|&n| n >= 1)
                .map(SingularityType::A)
                .ok_or_else(|| format!("unknown singularity type '{s}'")),
        }
    }
}

pub fn is_singular_at(f: &CubicForm, p: &ProjPoint) -> bool {
    f.eval(p).is_zero() && f.gradient().iter().all(|g| g.eval(p.coords()).is_zero())
}

/// Affine germ of `f` at `p` in the chart where `p` has coordinate 1,
/// with local coordinates named after the remaining four variables.
fn local_germ(f: &CubicForm, p: &ProjPoint) -> GaussPoly {
    let k = p.chart();
    let names: Vec<&str> = ["y1", "y2", "y3", "y4", "y5"].iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| *s).collect();
    let ring = vars(&names);
    let mut subs = Vec::with_capacity(5);
    let mut next = 0;
    for (i, c) in p.coords().iter().enumerate() {
        let cst = MultiPoly::constant(ring.clone(), c.clone());
        if i == k {
            subs.push(cst);
        } else {
            subs.push(&cst + &MultiPoly::var(ring.clone(), next));
            next += 1;
        }
    }
    f.poly().substitute(&subs, None)
}

fn quadratic_matrix(g: &GaussPoly) -> Vec<Vec<GaussRat>> {
    let n = g.nvars();
    let half = GaussRat::real(rat(1) / rat(2));
    let mut m = vec![vec![GaussRat::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut e = vec![0u32; n];
            e[a] += 1;
            e[b] += 1;
            let c = g.coeff(&e);
            m[a][b] = if a == b { c } else { c * half.clone() };
        }
    }
    m
}

pub fn hessian_corank(f: &CubicForm, p: &ProjPoint) -> Result<usize, SingularError> {
    if !is_singular_at(f, p) {
        return Err(SingularError::NotSingular(p.to_string()));
    }
    let g = local_germ(f, p);
    let d = congruence_diagonalize(&quadratic_matrix(&g));
    Ok(g.nvars() - d.rank)
}

/// Splitting-lemma reduction of the germ at `p`: the quadratic part is
/// diagonalized over ℚ(i), the nondegenerate variables are eliminated along
/// the critical manifold, and the residual in the kernel variables decides
/// the type.
pub fn ade_type(f: &CubicForm, p: &ProjPoint, cap: u32) -> Result<SingularityType, SingularError> {
    if cap == 0 {
        return Err(SingularError::BadCap);
    }
    if !is_singular_at(f, p) {
        return Ok(SingularityType::Smooth);
    }
    let germ = local_germ(f, p);
    let n = germ.nvars();
    let diag = congruence_diagonalize(&quadratic_matrix(&germ));
    let r = diag.rank;
    match n - r {
        0 => return Ok(SingularityType::A(1)),
        k if k >= 3 => return Ok(SingularityType::Corank2Other),
        _ => {}
    }
    let z = germ.vars().clone();
    // y = P z
    let subs: Vec<GaussPoly> = (0..n)
        .map(|a| (0..n).fold(MultiPoly::zero(z.clone()), |acc, b| &acc + &MultiPoly::var(z.clone(), b).scale(&diag.p[a][b])))
        .collect();
    let g = germ.substitute(&subs, None);
    let trunc = cap + 2;
    let wnames: Vec<String> = (1..=n - r).map(|i| format!("w{i}")).collect();
    let wring: Vars = wnames.into();
    let two = GaussRat::real(rat(2));
    let higher: Vec<GaussPoly> = (0..r)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            &g.partial(i) - &MultiPoly::monomial(z.clone(), e, diag.diag[i].clone() * two.clone())
        })
        .collect();
    let point = |phi: &[GaussPoly]| -> Vec<GaussPoly> {
        (0..n).map(|j| if j < r { phi[j].clone() } else { MultiPoly::var(wring.clone(), j - r) }).collect()
    };
    let mut phi: Vec<GaussPoly> = vec![MultiPoly::zero(wring.clone()); r];
    for _ in 0..trunc {
        let at = point(&phi);
        phi = (0..r)
            .map(|i| {
                let s = -(two.clone() * diag.diag[i].clone()).inverse().expect("nonzero pivot");
                higher[i].substitute(&at, Some(trunc)).scale(&s)
            })
            .collect();
    }
    let residual = g.substitute(&point(&phi), Some(trunc));
    if n - r == 1 {
        return Ok(match residual.order() {
            Some(m) if m >= 3 && m - 1 <= cap => SingularityType::A(m - 1),
            _ => SingularityType::BeyondCap,
        });
    }
    let c3 = residual.homogeneous_part(3);
    let (a, b, c, d) = (c3.coeff(&[3, 0]), c3.coeff(&[2, 1]), c3.coeff(&[1, 2]), c3.coeff(&[0, 3]));
    Ok(if binary_cubic_discriminant(&a, &b, &c, &d).is_zero() {
        SingularityType::Corank2Other
    } else {
        SingularityType::D4
    })
}

/// Discriminant of `a x³ + b x²y + c xy² + d y³`.
pub fn binary_cubic_discriminant<C: Field>(a: &C, b: &C, c: &C, d: &C) -> C {
    let k = |n: i64| C::from_rat(rat(n));
    b.clone() * b.clone() * c.clone() * c.clone()
        - k(4) * a.clone() * c.clone() * c.clone() * c.clone()
        - k(4) * b.clone() * b.clone() * b.clone() * d.clone()
        - k(27) * a.clone() * a.clone() * d.clone() * d.clone()
        + k(18) * a.clone() * b.clone() * c.clone() * d.clone()
}

/// Permutation induced by complex conjugation on a conjugation-closed list
/// of points, and the indices of the real points (its fixed points).
pub fn conjugation_permutation(points: &[ProjPoint]) -> Result<(Vec<usize>, Vec<usize>), SingularError> {
    let mut perm = Vec::with_capacity(points.len());
    for p in points {
        let c = p.conj();
        let j = points.iter().position(|q| q == &c).ok_or_else(|| SingularError::NotConjugationClosed(p.to_string()))?;
        perm.push(j);
    }
    let real = (0..points.len()).filter(|&i| perm[i] == i).collect();
    Ok((perm, real))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_a5() -> CubicForm {
        CubicForm::parse("(x1^2 + x2^2)x3 + x3^3 + 1/2 x2 (x4^2 - x5^2) + x1 x4 x5").unwrap()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    #[test]
    fn two_a5_point() {
        let f = two_a5();
        let p = pt("[1:i:0:0:0]");
        assert!(is_singular_at(&f, &p));
        assert!(!is_singular_at(&f, &pt("[1:0:0:0:0]")));
        assert_eq!(hessian_corank(&f, &p), Ok(1));
        assert_eq!(ade_type(&f, &p, 6), Ok(SingularityType::A(5)));
        assert_eq!(ade_type(&f, &p, 4), Ok(SingularityType::BeyondCap));
    }

    #[test]
    fn fermat_is_smooth() {
        let f = CubicForm::parse("x1^3+x2^3+x3^3+x4^3+x5^3").unwrap();
        assert!(!is_singular_at(&f, &pt("[1:-1:0:0:0]")));
        assert!(hessian_corank(&f, &pt("[1:0:0:0:0]")).is_err());
    }

    #[test]
    fn node_is_a1() {
        // x1 (x2^2 + x3^2 + x4^2 + x5^2) + x2^3 + x5^3: ordinary double point at [1:0:0:0:0]
        let f = CubicForm::parse("x1 (x2^2 + x3^2 + x4^2 + x5^2) + x2^3 + x5^3").unwrap();
        let p = pt("[1:0:0:0:0]");
        assert_eq!(hessian_corank(&f, &p), Ok(0));
        assert_eq!(ade_type(&f, &p, 8), Ok(SingularityType::A(1)));
    }

    #[test]
    fn d4_point() {
        let f = CubicForm::parse("(x1^2 + x2^2)x3 + x5(x3^2 + x4^2) + x5^3").unwrap();
        let p = pt("[1:i:0:0:0]");
        assert_eq!(hessian_corank(&f, &p), Ok(2));
        assert_eq!(ade_type(&f, &p, 8), Ok(SingularityType::D4));
        assert_eq!(ade_type(&f, &pt("[0:0:1:i:0]"), 8), Ok(SingularityType::A(1)));
    }

    #[test]
    fn conjugation_pairs() {
        let pts: Vec<ProjPoint> = ["[0:-i:0:1:0]", "[0:i:0:1:0]", "[1:0:0:0:0]"].iter().map(|s| pt(s)).collect();
        let (perm, real) = conjugation_permutation(&pts).unwrap();
        assert_eq!(perm, vec![1, 0, 2]);
        assert_eq!(real, vec![2]);
        assert!(conjugation_permutation(&pts[..1]).is_err());
    }

    #[test]
    fn type_names_round_trip() {
        for t in [SingularityType::A(3), SingularityType::D4, SingularityType::Smooth] {
            assert_eq!(t.to_string().parse::<SingularityType>(), Ok(t));
        }
    }
}
