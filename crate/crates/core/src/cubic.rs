//! Cubic forms on P⁴ and projective points over ℚ(i).

use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{linalg, p4_vars, parse_gauss, parse_poly, Field, GaussPoly, GaussRat, MultiPoly, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("expected a homogeneous cubic in x1..x5, got degree {0:?}")]
    NotCubic(Option<u32>),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("a projective point in P^4 needs 5 coordinates, got {0}")]
    WrongLength(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Homogeneous cubic in `x1..x5` with Gaussian rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm(GaussPoly);

impl CubicForm {
    pub fn new(p: GaussPoly) -> Result<Self, FormError> {
        if p.nvars() != 5 || p.is_zero() || !p.is_homogeneous(3) {
            return Err(FormError::NotCubic(p.total_degree()));
        }
        Ok(CubicForm(p))
    }

    pub fn parse(s: &str) -> Result<Self, FormError> {
        CubicForm::new(parse_poly(s, &p4_vars())?)
    }

    pub fn poly(&self) -> &GaussPoly {
        &self.0
    }

    pub fn is_real(&self) -> bool {
        self.0.is_real()
    }

    pub fn gradient(&self) -> Vec<GaussPoly> {
        (0..5).map(|i| self.0.partial(i)).collect()
    }

    pub fn eval(&self, p: &ProjPoint) -> GaussRat {
        self.0.eval(p.coords())
    }

    /// True if some point `v` has `Σ v_i ∂F/∂x_i ≡ 0`, i.e. F is a cone
    /// with vertex `v`.
    pub fn is_cone(&self) -> bool {
        let grads = self.gradient();
        let mut monos: Vec<Vec<u32>> = grads.iter().flat_map(|g| g.terms().map(|(e, _)| e.clone())).collect();
        monos.sort();
        monos.dedup();
        // columns are the partials, rows the quadratic monomials
        let m: Vec<Vec<GaussRat>> = monos.iter().map(|e| grads.iter().map(|g| g.coeff(e)).collect()).collect();
        linalg::rank(&m) < 5
    }

    /// `F(M·x)`.
    pub fn linear_change(&self, m: &[Vec<GaussRat>]) -> CubicForm {
        let v = p4_vars();
        let subs: Vec<GaussPoly> = (0..5)
            .map(|i| {
                (0..5).fold(MultiPoly::zero(v.clone()), |acc, j| &acc + &MultiPoly::var(v.clone(), j).scale(&m[i][j]))
            })
            .collect();
        CubicForm(self.0.substitute(&subs, None))
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point of P⁴ over ℚ(i), stored with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<GaussRat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<GaussRat>) -> Result<Self, FormError> {
        if coords.len() != 5 {
            return Err(FormError::WrongLength(coords.len()));
        }
        let Some(lead) = coords.iter().find(|c| !c.is_zero()) else {
            return Err(FormError::ZeroPoint);
        };
        let inv = lead.inverse().expect("nonzero");
        Ok(ProjPoint { coords: coords.iter().map(|c| c.clone() * inv.clone()).collect() })
    }

    /// Parses `[1:i:0:0:0]` (brackets optional).
    pub fn parse(s: &str) -> Result<Self, FormError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = body.split(':').map(parse_gauss).collect::<Result<Vec<_>, _>>()?;
        ProjPoint::new(coords)
    }

    pub fn coords(&self) -> &[GaussRat] {
        &self.coords
    }

    pub fn conj(&self) -> ProjPoint {
        ProjPoint { coords: self.coords.iter().map(|c| c.conj()).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(|c| c.is_real())
    }

    /// Index of the first nonzero coordinate (where the stored value is 1).
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|c| c.is_one()).expect("normalized")
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &ProjPoint) -> bool {
        self.coords == o.coords
    }
}

impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coords.hash(h)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_equality_and_reality() {
        let a = ProjPoint::parse("[2:2i:0:0:0]").unwrap();
        let b = ProjPoint::parse("[1:i:0:0:0]").unwrap();
        assert_eq!(a, b);
        assert!(!a.is_real());
        assert!(ProjPoint::parse("[i:i:0:0:i]").unwrap().is_real());
        assert_eq!(a.conj(), ProjPoint::parse("[1:-i:0:0:0]").unwrap());
        assert_eq!(ProjPoint::parse("[0:0:0:0:0]"), Err(FormError::ZeroPoint));
    }

    #[test]
    fn cone_detection() {
        assert!(CubicForm::parse("x1^3 + x2^3 + x3^3").unwrap().is_cone());
        assert!(!CubicForm::parse("x1^3 + x2^3 + x3^3 + x4^3 + x5^3").unwrap().is_cone());
        assert!(CubicForm::parse("x1^2 + x2").is_err());
    }
}
