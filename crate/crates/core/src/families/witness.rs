use std::fmt;

use serde::Serialize;

use super::FamilyError;
use crate::cubic::CubicForm;
use crate::exact::{linalg, p4_vars, parse_poly, vars, GaussPoly, GaussRat, MultiPoly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubspaceKind {
    Line,
    Plane,
}

impl SubspaceKind {
    fn codim(self) -> usize {
        match self {
            SubspaceKind::Line => 3,
            SubspaceKind::Plane => 2,
        }
    }
}

impl fmt::Display for SubspaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubspaceKind::Line => "line",
            SubspaceKind::Plane => "plane",
        })
    }
}

/// Real linear subspace of P⁴ cut out by independent linear forms, each
/// stored as its coefficient vector on x1..x5.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    kind: SubspaceKind,
    equations: Vec<Vec<Rat>>,
}

impl LinearSubspace {
    pub fn new(kind: SubspaceKind, equations: Vec<Vec<Rat>>) -> Result<Self, FamilyError> {
        let rank = linalg::rank(&equations);
        if equations.iter().any(|e| e.len() != 5) || rank != kind.codim() || equations.len() != kind.codim() {
            return Err(FamilyError::DegenerateSubspace { kind, expected: kind.codim(), rank });
        }
        Ok(LinearSubspace { kind, equations })
    }

    /// Parses `x1+x2 = x1-x5 = x3+x4+x5 = 0`: every side except a trailing
    /// `0` is a linear form.
    pub fn parse(kind: SubspaceKind, s: &str) -> Result<Self, FamilyError> {
        let v = p4_vars();
        let mut eqs = Vec::new();
        for side in s.split('=').map(str::trim) {
            let p = parse_poly(side, &v).map_err(crate::cubic::FormError::from)?;
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous(1) || !p.is_real() {
                return Err(FamilyError::DegenerateSubspace { kind, expected: kind.codim(), rank: 0 });
            }
            eqs.push((0..5).map(|i| linear_coeff(&p, i)).collect());
        }
        LinearSubspace::new(kind, eqs)
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn equations(&self) -> &[Vec<Rat>] {
        &self.equations
    }

    /// A basis of the underlying vector space.
    pub fn basis(&self) -> Vec<Vec<Rat>> {
        linalg::kernel(&self.equations)
    }
}

fn linear_coeff(p: &GaussPoly, i: usize) -> Rat {
    let mut e = vec![0u32; 5];
    e[i] = 1;
    p.coeff(&e).re
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LineCheck {
    pub contained: bool,
    /// Present when a plane was supplied.
    pub disjoint_from_plane: Option<bool>,
}

/// Restricts `f` to the line and checks that the binary cubic vanishes;
/// disjointness from the plane is the rank of the five linear forms.
pub fn verify_line_witness(f: &CubicForm, line: &LinearSubspace, plane: Option<&LinearSubspace>) -> Result<LineCheck, FamilyError> {
    if line.kind != SubspaceKind::Line {
        return Err(FamilyError::DegenerateSubspace { kind: SubspaceKind::Line, expected: 3, rank: line.equations.len() });
    }
    let basis = line.basis();
    let st = vars(&["s", "t"]);
    let subs: Vec<GaussPoly> = (0..5)
        .map(|i| {
            &MultiPoly::var(st.clone(), 0).scale(&GaussRat::real(basis[0][i].clone()))
                + &MultiPoly::var(st.clone(), 1).scale(&GaussRat::real(basis[1][i].clone()))
        })
        .collect();
    let contained = f.poly().substitute(&subs, None).is_zero();
    let disjoint_from_plane = plane.map(|p| {
        let all: Vec<Vec<Rat>> = line.equations.iter().chain(p.equations.iter()).cloned().collect();
        linalg::rank(&all) == 5
    });
    Ok(LineCheck { contained, disjoint_from_plane })
}

fn cubic_monomials() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                for d in 0..=3 - a - b - c {
                    out.push(vec![a, b, c, d, 3 - a - b - c - d]);
                }
            }
        }
    }
    out
}

/// True iff `f = l1·q1 + l2·q2 + l3·q3` for some linear forms `l_k`: a
/// 35 × 15 linear system over ℚ(i).
pub fn verify_scroll_witness(f: &CubicForm, quadrics: &[GaussPoly; 3]) -> bool {
    let v = p4_vars();
    let products: Vec<GaussPoly> = quadrics
        .iter()
        .flat_map(|q| (0..5).map(move |j| (j, q)))
        .map(|(j, q)| &MultiPoly::var(v.clone(), j) * q)
        .collect();
    let monos = cubic_monomials();
    let a: Vec<Vec<GaussRat>> = monos.iter().map(|m| products.iter().map(|p| p.coeff(m)).collect()).collect();
    let b: Vec<GaussRat> = monos.iter().map(|m| f.poly().coeff(m)).collect();
    linalg::solve(&a, &b).is_some()
}
