use std::fmt;

use serde::Serialize;

use crate::exact::{sign, IsolatedRoot, Rat, UPoly};

/// Real locus of a quadric surface in P³, read off from its signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FiberType {
    Empty,
    Point,
    Sphere,
    Cone,
    Hyperboloid,
    /// Rank at most two: one or two real planes, or a real line.
    Degenerate,
}

impl FiberType {
    pub fn from_signature(pos: usize, neg: usize) -> FiberType {
        let (big, small) = (pos.max(neg), pos.min(neg));
        match (big + small, small) {
            (4, 0) => FiberType::Empty,
            (4, 1) => FiberType::Sphere,
            (4, _) => FiberType::Hyperboloid,
            (3, 0) => FiberType::Point,
            (3, _) => FiberType::Cone,
            _ => FiberType::Degenerate,
        }
    }

    pub fn is_empty(self) -> bool {
        self == FiberType::Empty
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Fiber type of the diagonal quadric with the given entry signs.
pub fn classify_quadric_fiber(signs: [i8; 4]) -> FiberType {
    let pos = signs.iter().filter(|&&s| s > 0).count();
    let neg = signs.iter().filter(|&&s| s < 0).count();
    FiberType::from_signature(pos, neg)
}

/// `(positive, negative)` eigenvalue counts of a real symmetric matrix from
/// the signs of its characteristic polynomial `c_0 + c_1 λ + … + c_n λⁿ`.
/// The polynomial is real-rooted, so Descartes' rule is exact.
pub fn signature_from_charpoly(signs: &[i8]) -> (usize, usize) {
    let n = signs.len() - 1;
    let zeros = signs.iter().take_while(|&&s| s == 0).count();
    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    let pos = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
    (pos, n - zeros - pos)
}

/// Where on the base a fiber is evaluated.
#[derive(Clone, Debug)]
pub enum BaseValue<'a> {
    Rational(&'a Rat),
    Root(&'a IsolatedRoot),
}

impl BaseValue<'_> {
    fn sign_of(&self, p: &UPoly) -> i8 {
        if p.is_zero() {
            return 0;
        }
        match self {
            BaseValue::Rational(x) => sign(&p.eval(x)),
            BaseValue::Root(r) => r.sign_of(p),
        }
    }
}

/// Fiber type of a Gram pencil at a base value, given the pencil's
/// characteristic polynomial coefficients.
pub fn fiber_at(charpoly: &[UPoly], at: BaseValue<'_>) -> FiberType {
    let signs: Vec<i8> = charpoly.iter().map(|c| at.sign_of(c)).collect();
    let (pos, neg) = signature_from_charpoly(&signs);
    FiberType::from_signature(pos, neg)
}
