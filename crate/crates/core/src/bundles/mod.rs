//! Fibration models obtained by projecting from a plane (quadric surface
//! bundles over P¹) or by completing squares in x1, x2 (conic bundles over
//! P²), and exact component counting for the former.

mod conic;
mod criteria;
mod fiber;
mod quadric;

use thiserror::Error;

use crate::families::FamilyError;

pub use conic::{conic_bundle_model, conic_bundle_of, ConicBundleModel};
pub use criteria::{catalog_bundle, criterion_connected, d1_line_exists, d1_two_components, d2_connected, delta1_has_real_root, lemma_families, on_criterion_boundary};
pub use fiber::{classify_quadric_fiber, fiber_at, BaseValue, signature_from_charpoly, FiberType};
pub use quadric::{component_count_over_line, quadric_bundle, quadric_bundle_gram, BaseArc, BaseArcDecomposition, BasePoint, Boundary, Chart, QuadricBundle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("{0} must only involve x3, x4, x5")]
    WrongSupport(&'static str),
    #[error("{what} must have degree {expected}")]
    WrongDegree { what: &'static str, expected: u32 },
    #[error("the cubic is not of the form L(x1^2+x2^2) + x1 q1 + x2 q2 + f3")]
    NotConicForm,
    #[error("the cubic has non-real coefficients")]
    NotReal,
    #[error("the plane is not contained in the cubic")]
    PlaneNotContained,
    #[error("non-catalog degeneration: the fiber quadric is singular over the whole base")]
    DegeneratePencil,
    #[error("family has no catalog quadric bundle")]
    NoCatalogBundle,
    #[error(transparent)]
    Family(#[from] FamilyError),
}
