//! Floating-point cross-checks: components of plane regions `{G ≥ 0}` in
//! P²(ℝ), fiber scans of quadric bundles over P¹(ℝ), and a numeric search
//! for real singular points.

mod fiber;
mod region;
mod singular;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{to_f64, MultiPoly, Rat};

pub use fiber::fiber_scan_p1;
pub use region::{region_components_p2, region_components_p2_at};
pub use singular::{real_singular_search, RealSingularPoint, SingularSearch};

/// Margins below this make a report unstable.
pub const MARGIN_FLOOR: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("resolution must be at least {min}, got {got}")]
    Resolution { min: usize, got: usize },
    #[error("the region polynomial must be a real form of even degree in three variables")]
    BadRegion,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub resolution: usize,
    pub component_count: usize,
    /// Smallest normalized value jump across a sign boundary of the grid.
    pub min_margin: f64,
    /// Same count at half the resolution, and margin above the floor.
    pub stable: bool,
}

/// A real polynomial compiled for fast evaluation.
#[derive(Clone, Debug)]
pub(crate) struct FloatPoly {
    terms: Vec<(Vec<i32>, f64)>,
}

impl FloatPoly {
    pub(crate) fn new(p: &MultiPoly<Rat>) -> Self {
        FloatPoly { terms: p.terms().map(|(e, c)| (e.iter().map(|&k| k as i32).collect(), to_f64(c))).collect() }
    }

    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, &xi)| acc * xi.powi(k))).sum()
    }

    pub(crate) fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}
