//! Exact arithmetic: ℚ, ℚ(i), ℚ(t), polynomials, real roots, symmetric forms.

pub mod field;
pub mod gauss;
pub mod linalg;
pub mod multipoly;
pub mod parse;
pub mod ratfunc;
pub mod roots;
pub mod symmetric;
pub mod upoly;

pub use field::{fmt_rat, parse_rat, rat, ratio, sign, to_f64, Field, Rat};
pub use gauss::GaussRat;
pub use multipoly::{p4_vars, vars, GaussPoly, MultiPoly, Vars};
pub use parse::{parse_gauss, parse_poly, ParseError};
pub use ratfunc::RatFunc;
pub use roots::{count_real_roots, isolate_real_roots, merged_roots, rational_between, sturm_chain, IsolatedRoot, RootError};
pub use symmetric::{char_poly_upoly, congruence_diagonalize, det_upoly, diagonalize_symmetric, mat_mul, transpose, Diagonalization, Matrix};
pub use upoly::UPoly;
