use rand::Rng;

use super::build::complete_constraints;
use super::{FamilyId, ParamRecord};
use crate::exact::{ratio, Rat};

/// A small random rational: numerator in [-12, 12], denominator 1 or up
/// to 4.
pub fn small_rat(rng: &mut impl Rng) -> Rat {
    let num = rng.gen_range(-12i64..=12);
    let den = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1i64..=4) };
    ratio(num, den)
}

/// A random record for `family`: free parameters drawn with [`small_rat`],
/// dependent ones solved from the family's equalities. Selectors keep their
/// defaults except the 8A1 variant. Draws may still be degenerate (wrong
/// singularity types or a real singular point), so callers filter.
pub fn random_params(family: FamilyId, rng: &mut impl Rng) -> ParamRecord {
    let defaults = family.defaults();
    let mut p = ParamRecord::default();
    for name in family.param_names() {
        match name.as_str() {
            "qpair" => p.set(&name, defaults.get("qpair").cloned().unwrap_or_default()),
            "variant" => p.set(&name, ratio(rng.gen_range(1i64..=3), 1)),
            "lambda" => p.set(&name, ratio(rng.gen_range(1i64..=8), rng.gen_range(1i64..=4))),
            _ => p.set(&name, small_rat(rng)),
        }
    }
    complete_constraints(family, &p, false).unwrap_or(p)
}
