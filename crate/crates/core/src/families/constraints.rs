use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::build::QPair;
use super::{FamilyError, FamilyId, ParamRecord};
use crate::exact::{rat, Rat};

/// A defining equality or inequality of a family that the record breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub constraint: String,
    pub source: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated", self.constraint)
    }
}

/// Checks the family-defining relations. An empty list means the record
/// lies in the family (genericity is not checked here; the singularity
/// audit reports the computed types).
pub fn validate_constraints(family: FamilyId, params: &ParamRecord, strict_4a2: bool) -> Result<Vec<Violation>, FamilyError> {
    use FamilyId::*;
    let p = params.resolve(family)?;
    let v = |k: &str| p.v(k).clone();
    let mut out = Vec::new();
    let mut need = |ok: bool, constraint: &str, source: &str| {
        if !ok {
            out.push(Violation { constraint: constraint.into(), source: source.into() });
        }
    };
    let a3 = "A3 points of the two-point form without a plane";
    let eighth = |t1: Rat, t2: Rat| {
        let d = t1 - t2;
        &d * &d / rat(8)
    };
    match family {
        TwoA1 | TwoA2 => {
            let cell = QPair(p.selector("qpair"));
            need(!cell.uses_lambda() || v("lambda").is_positive(), "lambda > 0", "positivity guard of the (q1, q2) table");
            if family == TwoA2 {
                need(cell.rank_one(&v("lambda")), "q1 + i*q2 a square (cell 1, or cell 8 with lambda = 1/2)", "A2 points of the two-point form");
            }
        }
        TwoA3NoPlane | TwoA4 => {
            need(v("t7") == v("t10"), "t7 = t10", a3);
            need(v("t8") == v("t9"), "t8 = t9", a3);
            if family == TwoA4 {
                let a4 = "A4 points of the two-point form";
                need(v("t6") == rat(-8) * v("t7") * v("t8"), "t6 = -8*t7*t8", a4);
                need(v("t4") == v("t5") + rat(4) * v("t7") * v("t7") - rat(4) * v("t8") * v("t8"), "t4 = t5 + 4*t7^2 - 4*t8^2", a4);
            }
        }
        TwoA2TwoA1 => {
            let b = -eighth(v("t1"), v("t2"));
            let src = "2A2+2A1 condition on the four-point form";
            need(v("b1") == b, "b1 = -(t1-t2)^2/8", src);
            need(v("b2") == b, "b2 = -(t1-t2)^2/8", src);
        }
        FourA2 => {
            let q = eighth(v("t1"), v("t2"));
            if strict_4a2 {
                let src = "4A2 condition on the four-point form, literal reading";
                need(v("b1") == v("b2"), "b1 = b2", src);
                need(v("b2") == v("b3"), "b2 = b3", src);
                need(v("b3") == v("b4") - q, "b3 = b4 - (t1-t2)^2/8", src);
            } else {
                let src = "4A2 condition on the four-point form, chained reading";
                for k in ["b1", "b2", "b3", "b4"] {
                    need(v(k) == -q.clone(), &format!("{k} = -(t1-t2)^2/8"), src);
                }
            }
        }
        TwoA3TwoA1ThreePlanes => need(!v("t6").is_zero(), "t6 != 0", "2A3+2A1 points with three planes"),
        TwoA3TwoA1OnePlane => {
            need(!(v("r1").is_zero() && v("r2").is_zero()), "(r1, r2) != (0, 0)", "defect one: no pair of conjugate planes through p3, p4");
        }
        TwoD4TwoA1 => need(!v("a").is_zero(), "a != 0", "2D4+2A1 normal form"),
        EightA1 => {
            need(!v("a1").is_zero(), "a1 != 0", "8A1 forms");
            need(!v("a2").is_zero(), "a2 != 0", "8A1 forms");
        }
        _ => {}
    }
    Ok(out)
}
