//! Catalog of real normal forms: parameter schemas, constructors, constraint
//! checks, discriminant polynomials, planes and witness verification.

mod build;
mod constraints;
pub mod discriminant;
mod planes;
mod sample;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::cubic::FormError;
use crate::exact::{fmt_rat, parse_rat, rat, ratio, Rat};

pub use build::{build_cubic, catalog_points, complete_constraints, eight_a1_conjugation, QPair};
pub use constraints::{validate_constraints, Violation};
pub use discriminant::{discriminant_polynomial, Discriminant};
pub use planes::{eight_a1_incidence, plane_in_cubic, planes_through_points, real_planes_in_x3_section, CatalogPlane, PlaneReport};
pub use sample::{random_params, small_rat};
pub use witness::{verify_line_witness, verify_scroll_witness, LineCheck, LinearSubspace, SubspaceKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family {family} has no parameter '{name}'")]
    UnknownParam { family: FamilyId, name: String },
    #[error("parameter '{name}' must be an integer in {range}, got {value}")]
    BadSelector { name: String, range: String, value: String },
    #[error("family {0} has no normal form; supply the cubic directly")]
    NoNormalForm(FamilyId),
    #[error("family {0} has no catalog discriminant; use the bundles module")]
    NoDiscriminant(FamilyId),
    #[error("family {0} has no catalog plane list")]
    NoPlanes(FamilyId),
    #[error("a {kind} needs {expected} independent linear forms, got rank {rank}")]
    DegenerateSubspace { kind: SubspaceKind, expected: usize, rank: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

macro_rules! families {
    ($($id:ident => $name:literal),* $(,)?) => {
        /// One normal form (or, for the raw families, one geometric situation).
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FamilyId { $($id),* }

        impl FamilyId {
            pub const ALL: &'static [FamilyId] = &[$(FamilyId::$id),*];

            pub fn name(self) -> &'static str {
                match self { $(FamilyId::$id => $name),* }
            }
        }

        impl FromStr for FamilyId {
            type Err = FamilyError;
            fn from_str(s: &str) -> Result<Self, FamilyError> {
                match s {
                    $($name => Ok(FamilyId::$id),)*
                    _ => Err(FamilyError::UnknownFamily(s.to_string())),
                }
            }
        }
    };
}

families! {
    TwoA1 => "TwoA1",
    TwoA2 => "TwoA2",
    TwoA3NoPlane => "TwoA3NoPlane",
    TwoA3Plane => "TwoA3Plane",
    TwoA4 => "TwoA4",
    TwoA5 => "TwoA5",
    TwoD4MinusQ => "TwoD4MinusQ",
    TwoD4PlusQ => "TwoD4PlusQ",
    FourA1Plane => "FourA1Plane",
    FourA1Gen => "FourA1Gen",
    TwoA2TwoA1 => "TwoA2TwoA1",
    FourA2 => "FourA2",
    TwoA3TwoA1ThreePlanes => "TwoA3TwoA1ThreePlanes",
    TwoA3TwoA1OnePlane => "TwoA3TwoA1OnePlane",
    TwoD4TwoA1 => "TwoD4TwoA1",
    SixA1NoPlane => "SixA1NoPlane",
    SixA1OnePlane => "SixA1OnePlane",
    SixA1ThreeRealPlanes => "SixA1ThreeRealPlanes",
    SixA1OneRealPlane => "SixA1OneRealPlane",
    TwoA2FourA1 => "TwoA2FourA1",
    TwoA3FourA1 => "TwoA3FourA1",
    EightA1 => "EightA1",
    ConicLocus => "ConicLocus",
    Chordal => "Chordal",
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn list(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl FamilyId {
    /// Parameter names accepted by the family, in display order.
    pub fn param_names(self) -> Vec<String> {
        use FamilyId::*;
        let four = || [list(&["r1", "r2", "r3", "r4", "a"]), names("b", 4), names("t", 6)].concat();
        match self {
            TwoA1 | TwoA2 => [names("t", 10), list(&["qpair", "lambda"])].concat(),
            TwoA3NoPlane | TwoA4 => names("t", 10),
            TwoA5 => list(&["b"]),
            TwoD4MinusQ | TwoD4PlusQ => names("t", 6),
            FourA1Gen | TwoA2TwoA1 | FourA2 => [list(&["a"]), names("b", 4), names("t", 2)].concat(),
            TwoA3TwoA1ThreePlanes => [list(&["a"]), names("b", 4), list(&["t2", "t6"])].concat(),
            TwoA3TwoA1OnePlane => four(),
            TwoD4TwoA1 => list(&["a", "b3", "b4"]),
            SixA1ThreeRealPlanes | SixA1OneRealPlane => list(&["a", "a1", "a2", "a3"]),
            EightA1 => list(&["a1", "a2", "a3", "variant"]),
            ConicLocus => names("a", 13),
            TwoA3Plane | FourA1Plane | SixA1NoPlane | SixA1OnePlane | TwoA2FourA1 | TwoA3FourA1 | Chordal => vec![],
        }
    }

    /// Reference values used for parameters that a record leaves out. Each
    /// default record is a member of the family with the declared
    /// singularities and no real singular point.
    pub fn defaults(self) -> ParamRecord {
        use FamilyId::*;
        let ints = |xs: &[(&str, i64)]| ParamRecord::from_pairs(xs.iter().map(|(k, v)| (*k, rat(*v))));
        match self {
            TwoA1 => ints(&[("t1", 1), ("t5", 1), ("t9", 1), ("t10", 1), ("qpair", 2), ("lambda", 1)]),
            TwoA2 => {
                let mut p = ints(&[("t1", 1), ("t4", 1), ("t5", 1), ("t8", 1), ("qpair", 8)]);
                p.set("lambda", ratio(1, 2));
                p
            }
            TwoA3NoPlane => ints(&[("t1", 1), ("t2", 1), ("t3", 1), ("t4", 1), ("t5", 1), ("t6", 1), ("t7", 1), ("t8", 1), ("t9", 1), ("t10", 1)]),
            TwoA4 => ints(&[("t1", 1), ("t2", 1), ("t3", 1), ("t4", 1), ("t5", 1), ("t6", -8), ("t7", 1), ("t8", 1), ("t9", 1), ("t10", 1)]),
            TwoA5 => ParamRecord::default(),
            TwoD4MinusQ | TwoD4PlusQ => ints(&[("t1", 1)]),
            FourA1Gen => ints(&[("a", 1), ("b1", 1), ("b2", 1), ("b3", 1), ("b4", 1), ("t1", 1), ("t2", 1)]),
            TwoA2TwoA1 => ints(&[("a", 1), ("b1", -2), ("b2", -2), ("b3", 1), ("b4", 1), ("t1", 5), ("t2", 1)]),
            FourA2 => ints(&[("a", 1), ("b1", -2), ("b2", -2), ("b3", -2), ("b4", -2), ("t1", 5), ("t2", 1)]),
            TwoA3TwoA1ThreePlanes => ints(&[("a", 1), ("b1", 1), ("b2", 1), ("b3", 1), ("b4", 1), ("t2", 1), ("t6", 1)]),
            TwoA3TwoA1OnePlane => {
                let mut p = ints(&[("r1", 1), ("r3", 1), ("b2", 1), ("b4", 2), ("t1", 1), ("t2", 2), ("t4", 1), ("t5", 1), ("t6", 1)]);
                p.set("b1", ratio(3, 4));
                p.set("a", ratio(1, 2));
                p
            }
            TwoD4TwoA1 => ints(&[("a", 1), ("b4", 3)]),
            SixA1ThreeRealPlanes | SixA1OneRealPlane => ints(&[("a", 1), ("a1", 1), ("a2", 1), ("a3", 1)]),
            EightA1 => ints(&[("a1", 1), ("a2", 1), ("a3", 1), ("variant", 1)]),
            ConicLocus => ints(&[("a2", 1), ("a4", -1)]),
            TwoA3Plane | FourA1Plane | SixA1NoPlane | SixA1OnePlane | TwoA2FourA1 | TwoA3FourA1 | Chordal => ParamRecord::default(),
        }
    }

    /// Families given by a printed normal form with parameters.
    pub fn has_normal_form(self) -> bool {
        use FamilyId::*;
        !matches!(self, TwoA3Plane | FourA1Plane | SixA1NoPlane | SixA1OnePlane | TwoA2FourA1 | TwoA3FourA1)
    }

    /// Singular locus is a curve rather than finitely many points.
    pub fn non_isolated(self) -> bool {
        matches!(self, FamilyId::ConicLocus | FamilyId::Chordal)
    }
}

/// Named rational parameters of a normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamRecord(BTreeMap<String, Rat>);

impl ParamRecord {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Rat)>) -> Self {
        ParamRecord(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// Parses `name=value` pairs separated by commas, e.g. `"t1=-1,t5=3/2"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut out = ParamRecord::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| format!("expected name=value, got '{item}'"))?;
            let r = parse_rat(v.trim()).ok_or_else(|| format!("'{}' is not a rational number", v.trim()))?;
            out.set(k.trim(), r);
        }
        Ok(out)
    }

    pub fn set(&mut self, name: &str, v: Rat) {
        self.0.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rat)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the names against the family schema and fills missing ones from
    /// the family defaults (zero where the default record is silent).
    pub fn resolve(&self, family: FamilyId) -> Result<Resolved, FamilyError> {
        let allowed = family.param_names();
        if let Some(bad) = self.0.keys().find(|k| !allowed.contains(k)) {
            return Err(FamilyError::UnknownParam { family, name: bad.clone() });
        }
        let defaults = family.defaults();
        let mut values = BTreeMap::new();
        for name in &allowed {
            let v = self.0.get(name).or_else(|| defaults.get(name)).cloned().unwrap_or_else(Rat::zero);
            values.insert(name.clone(), v);
        }
        // the A3 relations t9 = t8, t10 = t7 are inherited unless overridden
        if matches!(family, FamilyId::TwoA3NoPlane | FamilyId::TwoA4) {
            for (dep, src) in [("t9", "t8"), ("t10", "t7")] {
                if !self.0.contains_key(dep) && self.0.contains_key(src) {
                    values.insert(dep.to_string(), values[src].clone());
                }
            }
        }
        let r = Resolved { family, values };
        r.check_selectors()?;
        Ok(r)
    }
}

impl fmt::Display for ParamRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={}", fmt_rat(v))).collect();
        f.write_str(&parts.join(","))
    }
}

/// A parameter record checked against its family with every name present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolved {
    family: FamilyId,
    values: BTreeMap<String, Rat>,
}

impl Resolved {
    pub fn family(&self) -> FamilyId {
        self.family
    }

    /// Value of a schema parameter; panics on names outside the schema.
    pub fn v(&self, name: &str) -> &Rat {
        self.values.get(name).unwrap_or_else(|| panic!("{} has no parameter {name}", self.family))
    }

    pub fn record(&self) -> ParamRecord {
        ParamRecord(self.values.clone())
    }

    pub fn selector(&self, name: &str) -> u32 {
        let v = self.v(name);
        v.to_integer().try_into().expect("checked selector")
    }

    fn check_selectors(&self) -> Result<(), FamilyError> {
        let check = |name: &str, lo: i64, hi: i64| -> Result<(), FamilyError> {
            let v = self.v(name);
            if v.is_integer() && *v >= rat(lo) && *v <= rat(hi) {
                Ok(())
            } else {
                Err(FamilyError::BadSelector { name: name.into(), range: format!("{lo}..={hi}"), value: fmt_rat(v) })
            }
        };
        match self.family {
            FamilyId::TwoA1 | FamilyId::TwoA2 => check("qpair", 1, 10),
            FamilyId::EightA1 => check("variant", 1, 3),
            _ => Ok(()),
        }
    }
}
