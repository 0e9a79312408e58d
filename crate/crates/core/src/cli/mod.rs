//! Wire formats and commands behind the `realcubic` binary.

mod suite;

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cohomology::{galois_module_catalog, h1_c2_detailed, lattice_from_presentation, GaloisCase, H1Computation, LatticePresentation};
use crate::cubic::CubicForm;
use crate::exact::{p4_vars, parse_poly, parse_rat, GaussPoly};
use crate::families::{FamilyId, LinearSubspace, ParamRecord, SubspaceKind};
use crate::verdict::{analyze, AnalysisInput, AnalysisOptions, Verdict, VerdictError};

pub use suite::{paper_suite, suite_table, Expectation, SuiteRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
    #[error("constraint violations: {}", .0.join("; "))]
    Constraints(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Semantic(_) | CliError::Constraints(_) => 3,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRequest {
    /// Three linear equations, e.g. "x1+x2 = x1-x5 = x3+x4+x5 = 0".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scroll: Option<[String; 3]>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois_swaps_scrolls: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eight_a1_iota: Option<[usize; 8]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<u32>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ade_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_4a2: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_starts: Option<usize>,
}

impl OptionsRequest {
    fn apply(&self, o: &mut AnalysisOptions) {
        if let Some(v) = self.oracle_resolution {
            o.oracle_resolution = v;
        }
        if let Some(v) = self.ade_cap {
            o.ade_cap = v;
        }
        if let Some(v) = self.strict_4a2 {
            o.strict_4a2 = v;
        }
        if let Some(v) = self.singular_starts {
            o.singular_starts = v;
        }
    }

    /// Fields set in `other` take precedence.
    pub fn overlay(&self, other: &OptionsRequest) -> OptionsRequest {
        OptionsRequest {
            oracle_resolution: other.oracle_resolution.or(self.oracle_resolution),
            ade_cap: other.ade_cap.or(self.ade_cap),
            strict_4a2: other.strict_4a2.or(self.strict_4a2),
            singular_starts: other.singular_starts.or(self.singular_starts),
        }
    }
}

/// JSON analysis request. Rationals are strings ("3", "-1/2").
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisRequest {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    /// Explicit cubic, for the families without a normal form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic: Option<String>,
    #[serde(default)]
    pub witnesses: WitnessRequest,
    #[serde(default)]
    pub declared: DeclaredRequest,
    #[serde(default)]
    pub options: OptionsRequest,
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn subspace(kind: SubspaceKind, s: &Option<String>) -> Result<Option<LinearSubspace>, CliError> {
    s.as_deref().map(|s| LinearSubspace::parse(kind, s).map_err(parse_err)).transpose()
}

impl AnalysisRequest {
    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Parse(format!("request: {e}")))
    }

    pub fn to_input(&self) -> Result<AnalysisInput, CliError> {
        let family: FamilyId = self.family.parse().map_err(parse_err)?;
        let mut params = ParamRecord::default();
        for (k, v) in &self.params {
            let r = parse_rat(v).ok_or_else(|| CliError::Parse(format!("parameter {k}: '{v}' is not a rational number")))?;
            params.set(k, r);
        }
        let mut input = match &self.cubic {
            Some(c) => {
                if !self.params.is_empty() {
                    return Err(CliError::Parse("give either params or cubic, not both".into()));
                }
                AnalysisInput::with_cubic(family, CubicForm::parse(c).map_err(parse_err)?)
            }
            None => AnalysisInput::new(family, params),
        };
        let w = &self.witnesses;
        input.witnesses.line = subspace(SubspaceKind::Line, &w.line)?;
        input.witnesses.plane = subspace(SubspaceKind::Plane, &w.plane)?;
        input.witnesses.scroll = match &w.scroll {
            Some(qs) => {
                let parsed = qs.iter().map(|q| parse_poly(q, &p4_vars()).map_err(parse_err)).collect::<Result<Vec<GaussPoly>, _>>()?;
                Some(parsed.try_into().expect("three quadrics"))
            }
            None => None,
        };
        input.declared.galois_swaps_scrolls = self.declared.galois_swaps_scrolls;
        input.declared.eight_a1_iota = self.declared.eight_a1_iota;
        input.declared.defect = self.declared.defect;
        self.options.apply(&mut input.options);
        Ok(input)
    }
}

/// Pretty JSON with object keys sorted.
pub fn to_sorted_json<T: Serialize>(v: &T) -> String {
    let value: Value = serde_json::to_value(v).expect("reports serialize");
    serde_json::to_string_pretty(&value).expect("values serialize")
}

fn semantic(e: VerdictError) -> CliError {
    match e {
        VerdictError::Constraints(v) => CliError::Constraints(v.iter().map(|v| v.to_string()).collect()),
        e => CliError::Semantic(e.to_string()),
    }
}

pub fn run_request(req: &AnalysisRequest) -> Result<Verdict, CliError> {
    analyze(&req.to_input()?).map_err(semantic)
}

/// Error report printed on stdout for semantic failures.
pub fn error_report(e: &CliError) -> Value {
    match e {
        CliError::Parse(_) => serde_json::json!({ "error": "parse", "message": e.to_string() }),
        CliError::Semantic(_) => serde_json::json!({ "error": "semantic", "message": e.to_string() }),
        CliError::Constraints(v) => serde_json::json!({ "error": "constraints", "message": e.to_string(), "violations": v }),
    }
}

/// Analyzes every request of a JSON array on `jobs` threads, in order.
pub fn sweep(requests: &[AnalysisRequest], jobs: usize) -> Vec<Value> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| {
        requests
            .par_iter()
            .map(|r| match run_request(r) {
                Ok(v) => serde_json::json!({ "verdict": v }),
                Err(e) => error_report(&e),
            })
            .collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Report {
    pub source: String,
    pub rank: usize,
    pub sigma: Vec<Vec<i64>>,
    pub group: String,
    pub divisors: Vec<u64>,
    pub kernel_basis: Vec<Vec<i64>>,
    pub image_basis: Vec<Vec<i64>>,
}

impl H1Report {
    pub fn text(&self) -> String {
        let rows = |m: &[Vec<i64>]| m.iter().map(|r| format!("  {r:?}")).collect::<Vec<_>>().join("\n");
        format!(
            "{}: rank {}\nH1 = {}\nker(s+1) basis:\n{}\nim(s-1) basis:\n{}\n",
            self.source,
            self.rank,
            self.group,
            rows(&self.kernel_basis),
            rows(&self.image_basis)
        )
    }
}

/// H¹ for a catalog case name or a presentation file.
pub fn h1_command(arg: &str) -> Result<H1Report, CliError> {
    let (source, lattice) = match arg.parse::<GaloisCase>() {
        Ok(case) => (case.to_string(), galois_module_catalog(case)),
        Err(_) if Path::new(arg).exists() => {
            let text = std::fs::read_to_string(arg).map_err(parse_err)?;
            let p: LatticePresentation = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("presentation: {e}")))?;
            (arg.to_string(), lattice_from_presentation(&p).map_err(|e| CliError::Semantic(e.to_string()))?)
        }
        Err(e) => return Err(CliError::Parse(format!("{e}; expected one of {:?} or a presentation file", GaloisCase::ALL.map(|c| c.to_string())))),
    };
    let H1Computation { group, kernel_basis, image_basis } = h1_c2_detailed(&lattice).map_err(|e| CliError::Semantic(e.to_string()))?;
    Ok(H1Report { source, rank: lattice.rank, sigma: lattice.sigma, group: group.to_string(), divisors: group.divisors, kernel_basis, image_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn req(s: &str) -> AnalysisRequest {
        AnalysisRequest::from_json(s).unwrap()
    }

    #[test]
    fn analyze_requests() {
        let v = run_request(&req(r#"{"family": "TwoA5", "params": {"b": "0"}, "options": {"singular_starts": 32}}"#)).unwrap();
        assert_eq!(v.status, Status::NotStablyRational);
        let v = run_request(&req(r#"{"family": "Chordal", "options": {"singular_starts": 32}}"#)).unwrap();
        assert_eq!(v.status, Status::Rational);
    }

    #[test]
    fn parse_and_semantic_errors() {
        let bad = req(r#"{"family": "TwoA5", "params": {"b": "1/0"}}"#);
        assert_eq!(run_request(&bad).unwrap_err().exit_code(), 2);
        assert_eq!(AnalysisRequest::from_json(r#"{"family": "TwoA5", "colour": 1}"#).unwrap_err().exit_code(), 2);
        assert_eq!(run_request(&req(r#"{"family": "Nope"}"#)).unwrap_err().exit_code(), 2);
        let violated = req(r#"{"family": "TwoA4", "params": {"t6": "0", "t7": "1", "t8": "1", "t4": "1", "t5": "1"}}"#);
        let e = run_request(&violated).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert_eq!(error_report(&e)["violations"][0], "t6 = -8*t7*t8 violated");
    }

    #[test]
    fn reports_round_trip_and_are_deterministic() {
        let r = req(r#"{"family": "TwoD4TwoA1", "params": {"a": "1", "b4": "1"}, "options": {"singular_starts": 32}}"#);
        let a = to_sorted_json(&run_request(&r).unwrap());
        let b = to_sorted_json(&run_request(&r).unwrap());
        assert_eq!(a, b);
        let back: Verdict = serde_json::from_str(&a).unwrap();
        assert_eq!(to_sorted_json(&back), a);
        let req_json = to_sorted_json(&r);
        assert_eq!(to_sorted_json(&AnalysisRequest::from_json(&req_json).unwrap()), req_json);
    }

    #[test]
    fn h1_catalog_and_presentation() {
        assert_eq!(h1_command("TwoA5").unwrap().group, "Z/2");
        assert_eq!(h1_command("sixa1trivial").unwrap().group, "0");
        let dir = std::env::temp_dir().join(format!("realcubic-h1-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("neg.json");
        std::fs::write(&file, r#"{"n_generators": 1, "involution": [[-1]]}"#).unwrap();
        let r = h1_command(file.to_str().unwrap()).unwrap();
        assert_eq!((r.group.as_str(), r.image_basis), ("Z/2", vec![vec![2]]));
        std::fs::write(&file, r#"{"n_generators": 1, "involution": [[2]]}"#).unwrap();
        assert_eq!(h1_command(file.to_str().unwrap()).unwrap_err().exit_code(), 3);
        std::fs::write(&file, r#"{"n_generators": 2, "relations": [[2, 0]], "involution": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(h1_command(file.to_str().unwrap()).unwrap_err().exit_code(), 3);
        assert_eq!(h1_command("no-such-case").unwrap_err().exit_code(), 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn sweep_keeps_order() {
        let reqs = vec![
            req(r#"{"family": "Chordal", "options": {"singular_starts": 16}}"#),
            req(r#"{"family": "TwoA5", "params": {"b": "x"}}"#),
        ];
        let out = sweep(&reqs, 2);
        assert_eq!(out[0]["verdict"]["status"], "Rational");
        assert_eq!(out[1]["error"], "parse");
    }
}
