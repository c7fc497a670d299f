//! JSON problem specifications and report schemas shared by the CLI and
//! the C API.
//!
//! A problem spec names a root datum, a subalgebra, and optional payloads:
//!
//! ```json
//! {
//!   "family": "C",
//!   "rank": 2,
//!   "subalgebra": {"kind": "centralizer", "sigma": [1]},
//!   "vector": ["1/2", "1/2"],
//!   "polytope": {"vertices": [["1", "1"], ["-1", "-1"]]},
//!   "sigma": [1]
//! }
//! ```
//!
//! Subalgebra kinds: `centralizer` (1-based simple root indices),
//! `subsystem` (explicit root list; integers or `"p/q"` strings),
//! `cartan` (`h = t`), and `d-type` (the `+-e_s +- e_t` subsystem).
//! Rationals always serialize back as `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::chevalley::CompactLieAlgebra;
use crate::error::{Error, Result};
use crate::fatness::Polytope;
use crate::reductive::{decompose, ReductiveDecomposition, SubalgebraSpec};
use crate::root_system::{build_root_system, CartanVector, Family, Root, RootSystem, Wall};

/// Subalgebra description as it appears in spec files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SubalgebraJson {
    Centralizer { sigma: Vec<usize> },
    Subsystem { roots: Vec<Root> },
    Cartan,
    #[serde(rename = "d-type")]
    DType,
}

impl SubalgebraJson {
    pub fn to_spec(&self, rs: &RootSystem) -> SubalgebraSpec {
        match self {
            SubalgebraJson::Centralizer { sigma } => {
                SubalgebraSpec::centralizer(sigma.iter().copied())
            }
            SubalgebraJson::Subsystem { roots } => SubalgebraSpec::subsystem(roots.clone()),
            SubalgebraJson::Cartan => SubalgebraSpec::cartan(),
            SubalgebraJson::DType => SubalgebraSpec::d_type(rs),
        }
    }
}

/// A full problem statement: root datum, subalgebra, optional payloads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub family: Family,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<SubalgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<CartanVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<Polytope>,
    /// Simple-root indices defining the translation direction `x_Sigma`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<usize>>,
}

impl ProblemSpec {
    pub fn new(family: Family, rank: usize) -> Self {
        ProblemSpec { family, rank, subalgebra: None, vector: None, polytope: None, sigma: None }
    }

    /// Parses a spec, reporting the position of any syntax error.
    pub fn from_json(s: &str) -> Result<ProblemSpec> {
        serde_json::from_str(s).map_err(|e| {
            Error::Parse(format!("problem spec: {e} (line {}, column {})", e.line(), e.column()))
        })
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        build_root_system(self.family, self.rank)
    }

    pub fn subalgebra_spec(&self, rs: &RootSystem) -> Result<SubalgebraSpec> {
        let sub = self
            .subalgebra
            .as_ref()
            .ok_or_else(|| Error::Parse("problem spec has no \"subalgebra\"".into()))?;
        Ok(sub.to_spec(rs))
    }
}

/// Output schema of a decomposition run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub family: String,
    pub rank: usize,
    pub dim: usize,
    pub dim_h: usize,
    pub dim_m: usize,
    pub degenerate: bool,
    pub delta_h: Vec<Root>,
    pub forbidden_walls: Vec<Wall>,
    pub checks: crate::reductive::DecompositionChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_sigma: Option<CartanVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    /// Killing Gram of the whole algebra, rationals as `"p/q"`; present
    /// only on request.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub killing_gram: Option<Vec<Vec<String>>>,
}

impl DecompositionReport {
    pub fn from_decomposition(d: &ReductiveDecomposition) -> Self {
        let rs = d.root_system();
        DecompositionReport {
            family: rs.family.to_string(),
            rank: rs.rank,
            dim: d.algebra().dim(),
            dim_h: d.dim_h(),
            dim_m: d.dim_m(),
            degenerate: d.is_degenerate(),
            delta_h: d.delta_h().to_vec(),
            forbidden_walls: d
                .forbidden_positive_roots()
                .into_iter()
                .map(Wall::new)
                .collect(),
            checks: *d.checks(),
            x_sigma: d.x_sigma().cloned(),
            warning: rs.warning.clone(),
            killing_gram: None,
        }
    }

    /// Attaches the full Killing Gram as a rational-string matrix.
    pub fn with_killing_gram(mut self, d: &ReductiveDecomposition) -> Self {
        let gram = d.algebra().killing_form();
        self.killing_gram = Some(
            (0..gram.nrows())
                .map(|i| gram.row(i).iter().map(crate::rational::fmt_rat).collect())
                .collect(),
        );
        self
    }
}

/// Builds algebra and decomposition for a spec in one step.
pub fn realize(spec: &ProblemSpec) -> Result<(CompactLieAlgebra, SubalgebraSpec)> {
    let rs = spec.root_system()?;
    let sub = spec.subalgebra_spec(&rs)?;
    let l = crate::chevalley::compact_real_form(&rs)?;
    Ok((l, sub))
}

/// Convenience wrapper for commands that need the decomposition itself.
pub fn realize_decomposition<'a>(
    l: &'a CompactLieAlgebra,
    sub: &SubalgebraSpec,
) -> Result<ReductiveDecomposition<'a>> {
    decompose(l, sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn parses_the_documented_example() {
        let json = r#"{
            "family": "C",
            "rank": 2,
            "subalgebra": {"kind": "centralizer", "sigma": [1]},
            "vector": ["1/2", "1/2"]
        }"#;
        let spec = ProblemSpec::from_json(json).unwrap();
        assert_eq!(spec.family, Family::C);
        assert_eq!(spec.rank, 2);
        let v = spec.vector.unwrap();
        assert_eq!(v, CartanVector::new(vec![frac(1, 2), frac(1, 2)]));
    }

    #[test]
    fn parses_subsystem_with_integer_roots() {
        let json = r#"{
            "family": "C",
            "rank": 2,
            "subalgebra": {"kind": "subsystem",
                           "roots": [[1,-1],[-1,1],[1,1],[-1,-1]]}
        }"#;
        let spec = ProblemSpec::from_json(json).unwrap();
        let rs = spec.root_system().unwrap();
        match spec.subalgebra_spec(&rs).unwrap() {
            SubalgebraSpec::Subsystem { roots } => assert_eq!(roots.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn d_type_preset_expands() {
        let json = r#"{"family":"C","rank":3,"subalgebra":{"kind":"d-type"}}"#;
        let spec = ProblemSpec::from_json(json).unwrap();
        let rs = spec.root_system().unwrap();
        match spec.subalgebra_spec(&rs).unwrap() {
            SubalgebraSpec::Subsystem { roots } => assert_eq!(roots.len(), 12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = ProblemSpec::from_json("{\"family\": \"C\",\n \"rank\": }").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn rejects_unknown_family() {
        assert!(ProblemSpec::from_json(r#"{"family":"E","rank":8}"#).is_err());
    }

    #[test]
    fn decomposition_report_round_trip() {
        let spec =
            ProblemSpec::from_json(r#"{"family":"C","rank":2,"subalgebra":{"kind":"d-type"}}"#)
                .unwrap();
        let (l, sub) = realize(&spec).unwrap();
        let d = realize_decomposition(&l, &sub).unwrap();
        let report = DecompositionReport::from_decomposition(&d);
        assert_eq!(report.dim, 10);
        assert_eq!(report.dim_h, 6);
        assert_eq!(report.dim_m, 4);
        let json = serde_json::to_string(&report).unwrap();
        let back: DecompositionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
