//! Built-in catalog of certification cases with frozen expected verdicts.
//!
//! Every entry must reproduce its verdict on every build; the acceptance
//! suite and the CLI tests both replay the whole catalog.

use crate::error::Result;
use crate::fatness::{fat_check, translate_polytope};
use crate::problem::{realize, realize_decomposition, ProblemSpec};
use crate::rational::fmt_rat;
use crate::reductive::x_sigma;
use crate::twistor::certify_twistor;

/// What to run for an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogKind {
    Twistor,
    FatCheck,
    Translate,
}

/// A named case: spec JSON plus the expected verdict string.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: CatalogKind,
    pub spec_json: &'static str,
    pub expected_verdict: &'static str,
}

/// The shipped catalog.
pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "sp4-so4-twistor",
            kind: CatalogKind::Twistor,
            spec_json: r#"{"family":"C","rank":2,"subalgebra":{"kind":"d-type"}}"#,
            expected_verdict: "certified_fat",
        },
        CatalogEntry {
            name: "sp6-so6-twistor",
            kind: CatalogKind::Twistor,
            spec_json: r#"{"family":"C","rank":3,"subalgebra":{"kind":"d-type"}}"#,
            expected_verdict: "certified_fat",
        },
        CatalogEntry {
            name: "sp8-so8-twistor",
            kind: CatalogKind::Twistor,
            spec_json: r#"{"family":"C","rank":4,"subalgebra":{"kind":"d-type"}}"#,
            expected_verdict: "certified_fat",
        },
        CatalogEntry {
            name: "su3-torus-twistor",
            kind: CatalogKind::Twistor,
            spec_json: r#"{"family":"A","rank":2,"subalgebra":{"kind":"cartan"}}"#,
            expected_verdict: "failed:no_t",
        },
        CatalogEntry {
            name: "sp4-full-degenerate",
            kind: CatalogKind::Twistor,
            spec_json: r#"{"family":"C","rank":2,"subalgebra":{"kind":"subsystem",
                "roots":[[1,1],[1,-1],[-1,1],[-1,-1],[2,0],[-2,0],[0,2],[0,-2]]}}"#,
            expected_verdict: "failed:degenerate_base",
        },
        CatalogEntry {
            name: "sp4-u2-half-half",
            kind: CatalogKind::FatCheck,
            spec_json: r#"{"family":"C","rank":2,
                "subalgebra":{"kind":"centralizer","sigma":[1]},
                "vector":["1/2","1/2"]}"#,
            expected_verdict: "fat",
        },
        CatalogEntry {
            name: "sp4-u2-zero-vector",
            kind: CatalogKind::FatCheck,
            spec_json: r#"{"family":"C","rank":2,
                "subalgebra":{"kind":"centralizer","sigma":[1]},
                "vector":["0","0"]}"#,
            expected_verdict: "not_fat",
        },
        CatalogEntry {
            name: "sp4-u2-square-translate",
            kind: CatalogKind::Translate,
            spec_json: r#"{"family":"C","rank":2,
                "subalgebra":{"kind":"centralizer","sigma":[1]},
                "polytope":{"vertices":[[1,1],[1,-1],[-1,1],[-1,-1]]},
                "sigma":[1]}"#,
            expected_verdict: "c_star=2/1",
        },
    ]
}

/// Runs one entry and returns its actual verdict string.
pub fn run_entry(entry: &CatalogEntry) -> Result<String> {
    let spec = ProblemSpec::from_json(entry.spec_json)?;
    let (l, sub) = realize(&spec)?;
    match entry.kind {
        CatalogKind::Twistor => {
            let cert = certify_twistor(&l, &sub);
            Ok(match cert.failure_reason {
                None => cert.verdict,
                Some(reason) => format!("failed:{reason}"),
            })
        }
        CatalogKind::FatCheck => {
            let d = realize_decomposition(&l, &sub)?;
            let v = spec
                .vector
                .as_ref()
                .ok_or_else(|| crate::error::Error::Parse("entry has no vector".into()))?;
            let cert = fat_check(v, &d)?;
            Ok(if cert.is_fat() { "fat".into() } else { "not_fat".into() })
        }
        CatalogKind::Translate => {
            let d = realize_decomposition(&l, &sub)?;
            let p = spec
                .polytope
                .as_ref()
                .ok_or_else(|| crate::error::Error::Parse("entry has no polytope".into()))?;
            let sig = spec.sigma.clone().unwrap_or_default().into_iter().collect();
            let direction = x_sigma(d.root_system(), &sig)?;
            let report = translate_polytope(p, &direction, &d)?;
            Ok(format!("c_star={}", fmt_rat(&report.c_star)))
        }
    }
}
