//! Equal-rank subalgebras `h` of a compact form `k` and the orthogonal
//! reductive decomposition `k = h + m`.
//!
//! A subalgebra is named either by a closed symmetric root subsystem or by
//! the subset `Sigma` of simple roots whose centralizer element `x_Sigma`
//! cuts it out. The torus always sits inside `h` (equal rank is structural);
//! `m` is spanned by the `U`/`V` frames of the complement roots. All
//! validity checks (orthogonality, `[h,m] in m`, non-degeneracy of the
//! Killing restriction) are computed exactly and reported rather than
//! assumed.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chevalley::{BasisLabel, CompactLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{determinant, vec_add, Mat};
use crate::rational::{rat, Rational};
use crate::root_system::{evaluate_root, CartanVector, Root, RootSystem};

/// How the subalgebra is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubalgebraSpec {
    /// Centralizer of the element `x_Sigma`; `sigma` holds 1-based simple
    /// root indices.
    Centralizer { sigma: BTreeSet<usize> },
    /// An explicit closed symmetric set of roots. The empty set gives
    /// `h = t` (the maximal torus).
    Subsystem { roots: Vec<Root> },
}

impl SubalgebraSpec {
    pub fn centralizer<I: IntoIterator<Item = usize>>(sigma: I) -> Self {
        SubalgebraSpec::Centralizer { sigma: sigma.into_iter().collect() }
    }

    pub fn subsystem(roots: Vec<Root>) -> Self {
        SubalgebraSpec::Subsystem { roots }
    }

    /// The maximal torus, `Delta(h)` empty.
    pub fn cartan() -> Self {
        SubalgebraSpec::Subsystem { roots: Vec::new() }
    }

    /// The roots `+-e_s +- e_t` of a system, i.e. the D-type subsystem of
    /// C_n (or B_n); this is the embedding behind `so(2n) in sp(2n)`.
    pub fn d_type(rs: &RootSystem) -> Self {
        let roots = rs
            .roots
            .iter()
            .filter(|r| {
                let nonzero: Vec<&Rational> =
                    r.coords().iter().filter(|c| !c.is_zero()).collect();
                nonzero.len() == 2 && nonzero.iter().all(|c| c.abs() == rat(1))
            })
            .cloned()
            .collect();
        SubalgebraSpec::Subsystem { roots }
    }
}

impl fmt::Display for SubalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubalgebraSpec::Centralizer { sigma } => {
                let idx: Vec<String> = sigma.iter().map(|i| i.to_string()).collect();
                write!(f, "centralizer{{{}}}", idx.join(","))
            }
            SubalgebraSpec::Subsystem { roots } if roots.is_empty() => write!(f, "cartan"),
            SubalgebraSpec::Subsystem { roots } => write!(f, "subsystem({} roots)", roots.len()),
        }
    }
}

/// A closure or symmetry violation found by [`validate_subsystem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubsystemViolation {
    NotARoot { root: Root },
    MissingNegation { root: Root },
    NotClosed { a: Root, b: Root, sum: Root },
}

impl fmt::Display for SubsystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsystemViolation::NotARoot { root } => write!(f, "{root} is not a root"),
            SubsystemViolation::MissingNegation { root } => {
                write!(f, "negation of {root} is missing")
            }
            SubsystemViolation::NotClosed { a, b, sum } => {
                write!(f, "{a} + {b} = {sum} is a root outside the set")
            }
        }
    }
}

/// The element of the torus vanishing on the simple roots in `sigma` and
/// evaluating to 1 on the rest.
pub fn x_sigma(rs: &RootSystem, sigma: &BTreeSet<usize>) -> Result<CartanVector> {
    if let Some(&bad) = sigma.iter().find(|&&i| i == 0 || i > rs.rank) {
        return Err(Error::Dimension(format!(
            "sigma index {bad} out of range 1..={}",
            rs.rank
        )));
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(rs.rank + 1);
    let mut rhs: Vec<Rational> = Vec::with_capacity(rs.rank + 1);
    for (i, a) in rs.simple_roots.iter().enumerate() {
        rows.push(a.coords().to_vec());
        rhs.push(if sigma.contains(&(i + 1)) { rat(0) } else { rat(1) });
    }
    if rs.ambient_dim > rs.rank {
        // A family: pin the sum-zero hyperplane
        rows.push(vec![rat(1); rs.ambient_dim]);
        rhs.push(rat(0));
    }
    match crate::linalg::solve(&Mat::from_rows(rows), &rhs) {
        crate::linalg::Solve::Unique(x) => Ok(CartanVector::new(x)),
        other => Err(Error::InvariantViolation(format!(
            "x_sigma system not uniquely solvable: {other:?}"
        ))),
    }
}

/// `{alpha in Delta : alpha(x_Sigma) = 0}`, automatically symmetric and
/// closed.
pub fn centralizer_subsystem(rs: &RootSystem, sigma: &BTreeSet<usize>) -> Result<Vec<Root>> {
    let x = x_sigma(rs, sigma)?;
    let mut out = Vec::new();
    for r in &rs.roots {
        if evaluate_root(r, &x)?.is_zero() {
            out.push(r.clone());
        }
    }
    Ok(out)
}

/// Checks that `s` is a symmetric, closed subset of the roots.
pub fn validate_subsystem(rs: &RootSystem, s: &[Root]) -> Vec<SubsystemViolation> {
    let set: BTreeSet<&Root> = s.iter().collect();
    let mut violations = Vec::new();
    for r in s {
        if !rs.contains(r) {
            violations.push(SubsystemViolation::NotARoot { root: r.clone() });
            continue;
        }
        if !set.contains(&r.negate()) {
            violations.push(SubsystemViolation::MissingNegation { root: r.clone() });
        }
    }
    for a in s {
        for b in s {
            let sum = Root::new(vec_add(a.coords(), b.coords()));
            if rs.contains(&sum) && !set.contains(&sum) {
                violations.push(SubsystemViolation::NotClosed {
                    a: a.clone(),
                    b: b.clone(),
                    sum,
                });
            }
        }
    }
    violations.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
    violations.dedup();
    violations
}

/// A subsystem is admissible for decomposition when every element is a root
/// and the set is negation-symmetric. Additive closure violations are
/// reported by [`validate_subsystem`] but do not block: the motivating
/// `so(2n) in sp(2n)` embedding has a non-closed root set (it is not a
/// regular subalgebra), and its non-closure surfaces honestly as a false
/// `bracket_hm_in_m` flag instead.
pub fn is_admissible(violations: &[SubsystemViolation]) -> bool {
    violations
        .iter()
        .all(|v| matches!(v, SubsystemViolation::NotClosed { .. }))
}

/// Boolean validity record of a decomposition; every flag is computed by
/// exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionChecks {
    pub equal_rank: bool,
    pub orthogonal: bool,
    pub bracket_hm_in_m: bool,
    pub killing_nondeg_on_h: bool,
    pub killing_nondeg_on_m: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.equal_rank
            && self.orthogonal
            && self.bracket_hm_in_m
            && self.killing_nondeg_on_h
            && self.killing_nondeg_on_m
    }
}

/// The decomposition `k = h + m` for a chosen subalgebra, with exact
/// validity flags.
#[derive(Debug, Clone)]
pub struct ReductiveDecomposition<'a> {
    algebra: &'a CompactLieAlgebra,
    delta_h: Vec<Root>,
    h_basis: Vec<usize>,
    m_basis: Vec<usize>,
    x_sigma: Option<CartanVector>,
    checks: DecompositionChecks,
}

/// Builds the decomposition for the given subalgebra spec.
///
/// The operation succeeds even if some validity check fails (callers read
/// the flags); only a malformed spec is an error. The degenerate case
/// `h = k` (empty `m`) is allowed and flagged through
/// [`ReductiveDecomposition::is_degenerate`].
pub fn decompose<'a>(
    algebra: &'a CompactLieAlgebra,
    spec: &SubalgebraSpec,
) -> Result<ReductiveDecomposition<'a>> {
    let rs = algebra.root_system();
    let (delta_h, x_sig) = match spec {
        SubalgebraSpec::Centralizer { sigma } => {
            (centralizer_subsystem(rs, sigma)?, Some(x_sigma(rs, sigma)?))
        }
        SubalgebraSpec::Subsystem { roots } => {
            let violations = validate_subsystem(rs, roots);
            if !is_admissible(&violations) {
                let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(Error::InvalidSubsystem(msgs.join("; ")));
            }
            let mut sorted = roots.clone();
            sorted.sort();
            sorted.dedup();
            (sorted, None)
        }
    };

    let mut h_basis: Vec<usize> = (0..rs.rank).collect();
    let mut m_basis: Vec<usize> = Vec::new();
    for (idx, label) in algebra.basis_labels().iter().enumerate() {
        match label {
            BasisLabel::Cartan(_) => {}
            BasisLabel::RootU(beta) | BasisLabel::RootV(beta) => {
                if delta_h.contains(beta) {
                    h_basis.push(idx);
                } else {
                    m_basis.push(idx);
                }
            }
        }
    }

    let gram = algebra.killing_form();
    let orthogonal = h_basis
        .iter()
        .all(|&a| m_basis.iter().all(|&b| gram.at(a, b).is_zero()));
    let bracket_hm_in_m = h_basis.iter().all(|&a| {
        m_basis.iter().all(|&b| {
            h_basis
                .iter()
                .all(|&k| algebra.bracket_basis(a, b)[k].is_zero())
        })
    });
    let killing_nondeg_on_h = !determinant(&gram.select(&h_basis, &h_basis))?.is_zero();
    let killing_nondeg_on_m =
        m_basis.is_empty() || !determinant(&gram.select(&m_basis, &m_basis))?.is_zero();

    Ok(ReductiveDecomposition {
        algebra,
        delta_h,
        h_basis,
        m_basis,
        x_sigma: x_sig,
        checks: DecompositionChecks {
            equal_rank: true, // structural: the torus frame is always in h
            orthogonal,
            bracket_hm_in_m,
            killing_nondeg_on_h,
            killing_nondeg_on_m,
        },
    })
}

impl<'a> ReductiveDecomposition<'a> {
    pub fn algebra(&self) -> &'a CompactLieAlgebra {
        self.algebra
    }

    pub fn root_system(&self) -> &RootSystem {
        self.algebra.root_system()
    }

    pub fn delta_h(&self) -> &[Root] {
        &self.delta_h
    }

    pub fn h_basis(&self) -> &[usize] {
        &self.h_basis
    }

    pub fn m_basis(&self) -> &[usize] {
        &self.m_basis
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }

    pub fn x_sigma(&self) -> Option<&CartanVector> {
        self.x_sigma.as_ref()
    }

    pub fn checks(&self) -> &DecompositionChecks {
        &self.checks
    }

    /// True when `h = k`, so there are no horizontal directions at all.
    pub fn is_degenerate(&self) -> bool {
        self.m_basis.is_empty()
    }

    /// Positive roots of `Delta - Delta(h)`, the defining functionals of
    /// the forbidden walls, in the canonical positive order.
    pub fn forbidden_positive_roots(&self) -> Vec<Root> {
        self.root_system()
            .positive_roots()
            .iter()
            .filter(|r| !self.delta_h.contains(r))
            .cloned()
            .collect()
    }

    /// Killing Gram restricted to `h`.
    pub fn gram_h(&self) -> Mat {
        self.algebra.killing_form().select(&self.h_basis, &self.h_basis)
    }

    /// Killing Gram restricted to `m`.
    pub fn gram_m(&self) -> Mat {
        self.algebra.killing_form().select(&self.m_basis, &self.m_basis)
    }
}
