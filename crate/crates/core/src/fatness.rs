//! Fatness certification: wall avoidance, curvature-pairing non-degeneracy,
//! polytope-level tests, and the constructive translation threshold.
//!
//! For a torus element `u` and a decomposition `k = h + m`, the two
//! equivalent tests are
//!
//! - wall avoidance: `beta(u) != 0` for every complement root `beta`
//!   (one wall per +/- pair), and
//! - non-degeneracy of the curvature pairing
//!   `M[X][Y] = B_k(u, [X, Y])` on `m`, witnessed by an exact
//!   fraction-free determinant.
//!
//! Only elements of the torus are accepted: every adjoint orbit in `h`
//! meets `t`, and the forbidden wall set inside `t` is stable under the
//! Weyl group of `Delta(h)`, so nothing is lost and no conjugation
//! algorithm is needed. The overall sign of the curvature form is dropped
//! throughout (non-degeneracy is sign-blind).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, dot, solve, Mat, Solve};
use crate::rational::{rat, rat_opt_serde, Rational};
use crate::reductive::ReductiveDecomposition;
use crate::root_system::{evaluate_root, CartanVector, Wall};

/// What a certificate talks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Vector(CartanVector),
    Polytope(Polytope),
}

/// Evidence for a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The vector lies on this wall.
    VectorOnWall { wall: Wall, value: String },
    /// A polytope vertex lies on this wall.
    VertexOnWall { wall: Wall, vertex: CartanVector },
    /// Two vertices evaluate with opposite signs, so the hull crosses.
    SignChange {
        wall: Wall,
        vertex_pos: CartanVector,
        vertex_neg: CartanVector,
    },
}

/// Verdict of a fatness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Fat,
    NotFat,
}

/// Structured verdict with witnesses; `not_fat` always carries at least
/// one witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatnessCertificate {
    pub subject: Subject,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(default, with = "rat_opt_serde")]
    pub determinant: Option<Rational>,
}

impl FatnessCertificate {
    pub fn is_fat(&self) -> bool {
        self.verdict == Verdict::Fat
    }
}

/// Finite vertex list standing for its convex hull (a moment or Kirwan
/// image).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub vertices: Vec<CartanVector>,
}

impl Polytope {
    pub fn new(vertices: Vec<CartanVector>) -> Self {
        Polytope { vertices }
    }

    fn validate(&self, ambient: usize) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidPolytope("empty vertex list".into()));
        }
        if let Some(v) = self.vertices.iter().find(|v| v.dim() != ambient) {
            return Err(Error::InvalidPolytope(format!(
                "vertex {v} has dimension {}, ambient is {ambient}",
                v.dim()
            )));
        }
        Ok(())
    }

    pub fn translate(&self, c: &Rational, d: &CartanVector) -> Polytope {
        let step = d.scale(c);
        Polytope { vertices: self.vertices.iter().map(|v| v.add(&step)).collect() }
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "hull{{{}}}", parts.join(", "))
    }
}

fn require_nondegenerate(d: &ReductiveDecomposition) -> Result<()> {
    if d.is_degenerate() {
        Err(Error::DegenerateBase)
    } else {
        Ok(())
    }
}

/// Wall-avoidance test for a torus element: fat iff no forbidden wall
/// contains it; witnesses list every vanishing complement root.
pub fn wall_test(u: &CartanVector, d: &ReductiveDecomposition) -> Result<FatnessCertificate> {
    require_nondegenerate(d)?;
    let mut witnesses = Vec::new();
    for beta in d.forbidden_positive_roots() {
        let value = evaluate_root(&beta, u)?;
        if value.is_zero() {
            witnesses.push(Witness::VectorOnWall {
                wall: Wall::new(beta),
                value: crate::rational::fmt_rat(&value),
            });
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Fat } else { Verdict::NotFat };
    Ok(FatnessCertificate {
        subject: Subject::Vector(u.clone()),
        verdict,
        witnesses,
        determinant: None,
    })
}

/// Pairing context for the Killing-form duality `X_u <-> u` on `h`.
#[derive(Debug, Clone)]
pub struct DualityContext<'a, 'b> {
    decomposition: &'b ReductiveDecomposition<'a>,
    gram_h: Mat,
}

impl<'a, 'b> DualityContext<'a, 'b> {
    pub fn new(decomposition: &'b ReductiveDecomposition<'a>) -> Result<Self> {
        let gram_h = decomposition.gram_h();
        if determinant(&gram_h)?.is_zero() {
            return Err(Error::InvariantViolation(
                "Killing Gram on h is singular".into(),
            ));
        }
        Ok(DualityContext { decomposition, gram_h })
    }

    pub fn gram_h(&self) -> &Mat {
        &self.gram_h
    }

    /// Coefficients of a torus element over the `h` basis.
    pub fn h_coefficients(&self, u: &CartanVector) -> Result<Vec<Rational>> {
        let full = self.decomposition.algebra().embed_cartan(u)?;
        Ok(self.decomposition.h_basis().iter().map(|&i| full[i].clone()).collect())
    }

    /// The covector `B(u, .)` on `h`, as coefficients against the `h`
    /// basis: entry `b` is `B(u, e_b)`.
    pub fn dual_vector(&self, u: &CartanVector) -> Result<Vec<Rational>> {
        Ok(self.gram_h.mul_vec(&self.h_coefficients(u)?))
    }

    /// Inverse of [`DualityContext::dual_vector`]: the element of `h`
    /// (as h-basis coefficients) pairing like the given covector.
    pub fn primal_vector(&self, covector: &[Rational]) -> Result<Vec<Rational>> {
        if covector.len() != self.gram_h.nrows() {
            return Err(Error::Dimension(format!(
                "covector length {} vs dim h {}",
                covector.len(),
                self.gram_h.nrows()
            )));
        }
        match solve(&self.gram_h, covector) {
            Solve::Unique(x) => Ok(x),
            _ => Err(Error::InvariantViolation("Killing Gram on h is singular".into())),
        }
    }
}

/// Curvature pairing of the canonical connection against the torus element
/// `u`: the skew matrix `M[a][b] = B_k(u, [e_a, e_b])` over the `m` basis.
pub fn curvature_form(u: &CartanVector, d: &ReductiveDecomposition) -> Result<Mat> {
    require_nondegenerate(d)?;
    let algebra = d.algebra();
    let x = algebra.embed_cartan(u)?;
    let w = algebra.killing_form().mul_vec(&x);
    let m_basis = d.m_basis();
    let k = m_basis.len();
    let mut m = Mat::zeros(k, k);
    for (i, &a) in m_basis.iter().enumerate() {
        for (j, &b) in m_basis.iter().enumerate().skip(i + 1) {
            let v = dot(algebra.bracket_basis(a, b), &w);
            if !v.is_zero() {
                *m.at_mut(i, j) = v.clone();
                *m.at_mut(j, i) = -v;
            }
        }
    }
    debug_assert!(m.is_skew());
    Ok(m)
}

/// Exact non-degeneracy: determinant by fraction-free elimination. An odd
/// dimension gives a zero determinant, hence false, with no special case.
pub fn nondegenerate(m: &Mat) -> Result<(bool, Rational)> {
    if !m.is_square() || !m.is_skew() {
        return Err(Error::InvariantViolation(
            "nondegenerate expects a square skew-symmetric matrix".into(),
        ));
    }
    let det = determinant(m)?;
    Ok((!det.is_zero(), det))
}

/// Wall test and curvature determinant in one certificate. The two routes
/// are equivalent; a disagreement would be an internal error and is
/// reported as such rather than masked.
pub fn fat_check(u: &CartanVector, d: &ReductiveDecomposition) -> Result<FatnessCertificate> {
    let mut cert = wall_test(u, d)?;
    let (nondeg, det) = nondegenerate(&curvature_form(u, d)?)?;
    if nondeg != cert.is_fat() {
        return Err(Error::InvariantViolation(format!(
            "wall test ({:?}) disagrees with curvature determinant ({det})",
            cert.verdict
        )));
    }
    cert.determinant = Some(det);
    Ok(cert)
}

/// Polytope-level wall test: the hull avoids a wall iff all vertex values
/// have one strict sign.
pub fn polytope_fat(p: &Polytope, d: &ReductiveDecomposition) -> Result<FatnessCertificate> {
    require_nondegenerate(d)?;
    p.validate(d.root_system().ambient_dim)?;
    let mut witnesses = Vec::new();
    for beta in d.forbidden_positive_roots() {
        let values: Vec<Rational> = p
            .vertices
            .iter()
            .map(|v| evaluate_root(&beta, v))
            .collect::<Result<_>>()?;
        let wall = Wall::new(beta);
        if let Some(i) = values.iter().position(Rational::is_zero) {
            witnesses.push(Witness::VertexOnWall { wall, vertex: p.vertices[i].clone() });
            continue;
        }
        let pos = values.iter().position(Rational::is_positive);
        let neg = values.iter().position(Rational::is_negative);
        if let (Some(i), Some(j)) = (pos, neg) {
            witnesses.push(Witness::SignChange {
                wall,
                vertex_pos: p.vertices[i].clone(),
                vertex_neg: p.vertices[j].clone(),
            });
        }
    }
    let verdict = if witnesses.is_empty() { Verdict::Fat } else { Verdict::NotFat };
    Ok(FatnessCertificate {
        subject: Subject::Polytope(p.clone()),
        verdict,
        witnesses,
        determinant: None,
    })
}

/// Result of the constructive translation: above `c_star` the translated
/// hull is fat, and when `c_star > 0` the hull touches an active wall at
/// `c_star` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateReport {
    pub direction: CartanVector,
    #[serde(with = "crate::rational::rat_serde")]
    pub c_star: Rational,
    pub fat_at_zero: bool,
    pub active_walls: Vec<Wall>,
}

/// Smallest threshold `c*` such that `P + c d` is fat for every `c > c*`.
///
/// A wall whose functional annihilates `d` cannot be escaped by this
/// translation; if the hull does not already avoid it strictly, the
/// direction is rejected.
pub fn translate_polytope(
    p: &Polytope,
    direction: &CartanVector,
    d: &ReductiveDecomposition,
) -> Result<TranslateReport> {
    require_nondegenerate(d)?;
    p.validate(d.root_system().ambient_dim)?;
    let fat_at_zero = polytope_fat(p, d)?.is_fat();

    let mut best: Option<Rational> = None;
    let mut active: Vec<Wall> = Vec::new();
    for beta in d.forbidden_positive_roots() {
        let slope = evaluate_root(&beta, direction)?;
        let values: Vec<Rational> = p
            .vertices
            .iter()
            .map(|v| evaluate_root(&beta, v))
            .collect::<Result<_>>()?;
        if slope.is_zero() {
            let strictly_avoided = values.iter().all(Rational::is_positive)
                || values.iter().all(Rational::is_negative);
            if !strictly_avoided {
                return Err(Error::NoEscapeDirection(Wall::new(beta).to_string()));
            }
            continue;
        }
        // all vertices strictly on the sign(slope) side once c > t_beta
        let t_beta = values.iter().map(|v| -v / &slope).max().expect("nonempty");
        match &best {
            Some(b) if *b > t_beta => {}
            Some(b) if *b == t_beta => active.push(Wall::new(beta)),
            _ => {
                best = Some(t_beta);
                active = vec![Wall::new(beta)];
            }
        }
    }

    let c_star = match best {
        Some(b) if !b.is_negative() => b,
        _ => {
            // every crossing ratio is negative: already fat at zero and
            // onward, nothing is active
            active.clear();
            rat(0)
        }
    };
    active.sort();
    active.dedup();
    Ok(TranslateReport { direction: direction.clone(), c_star, fat_at_zero, active_walls: active })
}
