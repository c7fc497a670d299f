//! Classical root systems A/B/C/D with exact rational coordinates.
//!
//! Roots live in the orthogonal `e_s` coordinates of an ambient Euclidean
//! space (dimension `rank` for B/C/D, `rank + 1` for A). A [`CartanVector`]
//! `u` stands for the element `T` of the compact torus with `alpha(T) = i r`
//! where `r = <alpha, u>`; [`evaluate_root`] returns that rational part `r`,
//! so every wall and sign test happens in exact rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, solve, vec_is_zero, Mat, Solve};
use crate::rational::{fmt_rat, rat, rat_vec_serde, Rational};

/// The four classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::InvalidRootDatum(format!("unknown family {other:?}"))),
        }
    }
}

/// A root, as a linear functional in `e_s` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    #[serde(with = "rat_vec_serde")]
    coords: Vec<Rational>,
}

impl Root {
    pub fn new(coords: Vec<Rational>) -> Self {
        Root { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Root { coords: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn negate(&self) -> Root {
        Root { coords: self.coords.iter().map(|c| -c.clone()).collect() }
    }

    /// Squared length `(alpha, alpha)` in the ambient inner product.
    pub fn norm_sq(&self) -> Rational {
        dot(&self.coords, &self.coords)
    }

    /// Coroot `2 alpha / (alpha, alpha)` as a coordinate vector.
    pub fn coroot(&self) -> Vec<Rational> {
        let f = rat(2) / self.norm_sq();
        self.coords.iter().map(|c| &f * c).collect()
    }

    /// Positivity convention: first nonzero coordinate is positive.
    /// This agrees with the simple-root systems used for all four families.
    pub fn is_positive(&self) -> bool {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The hyperplane `ker alpha`; the walls of `alpha` and `-alpha` coincide,
/// so a wall always carries the positive member of the pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wall {
    root: Root,
}

impl Wall {
    pub fn new(root: Root) -> Self {
        if root.is_positive() {
            Wall { root }
        } else {
            Wall { root: root.negate() }
        }
    }

    pub fn root(&self) -> &Root {
        &self.root
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ker {}", self.root)
    }
}

/// An element of the Cartan subalgebra of the compact form, written in
/// `e_s` coordinates (the `i H` frame carries the same data; see module doc).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanVector {
    #[serde(with = "rat_vec_serde")]
    coords: Vec<Rational>,
}

impl CartanVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        CartanVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        CartanVector { coords: vec![Rational::zero(); dim] }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        CartanVector { coords: coords.iter().map(|&c| rat(c)).collect() }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }

    pub fn add(&self, other: &CartanVector) -> CartanVector {
        CartanVector { coords: linalg::vec_add(&self.coords, &other.coords) }
    }

    pub fn scale(&self, c: &Rational) -> CartanVector {
        CartanVector { coords: linalg::vec_scale(c, &self.coords) }
    }
}

impl fmt::Display for CartanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A classical root system with its simple system and Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub ambient_dim: usize,
    /// All roots, sorted; closed under negation.
    pub roots: Vec<Root>,
    /// Bourbaki-ordered simple system.
    pub simple_roots: Vec<Root>,
    /// `c[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Set for D_2, which is accepted as a subsystem-style datum even though
    /// it is not a simple system.
    pub warning: Option<String>,
    #[serde(skip)]
    index: BTreeMap<Root, usize>,
    #[serde(skip)]
    positive: Vec<Root>,
}

fn unit(dim: usize, s: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[s] = rat(1);
    v
}

/// Height-then-lex order used everywhere a deterministic positive-root
/// order is needed (basis layout, wall lists, sign patterns).
fn sort_positives(positives: &mut [Root], simple: &[Root]) {
    let heights: BTreeMap<Root, Rational> = positives
        .iter()
        .map(|r| {
            let h = simple_coefficients(r, simple)
                .map(|cs| cs.iter().sum())
                .unwrap_or_else(|| rat(0));
            (r.clone(), h)
        })
        .collect();
    positives.sort_by(|a, b| heights[a].cmp(&heights[b]).then_with(|| a.cmp(b)));
}

/// Coefficients of a root in the simple basis, when they exist.
pub fn simple_coefficients(root: &Root, simple: &[Root]) -> Option<Vec<Rational>> {
    let dim = root.dim();
    let cols = simple.len();
    let mut m = Mat::zeros(dim, cols);
    for (j, s) in simple.iter().enumerate() {
        for i in 0..dim {
            *m.at_mut(i, j) = s.coords()[i].clone();
        }
    }
    match solve(&m, root.coords()) {
        Solve::Unique(x) => Some(x),
        Solve::Underdetermined(x) => Some(x),
        Solve::Inconsistent => None,
    }
}

/// Builds the classical system for the family and rank.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    if rank == 0 {
        return Err(Error::InvalidRootDatum("rank must be at least 1".into()));
    }
    if family == Family::D && rank < 2 {
        return Err(Error::InvalidRootDatum("family D needs rank >= 2".into()));
    }

    let n = rank;
    let mut roots: Vec<Root> = Vec::new();
    let mut simple: Vec<Root> = Vec::new();
    let ambient_dim;
    let mut warning = None;

    match family {
        Family::A => {
            ambient_dim = n + 1;
            for s in 0..=n {
                for t in 0..=n {
                    if s != t {
                        let mut c = vec![Rational::zero(); ambient_dim];
                        c[s] = rat(1);
                        c[t] = rat(-1);
                        roots.push(Root::new(c));
                    }
                }
            }
            for i in 0..n {
                let mut c = vec![Rational::zero(); ambient_dim];
                c[i] = rat(1);
                c[i + 1] = rat(-1);
                simple.push(Root::new(c));
            }
        }
        Family::B | Family::C | Family::D => {
            ambient_dim = n;
            for s in 0..n {
                for t in (s + 1)..n {
                    for (es, et) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut c = vec![Rational::zero(); ambient_dim];
                        c[s] = rat(es);
                        c[t] = rat(et);
                        roots.push(Root::new(c));
                    }
                }
            }
            match family {
                Family::B => {
                    for s in 0..n {
                        roots.push(Root::new(unit(ambient_dim, s)));
                        roots.push(Root::new(unit(ambient_dim, s)).negate());
                    }
                }
                Family::C => {
                    for s in 0..n {
                        let mut c = vec![Rational::zero(); ambient_dim];
                        c[s] = rat(2);
                        roots.push(Root::new(c.clone()));
                        roots.push(Root::new(c).negate());
                    }
                }
                Family::D => {}
                Family::A => unreachable!(),
            }
            for i in 0..n.saturating_sub(1) {
                let mut c = vec![Rational::zero(); ambient_dim];
                c[i] = rat(1);
                c[i + 1] = rat(-1);
                simple.push(Root::new(c));
            }
            match family {
                Family::B => simple.push(Root::new(unit(ambient_dim, n - 1))),
                Family::C => {
                    let mut c = vec![Rational::zero(); ambient_dim];
                    c[n - 1] = rat(2);
                    simple.push(Root::new(c));
                }
                Family::D => {
                    let mut c = vec![Rational::zero(); ambient_dim];
                    c[n - 2] = rat(1);
                    c[n - 1] = rat(1);
                    simple.push(Root::new(c));
                    if n == 2 {
                        warning = Some(
                            "D_2 is not a simple system; accepted as subsystem-style data".into(),
                        );
                    }
                }
                Family::A => unreachable!(),
            }
        }
    }

    roots.sort();
    roots.dedup();

    let cartan_matrix: Vec<Vec<i64>> = simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| {
                    let v = rat(2) * dot(ai.coords(), aj.coords()) / aj.norm_sq();
                    debug_assert!(v.is_integer());
                    i64::try_from(v.to_integer()).expect("cartan entry fits i64")
                })
                .collect()
        })
        .collect();

    let index: BTreeMap<Root, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let mut positive: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();
    sort_positives(&mut positive, &simple);

    Ok(RootSystem {
        family,
        rank,
        ambient_dim,
        roots,
        simple_roots: simple,
        cartan_matrix,
        warning,
        index,
        positive,
    })
}

impl RootSystem {
    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Positive roots in height-then-lex order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Reflection `s_alpha(v) = v - 2 (alpha, v)/(alpha, alpha) alpha` on
    /// a coordinate vector.
    pub fn reflect(&self, alpha: &Root, v: &[Rational]) -> Vec<Rational> {
        let f = rat(2) * dot(alpha.coords(), v) / alpha.norm_sq();
        linalg::vec_sub(v, &linalg::vec_scale(&f, alpha.coords()))
    }

    /// Sum of two roots as a root, if the sum is again a root.
    pub fn root_sum(&self, a: &Root, b: &Root) -> Option<Root> {
        let s = Root::new(linalg::vec_add(a.coords(), b.coords()));
        self.contains(&s).then_some(s)
    }
}

/// The rational `r` with `alpha(T) = i r` for the torus element named by `h`.
pub fn evaluate_root(alpha: &Root, h: &CartanVector) -> Result<Rational> {
    if alpha.dim() != h.dim() {
        return Err(Error::Dimension(format!(
            "root has dimension {}, vector has dimension {}",
            alpha.dim(),
            h.dim()
        )));
    }
    Ok(dot(alpha.coords(), h.coords()))
}

/// Unique dominant element of the Weyl orbit of `u`.
///
/// Simple reflections are applied in ascending simple-root index order until
/// every simple root evaluates nonnegatively.
pub fn dominant_representative(u: &CartanVector, rs: &RootSystem) -> Result<CartanVector> {
    if u.dim() != rs.ambient_dim {
        return Err(Error::Dimension(format!(
            "vector has dimension {}, ambient is {}",
            u.dim(),
            rs.ambient_dim
        )));
    }
    let mut v = u.coords().to_vec();
    loop {
        let neg = rs
            .simple_roots
            .iter()
            .find(|a| dot(a.coords(), &v).is_negative());
        match neg {
            Some(a) => v = rs.reflect(a, &v),
            None => return Ok(CartanVector::new(v)),
        }
    }
}

/// One wall per +/- pair of roots in the complement of `delta_h`.
pub fn forbidden_walls(rs: &RootSystem, delta_h: &[Root]) -> Result<Vec<Wall>> {
    for r in delta_h {
        if !rs.contains(r) {
            return Err(Error::InvalidSubsystem(format!("{r} is not a root of the system")));
        }
    }
    let mut walls: Vec<Wall> = rs
        .positive_roots()
        .iter()
        .filter(|r| !delta_h.contains(r))
        .map(|r| Wall::new(r.clone()))
        .collect();
    walls.sort();
    Ok(walls)
}

/// Coefficients of `u` in the simple coroot frame: the `c_j` with
/// `u = sum_j c_j coroot(a_j)`, i.e. the coordinates of the torus element
/// `T_u` in the `i H_{a_j}` basis of the compact form.
///
/// For the A family this requires the coordinates to sum to zero.
pub fn cartan_frame_coefficients(u: &CartanVector, rs: &RootSystem) -> Result<Vec<Rational>> {
    if u.dim() != rs.ambient_dim {
        return Err(Error::Dimension(format!(
            "vector has dimension {}, ambient is {}",
            u.dim(),
            rs.ambient_dim
        )));
    }
    let mut m = Mat::zeros(rs.ambient_dim, rs.rank);
    for (j, a) in rs.simple_roots.iter().enumerate() {
        for (i, c) in a.coroot().into_iter().enumerate() {
            *m.at_mut(i, j) = c;
        }
    }
    match solve(&m, u.coords()) {
        Solve::Unique(x) => Ok(x),
        Solve::Underdetermined(x) => Ok(x),
        Solve::Inconsistent => Err(Error::Dimension(
            "vector is outside the span of the coroots (A family needs sum-zero coordinates)"
                .into(),
        )),
    }
}

/// Inverse of [`cartan_frame_coefficients`].
pub fn cartan_vector_from_frame(coeffs: &[Rational], rs: &RootSystem) -> Result<CartanVector> {
    if coeffs.len() != rs.rank {
        return Err(Error::Dimension(format!(
            "expected {} frame coefficients, got {}",
            rs.rank,
            coeffs.len()
        )));
    }
    let mut v = vec![Rational::zero(); rs.ambient_dim];
    for (c, a) in coeffs.iter().zip(&rs.simple_roots) {
        v = linalg::vec_add(&v, &linalg::vec_scale(c, &a.coroot()));
    }
    Ok(CartanVector::new(v))
}
