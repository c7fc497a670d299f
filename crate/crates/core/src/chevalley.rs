//! Chevalley bases and compact real forms with exact integer structure
//! constants.
//!
//! The complex algebra is presented on the basis `{H_{a_j}} u {X_alpha}`
//! with `[X_alpha, X_beta] = N(alpha,beta) X_{alpha+beta}`. The constants
//! are produced by fixing `N > 0` on extraspecial pairs and propagating
//! every other value through the Jacobi identities, so the whole table is
//! determined by the root system alone. The compact real form is spanned by
//!
//! ```text
//! i H_{a_j},   U(a) = X_a - X_{-a},   V(a) = i (X_a + X_{-a})
//! ```
//!
//! for simple `a_j` and positive roots `a`. Its structure constants are
//! derived by expanding brackets over Gaussian-rational coefficients and
//! projecting back; closure of the real span is asserted, not assumed.
//!
//! The Killing Gram matrix is computed by brute-force `trace(ad . ad)`,
//! which doubles as a self-test of the structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::rational::{rat, Rational};
use crate::root_system::{cartan_frame_coefficients, CartanVector, Root, RootSystem};

/// Global sign choice for the extraspecial structure constants. Either
/// choice yields a valid Chevalley basis; downstream fatness verdicts are
/// independent of it, which the acceptance suite re-checks explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    ExtraspecialPositive,
    ExtraspecialNegative,
}

/// The table `N(alpha, beta)` over all ordered root pairs with
/// `alpha + beta` again a root.
#[derive(Debug, Clone)]
pub struct ChevalleyConstants {
    entries: BTreeMap<(Root, Root), i64>,
}

impl ChevalleyConstants {
    /// `N(alpha, beta)`, or `None` when `alpha + beta` is not a root.
    pub fn n(&self, alpha: &Root, beta: &Root) -> Option<i64> {
        self.entries.get(&(alpha.clone(), beta.clone())).copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Root, Root), &i64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Largest `k >= 0` with `beta - k alpha` still a root (the depth of the
/// alpha-chain through beta).
pub fn chain_depth(rs: &RootSystem, alpha: &Root, beta: &Root) -> usize {
    let mut p = 0;
    let mut probe = beta.clone();
    loop {
        let next = Root::new(crate::linalg::vec_sub(probe.coords(), alpha.coords()));
        if rs.contains(&next) {
            p += 1;
            probe = next;
        } else {
            return p;
        }
    }
}

/// Builds the full constant table under the default sign convention.
pub fn chevalley_constants(rs: &RootSystem) -> Result<ChevalleyConstants> {
    chevalley_constants_with(rs, SignConvention::default())
}

struct PositiveTable<'a> {
    rs: &'a RootSystem,
    /// position of each positive root in the height-then-lex order
    pos_of: BTreeMap<Root, usize>,
    /// `table[(i, j)] = N(pos[i], pos[j])` for `i < j`
    table: BTreeMap<(usize, usize), Rational>,
}

impl PositiveTable<'_> {
    /// `N(mu, nu)` for arbitrary-sign roots, reduced to positive-pair
    /// lookups through the standard Jacobi consequences:
    /// `N(-a,-b) = -N(a,b)` and, for a triple summing to zero,
    /// `N(a,b)/(c,c) = N(b,c)/(a,a) = N(c,a)/(b,b)`.
    fn eval(&self, mu: &Root, nu: &Root) -> Rational {
        let sum = Root::new(crate::linalg::vec_add(mu.coords(), nu.coords()));
        debug_assert!(self.rs.contains(&sum), "eval on a non-summable pair");
        match (mu.is_positive(), nu.is_positive()) {
            (true, true) => {
                let i = self.pos_of[mu];
                let j = self.pos_of[nu];
                if i < j {
                    self.table[&(i, j)].clone()
                } else {
                    -self.table[&(j, i)].clone()
                }
            }
            (false, false) => -self.eval(&mu.negate(), &nu.negate()),
            (true, false) => {
                if sum.is_positive() {
                    // N(mu, nu) = -(sum,sum)/(mu,mu) * N(-nu, sum)
                    let f = sum.norm_sq() / mu.norm_sq();
                    -f * self.eval(&nu.negate(), &sum)
                } else {
                    -self.eval(&mu.negate(), &nu.negate())
                }
            }
            (false, true) => -self.eval(nu, mu),
        }
    }
}

/// Builds the constant table with an explicit extraspecial sign choice.
pub fn chevalley_constants_with(
    rs: &RootSystem,
    convention: SignConvention,
) -> Result<ChevalleyConstants> {
    let positives = rs.positive_roots();
    let pos_of: BTreeMap<Root, usize> =
        positives.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
    let mut state = PositiveTable { rs, pos_of, table: BTreeMap::new() };
    let sign = match convention {
        SignConvention::ExtraspecialPositive => rat(1),
        SignConvention::ExtraspecialNegative => rat(-1),
    };

    // Fill positive pairs in increasing height of the sum. For each sum
    // root the pair with the smallest first member is extraspecial and
    // receives the chain magnitude with the convention sign; every other
    // pair for the same sum follows from a Jacobi triple against the
    // extraspecial one.
    for gamma in positives {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..positives.len() {
            for j in (i + 1)..positives.len() {
                let s = crate::linalg::vec_add(positives[i].coords(), positives[j].coords());
                if s == gamma.coords() {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let (xi, xj) = pairs[0]; // smallest first member: extraspecial
        let (alpha, beta) = (&positives[xi], &positives[xj]);
        let p = chain_depth(rs, alpha, beta);
        state.table.insert((xi, xj), &sign * rat(p as i64 + 1));

        for &(i, j) in &pairs[1..] {
            let (u, v) = (&positives[i], &positives[j]);
            // Jacobi on (X_alpha, X_beta, X_{-u}), reduced so that only
            // already-filled sums of smaller height appear.
            let mut acc = Rational::zero();
            let b_minus_u = Root::new(crate::linalg::vec_sub(beta.coords(), u.coords()));
            if rs.contains(&b_minus_u) {
                acc += state.eval(beta, &u.negate()) * state.eval(&b_minus_u, alpha);
            }
            let a_minus_u = Root::new(crate::linalg::vec_sub(alpha.coords(), u.coords()));
            if rs.contains(&a_minus_u) {
                acc += state.eval(&u.negate(), alpha) * state.eval(&a_minus_u, beta);
            }
            let n_extra = state.table[&(xi, xj)].clone();
            let value = gamma.norm_sq() / v.norm_sq() * acc / n_extra;
            if !value.is_integer() || value.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "structure constant for ({u}, {v}) -> {gamma} came out {value}"
                )));
            }
            state.table.insert((i, j), value);
        }
    }

    // Materialize every ordered pair with a root sum.
    let mut entries = BTreeMap::new();
    for a in &rs.roots {
        for b in &rs.roots {
            let s = Root::new(crate::linalg::vec_add(a.coords(), b.coords()));
            if !rs.contains(&s) {
                continue;
            }
            let v = state.eval(a, b);
            debug_assert!(v.is_integer() && !v.is_zero());
            entries.insert(
                (a.clone(), b.clone()),
                i64::try_from(v.to_integer()).expect("constant fits i64"),
            );
        }
    }
    Ok(ChevalleyConstants { entries })
}

/// Label of a compact-form basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisLabel {
    /// `i H_{a_j}` for the j-th simple root (0-based).
    Cartan(usize),
    /// `X_a - X_{-a}` for the positive root `a`.
    RootU(Root),
    /// `i (X_a + X_{-a})` for the positive root `a`.
    RootV(Root),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Cartan(j) => write!(f, "iH_{}", j + 1),
            BasisLabel::RootU(r) => write!(f, "U{r}"),
            BasisLabel::RootV(r) => write!(f, "V{r}"),
        }
    }
}

/// Gaussian rational, used only while projecting complex brackets onto the
/// compact basis.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GaussRat {
    re: Rational,
    im: Rational,
}

impl GaussRat {
    fn zero() -> Self {
        GaussRat { re: Rational::zero(), im: Rational::zero() }
    }

    fn real(r: Rational) -> Self {
        GaussRat { re: r, im: Rational::zero() }
    }

    fn imag(r: Rational) -> Self {
        GaussRat { re: Rational::zero(), im: r }
    }

    fn mul(&self, other: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn scale(&self, r: &Rational) -> GaussRat {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    fn add_assign(&mut self, other: &GaussRat) {
        self.re += &other.re;
        self.im += &other.im;
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Compact real form of the complex algebra attached to a root system, with
/// exact structure constants and the Killing Gram matrix.
#[derive(Debug, Clone)]
pub struct CompactLieAlgebra {
    rs: RootSystem,
    labels: Vec<BasisLabel>,
    /// `[e_a, e_b] = sum_k constants[a][b][k] e_k`
    constants: Vec<Vec<Vec<Rational>>>,
    killing: Mat,
    /// index of `U(beta)` for each positive root; `V` follows right after
    u_index: BTreeMap<Root, usize>,
}

pub fn compact_real_form(rs: &RootSystem) -> Result<CompactLieAlgebra> {
    compact_real_form_with(rs, SignConvention::default())
}

// Plain index loops throughout: the bracket table is a 3-index array and
// every index is load-bearing.
#[allow(clippy::needless_range_loop)]
pub fn compact_real_form_with(
    rs: &RootSystem,
    convention: SignConvention,
) -> Result<CompactLieAlgebra> {
    // The bracket table is dense (dim^3 rationals); past rank 8 that is
    // hundreds of megabytes and climbing cubically.
    if rs.rank > 8 {
        return Err(Error::InvalidRootDatum(format!(
            "rank {} exceeds the supported bound 8 (dense bracket table of dimension {}^3)",
            rs.rank,
            rs.rank + rs.num_roots()
        )));
    }
    let constants = chevalley_constants_with(rs, convention)?;
    let rank = rs.rank;
    let positives = rs.positive_roots().to_vec();
    let dim = rank + rs.num_roots();

    // Complex basis: 0..rank are H_{a_j}, then one X per root in root order.
    let cdim = rank + rs.num_roots();
    let x_index: BTreeMap<Root, usize> =
        rs.roots.iter().enumerate().map(|(i, r)| (r.clone(), rank + i)).collect();

    // Coroot of each root in the simple-coroot frame (integer vector).
    let mut coroot_frame: BTreeMap<Root, Vec<Rational>> = BTreeMap::new();
    for r in &rs.roots {
        let c = cartan_frame_coefficients(&CartanVector::new(r.coroot()), rs)?;
        debug_assert!(c.iter().all(Rational::is_integer));
        coroot_frame.insert(r.clone(), c);
    }

    // [e_p, e_q] in the complex basis, as a sparse real-coefficient list.
    let bracket_complex = |p: usize, q: usize| -> Vec<(usize, Rational)> {
        if p < rank && q < rank {
            return Vec::new();
        }
        if p < rank {
            // [H_j, X_b] = <b, a_j^v> X_b
            let b = &rs.roots[q - rank];
            let c = dot(b.coords(), &rs.simple_roots[p].coroot());
            return if c.is_zero() { Vec::new() } else { vec![(q, c)] };
        }
        if q < rank {
            let a = &rs.roots[p - rank];
            let c = dot(a.coords(), &rs.simple_roots[q].coroot());
            return if c.is_zero() { Vec::new() } else { vec![(p, -c)] };
        }
        let a = &rs.roots[p - rank];
        let b = &rs.roots[q - rank];
        let sum = Root::new(crate::linalg::vec_add(a.coords(), b.coords()));
        if sum.coords().iter().all(Rational::is_zero) {
            // [X_a, X_{-a}] = H_a, expanded over simple coroots
            return coroot_frame[a]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, c.clone()))
                .collect();
        }
        match constants.n(a, b) {
            Some(n) => vec![(x_index[&sum], rat(n))],
            None => Vec::new(),
        }
    };

    // Compact basis expansion in complex coordinates.
    let mut labels = Vec::with_capacity(dim);
    let mut expansion: Vec<Vec<(usize, GaussRat)>> = Vec::with_capacity(dim);
    for j in 0..rank {
        labels.push(BasisLabel::Cartan(j));
        expansion.push(vec![(j, GaussRat::imag(rat(1)))]);
    }
    let mut u_index = BTreeMap::new();
    for beta in &positives {
        u_index.insert(beta.clone(), labels.len());
        labels.push(BasisLabel::RootU(beta.clone()));
        expansion.push(vec![
            (x_index[beta], GaussRat::real(rat(1))),
            (x_index[&beta.negate()], GaussRat::real(rat(-1))),
        ]);
        labels.push(BasisLabel::RootV(beta.clone()));
        expansion.push(vec![
            (x_index[beta], GaussRat::imag(rat(1))),
            (x_index[&beta.negate()], GaussRat::imag(rat(1))),
        ]);
    }

    // Project a complex vector back onto the compact basis; failure would
    // mean the real span is not closed under the bracket.
    let project = |acc: &[GaussRat]| -> Result<Vec<Rational>> {
        let closure_broken =
            || Error::InvariantViolation("compact form not closed under bracket".into());
        let mut out = vec![Rational::zero(); dim];
        for j in 0..rank {
            if !acc[j].re.is_zero() {
                return Err(closure_broken());
            }
            out[j] = acc[j].im.clone();
        }
        for beta in &positives {
            let z1 = &acc[x_index[beta]];
            let z2 = &acc[x_index[&beta.negate()]];
            if z1.re != -z2.re.clone() || z1.im != z2.im {
                return Err(closure_broken());
            }
            let ui = u_index[beta];
            out[ui] = z1.re.clone();
            out[ui + 1] = z1.im.clone();
        }
        Ok(out)
    };

    let mut table = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in (a + 1)..dim {
            let mut acc = vec![GaussRat::zero(); cdim];
            for (p, za) in &expansion[a] {
                for (q, zb) in &expansion[b] {
                    let z = za.mul(zb);
                    if z.is_zero() {
                        continue;
                    }
                    for (k, c) in bracket_complex(*p, *q) {
                        acc[k].add_assign(&z.scale(&c));
                    }
                }
            }
            let coeffs = project(&acc)?;
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    table[a][b][k] = c.clone();
                    table[b][a][k] = -c.clone();
                }
            }
        }
    }

    // Killing Gram by brute-force trace(ad e_a . ad e_b) over the sparse
    // bracket table.
    let mut killing = Mat::zeros(dim, dim);
    let sparse: Vec<Vec<(usize, usize, Rational)>> = (0..dim)
        .map(|a| {
            let mut nz = Vec::new();
            for k in 0..dim {
                for j in 0..dim {
                    if !table[a][k][j].is_zero() {
                        nz.push((k, j, table[a][k][j].clone()));
                    }
                }
            }
            nz
        })
        .collect();
    for a in 0..dim {
        for b in a..dim {
            let mut tr = Rational::zero();
            for (k, j, v) in &sparse[a] {
                let w = &table[b][*j][*k];
                if !w.is_zero() {
                    tr += v * w;
                }
            }
            *killing.at_mut(a, b) = tr.clone();
            *killing.at_mut(b, a) = tr;
        }
    }

    Ok(CompactLieAlgebra { rs: rs.clone(), labels, constants: table, killing, u_index })
}

impl CompactLieAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn basis_labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Coefficients of `[e_a, e_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Rational] {
        &self.constants[a][b]
    }

    /// `[x, y]` for coefficient vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::Dimension(format!(
                "bracket of vectors of length {}/{} in dimension {d}",
                x.len(),
                y.len()
            )));
        }
        let mut out = vec![Rational::zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let f = xa * yb;
                for (k, c) in self.constants[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &f * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad x`: column `k` holds the coefficients of `[x, e_k]`.
    pub fn adjoint_matrix(&self, x: &[Rational]) -> Result<Mat> {
        let d = self.dim();
        if x.len() != d {
            return Err(Error::Dimension(format!(
                "adjoint of a vector of length {} in dimension {d}",
                x.len()
            )));
        }
        let mut m = Mat::zeros(d, d);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for k in 0..d {
                for (j, c) in self.constants[a][k].iter().enumerate() {
                    if !c.is_zero() {
                        *m.at_mut(j, k) += xa * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// The Killing Gram matrix `B(e_a, e_b) = trace(ad e_a . ad e_b)`.
    pub fn killing_form(&self) -> &Mat {
        &self.killing
    }

    /// Index of `U(beta)` in the basis for a positive root; `V(beta)` is
    /// the next index.
    pub fn u_index(&self, beta: &Root) -> Option<usize> {
        self.u_index.get(beta).copied()
    }

    /// Full coefficient vector of the torus element named by `u` (Cartan
    /// frame coefficients, zero elsewhere).
    pub fn embed_cartan(&self, u: &CartanVector) -> Result<Vec<Rational>> {
        let frame = cartan_frame_coefficients(u, &self.rs)?;
        let mut x = vec![Rational::zero(); self.dim()];
        x[..self.rs.rank].clone_from_slice(&frame);
        Ok(x)
    }
}
