//! Dense exact-rational linear algebra: solving, fraction-free determinants,
//! and pivot-sign definiteness certificates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, rat, Rational};

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn neg(&self) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = -a.clone();
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..=i).all(|j| *self.at(i, j) == -self.at(j, i).clone()))
    }

    /// Submatrix picking the given row and column indices, in order.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                *out.at_mut(i, j) = self.at(r, c).clone();
            }
        }
        out
    }
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    /// The system has exactly one solution.
    Unique(Vec<Rational>),
    /// The system is consistent but underdetermined; free coordinates are
    /// pinned to zero, so the returned representative is deterministic.
    Underdetermined(Vec<Rational>),
    Inconsistent,
}

impl Solve {
    pub fn into_solution(self) -> Option<Vec<Rational>> {
        match self {
            Solve::Unique(v) | Solve::Underdetermined(v) => Some(v),
            Solve::Inconsistent => None,
        }
    }
}

/// Solves `a x = b` by exact Gauss-Jordan elimination.
pub fn solve(a: &Mat, b: &[Rational]) -> Solve {
    assert_eq!(a.nrows(), b.len(), "rhs length mismatch");
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m.at(p, j).clone();
                *m.at_mut(p, j) = m.at(r, j).clone();
                *m.at_mut(r, j) = tmp;
            }
            rhs.swap(p, r);
        }
        let inv = m.at(r, c).clone().recip();
        for j in 0..cols {
            let v = m.at(r, j).clone() * &inv;
            *m.at_mut(r, j) = v;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i == r || m.at(i, c).is_zero() {
                continue;
            }
            let f = m.at(i, c).clone();
            for j in 0..cols {
                let v = m.at(i, j).clone() - &f * m.at(r, j);
                *m.at_mut(i, j) = v;
            }
            let v = rhs[i].clone() - &f * &rhs[r];
            rhs[i] = v;
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    // A zero row with nonzero rhs means no solution.
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return Solve::Inconsistent;
    }

    let mut x = vec![Rational::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = rhs[row].clone();
    }
    if pivot_cols.len() == cols {
        Solve::Unique(x)
    } else {
        Solve::Underdetermined(x)
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Rows are first scaled to integers (tracking the scale factor), then the
/// elimination runs over `BigInt` with exact divisions only.
pub fn determinant(m: &Mat) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Rational::one());
    }

    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = denominator_lcm(m.row(i));
            scale *= &l;
            m.row(i)
                .iter()
                .map(|r| r.numer() * (&l / r.denom()))
                .collect()
        })
        .collect();

    let mut sign = 1i64;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss exact-division invariant");
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let det_int = a[n - 1][n - 1].clone() * BigInt::from(sign);
    Ok(Rational::new(det_int, scale))
}

/// Certifies definiteness of a symmetric matrix by the signs of the pivots
/// of its symmetric (congruence) elimination.
///
/// Returns the pivot list; the matrix is negative definite iff every pivot
/// is strictly negative. A zero leading pivot means the matrix is not
/// definite of either sign and the check stops there.
pub fn symmetric_pivots(m: &Mat) -> Result<Vec<Rational>> {
    if !m.is_symmetric() {
        return Err(Error::InvariantViolation("symmetric_pivots on a non-symmetric matrix".into()));
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let d = a.at(k, k).clone();
        pivots.push(d.clone());
        if d.is_zero() {
            break;
        }
        for i in k + 1..n {
            let f = a.at(i, k).clone() / &d;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.at(i, j).clone() - &f * a.at(k, j);
                *a.at_mut(i, j) = v;
            }
        }
    }
    Ok(pivots)
}

/// True iff the symmetric matrix is negative definite, by exact pivot signs.
pub fn is_negative_definite(m: &Mat) -> Result<bool> {
    let pivots = symmetric_pivots(m)?;
    Ok(pivots.len() == m.nrows() && pivots.iter().all(Rational::is_negative))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot length mismatch");
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Rational, v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    /// Independent oracle: cofactor-expansion determinant.
    fn det_cofactor(m: &Mat) -> Rational {
        let n = m.nrows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            if m.at(0, j).is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let rows: Vec<usize> = (1..n).collect();
            let minor = det_cofactor(&m.select(&rows, &cols));
            let term = m.at(0, j) * &minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_basics() {
        let m = Mat::from_i64_rows(&[&[0, -16], &[16, 0]]);
        assert_eq!(determinant(&m).unwrap(), rat(256));
        assert_eq!(determinant(&Mat::zeros(3, 3)).unwrap(), rat(0));
        assert_eq!(determinant(&Mat::identity(4)).unwrap(), rat(1));
        // needs a row swap
        let m = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m).unwrap(), rat(-1));
    }

    #[test]
    fn determinant_with_fractions() {
        let m = Mat::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 5), frac(1, 7)],
        ]);
        assert_eq!(determinant(&m).unwrap(), frac(1, 14) - frac(1, 15));
    }

    #[test]
    fn solve_unique_and_underdetermined() {
        let a = Mat::from_i64_rows(&[&[1, -1], &[0, 2]]);
        match solve(&a, &[rat(0), rat(1)]) {
            Solve::Unique(x) => assert_eq!(x, vec![frac(1, 2), frac(1, 2)]),
            other => panic!("expected unique, got {other:?}"),
        }
        let a = Mat::from_i64_rows(&[&[1, 1]]);
        match solve(&a, &[rat(2)]) {
            Solve::Underdetermined(x) => assert_eq!(x, vec![rat(2), rat(0)]),
            other => panic!("expected underdetermined, got {other:?}"),
        }
        let a = Mat::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[rat(1), rat(3)]), Solve::Inconsistent);
    }

    #[test]
    fn pivots_detect_definiteness() {
        let nd = Mat::from_i64_rows(&[&[-8, 0], &[0, -8]]);
        assert!(is_negative_definite(&nd).unwrap());
        let indef = Mat::from_i64_rows(&[&[-1, 0], &[0, 2]]);
        assert!(!is_negative_definite(&indef).unwrap());
        let singular = Mat::from_i64_rows(&[&[0, 0], &[0, -1]]);
        assert!(!is_negative_definite(&singular).unwrap());
        assert!(symmetric_pivots(&Mat::from_i64_rows(&[&[0, 1], &[2, 0]])).is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
    }

    proptest! {
        // Bareiss agrees with the cofactor oracle on random small matrices.
        #[test]
        fn bareiss_matches_cofactor(entries in prop::collection::vec(small_rat(), 16)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let m = Mat::from_rows(rows);
            prop_assert_eq!(determinant(&m).unwrap(), det_cofactor(&m));
        }

        // A unique solve really solves the system.
        #[test]
        fn solve_satisfies_system(entries in prop::collection::vec(small_rat(), 9),
                                  rhs in prop::collection::vec(small_rat(), 3)) {
            let rows: Vec<Vec<Rational>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let m = Mat::from_rows(rows);
            if let Some(x) = solve(&m, &rhs).into_solution() {
                prop_assert_eq!(m.mul_vec(&x), rhs);
            }
        }
    }
}
