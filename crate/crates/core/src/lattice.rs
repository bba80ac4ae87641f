//! Exact integer linear algebra.
//!
//! All entries are arbitrary-precision integers. The Smith normal form is the
//! workhorse: kernels come out saturated because the column transform is
//! unimodular.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("basis is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if rows * cols != entries.len() {
            return Err(LatticeError::Shape { rows, cols, len: entries.len() });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, entries)
    }

    /// Builds a `dim x k` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<BigInt>]) -> Result<Self, LatticeError> {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(LatticeError::DimensionMismatch { expected: dim, found: c.len() });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let d = &self[(src, j)] * k;
            self[(dst, j)] += d;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let d = &self[(i, src)] * k;
            self[(i, dst)] += d;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Smith normal form `left * self * right = diagonal`.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut left = Self::identity(m);
        let mut right = Self::identity(n);
        let mut rank = 0;

        for t in 0..m.min(n) {
            let Some((pi, pj)) = d.min_abs_entry(t, t) else { break };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            loop {
                let pivot = d[(t, t)].clone();
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() {
                        let q = -d[(i, t)].div_floor(&pivot);
                        d.add_row(i, t, &q);
                        left.add_row(i, t, &q);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() {
                        let q = -d[(t, j)].div_floor(&pivot);
                        d.add_col(j, t, &q);
                        right.add_col(j, t, &q);
                    }
                }

                // A remainder smaller than the pivot survived in row or column t.
                let stray_row = (t + 1..m).find(|&i| !d[(i, t)].is_zero());
                let stray_col = (t + 1..n).find(|&j| !d[(t, j)].is_zero());
                if stray_row.is_some() || stray_col.is_some() {
                    let (pi, pj) = d.min_abs_in_cross(t);
                    d.swap_rows(t, pi);
                    left.swap_rows(t, pi);
                    d.swap_cols(t, pj);
                    right.swap_cols(t, pj);
                    continue;
                }

                // Divisibility: fold a non-divisible row into row t and repeat.
                let pivot = d[(t, t)].clone();
                let bad = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
                });
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        left.add_row(t, i, &one);
                    }
                    None => break,
                }
            }

            if d[(t, t)].is_negative() {
                d.negate_row(t);
                left.negate_row(t);
            }
            rank += 1;
        }

        SmithForm { diagonal: d, left, right, rank }
    }

    fn min_abs_entry(&self, r0: usize, c0: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in r0..self.rows {
            for j in c0..self.cols {
                let v = &self[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn min_abs_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let cands = (t..self.rows).map(|i| (i, t)).chain((t..self.cols).map(|j| (t, j)));
        for (i, j) in cands {
            let v = &self[(i, j)];
            if !v.is_zero() && (self[best].is_zero() || v.abs() < self[best].abs()) {
                best = (i, j);
            }
        }
        best
    }

    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// `left * A * right = diagonal`, both transforms unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Basis of the saturated kernel lattice `{v in Z^cols : A v = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = a.smith_normal_form();
    (snf.rank..a.cols()).map(|j| snf.right.column(j)).collect()
}

/// Coordinates of `v` in a unimodular basis of `Z^n`.
pub fn solve_in_basis(basis: &[Vec<BigInt>], v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
    let n = v.len();
    if basis.len() != n {
        return Err(LatticeError::DimensionMismatch { expected: n, found: basis.len() });
    }
    let b = IntMatrix::from_columns(n, basis)?;
    let det = b.determinant();
    if det.abs() != BigInt::one() {
        return Err(LatticeError::NotUnimodular { det });
    }
    let x = solve_rational(&b, v).expect("unimodular system is solvable");
    Ok(x.into_iter().map(|q| q.to_integer()).collect())
}

/// Solves `A x = v` over the rationals when a solution exists.
///
/// `A` may be tall; the system must be consistent and `A` of full column rank
/// for the solution to be unique (otherwise free variables are set to zero).
pub fn solve_rational(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigRational>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..n).map(|j| BigRational::from_integer(a[(i, j)].clone())).collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=n {
                    let d = &aug[r][j] * &f;
                    aug[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][n].clone();
    }
    Some(x)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Narrows to machine integers; panics on overflow, which fan-scale data never reaches.
pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    v.iter().map(|x| x.to_i64().expect("lattice entry exceeds i64")).collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        to_big(v)
    }

    #[test]
    fn kernel_of_p1_rays() {
        assert_eq!(kernel_basis(&m(2, &[&[1, -1]])), vec![big(&[1, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&IntMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_p2_rays() {
        let k = kernel_basis(&m(3, &[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(k.len(), 1);
        // Unique up to sign.
        let v = &k[0];
        assert!(*v == big(&[1, 1, 1]) || *v == big(&[-1, -1, -1]));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel generated by (2, 1), not (4, 2).
        let k = kernel_basis(&m(2, &[&[2, -4]]));
        assert_eq!(k.len(), 1);
        assert!(k[0] == big(&[2, 1]) || k[0] == big(&[-2, -1]));
    }

    #[test]
    fn solve_examples() {
        let e = vec![big(&[1, 0]), big(&[0, 1])];
        assert_eq!(solve_in_basis(&e, &big(&[0, 2])).unwrap(), big(&[0, 2]));
        assert_eq!(solve_in_basis(&e, &big(&[0, 0])).unwrap(), big(&[0, 0]));
        let f2 = vec![big(&[0, 1]), big(&[-1, 2])];
        assert_eq!(solve_in_basis(&f2, &big(&[1, 0])).unwrap(), big(&[2, -1]));
    }

    #[test]
    fn solve_rejects_non_unimodular() {
        let b = vec![big(&[1, 0]), big(&[1, 2])];
        assert_eq!(
            solve_in_basis(&b, &big(&[1, 0])),
            Err(LatticeError::NotUnimodular { det: BigInt::from(2) })
        );
    }

    #[test]
    fn smith_invariants() {
        let a = m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let snf = a.smith_normal_form();
        assert_eq!(snf.invariant_factors(), big(&[2, 6, 12]));
        assert_eq!(snf.left.mul(&a).mul(&snf.right), snf.diagonal);
        assert_eq!(snf.left.determinant().abs(), BigInt::one());
        assert_eq!(snf.right.determinant().abs(), BigInt::one());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(2, &[&[1, 0], &[1, 2]]).determinant(), BigInt::from(2));
        assert_eq!(m(3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant(), BigInt::from(-1));
    }

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<i64>)> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            (Just(c), proptest::collection::vec(-3i64..=3, r * c))
        })
    }

    proptest! {
        #[test]
        fn kernel_contains_all_small_solutions((cols, entries) in small_matrix()) {
            let rows = entries.len() / cols;
            let a = IntMatrix::new(rows, cols, to_big(&entries)).unwrap();
            let k = kernel_basis(&a);
            prop_assert_eq!(k.len(), cols - a.rank());
            for b in &k {
                prop_assert!(a.mul_vec(b).iter().all(|x| x.is_zero()));
            }
            // Every kernel vector in a small box is an integer combination of the basis.
            let kmat = IntMatrix::from_columns(cols, &k).unwrap();
            let mut v = vec![-2i64; cols];
            loop {
                let bv = to_big(&v);
                if a.mul_vec(&bv).iter().all(|x| x.is_zero()) {
                    let x = solve_rational(&kmat, &bv);
                    prop_assert!(x.is_some_and(|x| x.iter().all(|q| q.is_integer())));
                }
                let mut i = 0;
                while i < cols && v[i] == 2 { v[i] = -2; i += 1; }
                if i == cols { break; }
                v[i] += 1;
            }
        }

        #[test]
        fn solve_then_recombine(v in proptest::collection::vec(-20i64..=20, 3)) {
            let basis = vec![big(&[1, 2, 0]), big(&[0, 1, 0]), big(&[3, -1, 1])];
            let c = solve_in_basis(&basis, &to_big(&v)).unwrap();
            let back: Vec<BigInt> = (0..3)
                .map(|i| (0..3).map(|k| &c[k] * &basis[k][i]).sum())
                .collect();
            prop_assert_eq!(back, to_big(&v));
        }
    }
}
