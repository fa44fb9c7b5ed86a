//! Dense matrices and Gaussian elimination over any [`Scalar`] backend.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<S>], rows: usize) -> Self {
        Mat::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat<S>) -> Mat<S> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &S) -> Mat<S> {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn zip(&self, other: &Mat<S>, f: impl Fn(S, S) -> S) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Mat<S>) -> Mat<S> {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn approx_eq(&self, other: &Mat<S>) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.sub(other).is_zero()
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Entries row by row.
    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)].to_f64()).collect()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = choose_pivot(&m, row, col) else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for j in col..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m[(i, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let sub = factor.clone() * m[(row, j)].clone();
                    if !sub.is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - sub;
                    }
                }
                m[(i, col)] = S::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let aug = Mat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Option<Mat<S>> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = choose_pivot(&m, col, col) else { return S::zero() };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * pivot.clone();
            for i in col + 1..n {
                let factor = m[(i, col)].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    m[(i, j)] = m[(i, j)].clone() - factor.clone() * m[(col, j)].clone();
                }
            }
        }
        det
    }
}

fn choose_pivot<S: Scalar>(m: &Mat<S>, from_row: usize, col: usize) -> Option<usize> {
    if S::is_exact() {
        (from_row..m.rows).find(|&i| !m[(i, col)].is_zero())
    } else {
        (from_row..m.rows)
            .filter(|&i| !m[(i, col)].is_zero())
            .max_by(|&a, &b| m[(a, col)].to_f64().abs().total_cmp(&m[(b, col)].to_f64().abs()))
    }
}

/// Rank of a family of vectors.
pub fn rank_of<S: Scalar>(vectors: &[Vec<S>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors).rank()
}

/// Greedy maximal linearly independent subfamily, returned by index.
pub fn independent_subset<S: Scalar>(vectors: &[Vec<S>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<S>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        basis.push(v.clone());
        if rank_of(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    Mat::from_columns(basis, v.len()).solve(v)
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<S: Scalar>(alpha: &S, x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| alpha.clone() * a.clone() + b.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Mat::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|x| Scalar::is_zero(x)));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(&[vec![q(2), q(1)], vec![q(1), q(1)]]);
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).approx_eq(&Mat::identity(2)));
        assert_eq!(m.determinant(), q(1));
        let singular = Mat::from_rows(&[vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert!(singular.solve(&[q(1), q(0)]).is_none());
        assert!(singular.inverse().is_none());
    }
}
