use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::{ExactSign, Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

/// Outcome of Sylvester's criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    IndefiniteOrDegenerate,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for r in 0..self.rows {
            l.entry(&&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Builds from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<S>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
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

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }
}

impl<S: Field> Matrix<S> {
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("non-zero pivot");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul_ref(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let t = f.mul_ref(&m[(r, j)]);
                        m[(i, j)] = m[(i, j)].clone() - t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![S::zero(); self.cols];
                x[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -matrix[(r, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Coordinates of `v` in the span of the columns, if it is a member.
    pub fn membership(&self, v: &[S]) -> Result<Option<Vec<S>>, MatrixError> {
        if v.len() != self.rows {
            return Err(MatrixError::Dimension {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = v[i].clone();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<S, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det.mul_ref(&piv);
            let inv = piv.inv().expect("non-zero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].mul_ref(&inv);
                for j in c..n {
                    let t = f.mul_ref(&m[(c, j)]);
                    m[(i, j)] = m[(i, j)].clone() - t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = S::one();
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Leading principal minor of order `k` (top-left `k×k` block).
    pub fn leading_minor(&self, k: usize) -> S {
        let mut sub = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub[(i, j)] = self[(i, j)].clone();
            }
        }
        sub.det().expect("square block")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S: ExactSign> Matrix<S> {
    /// Sylvester's criterion on the leading principal minors, with exact
    /// sign evaluation.
    pub fn sylvester_definite(&self) -> Result<Definiteness, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        if !self.is_symmetric() {
            return Err(MatrixError::NotSymmetric);
        }
        let signs: Vec<Ordering> = (1..=self.rows).map(|k| self.leading_minor(k).sign()).collect();
        if signs.iter().all(|s| *s == Ordering::Greater) {
            return Ok(Definiteness::Positive);
        }
        let alternating = signs.iter().enumerate().all(|(i, s)| {
            let want = if i % 2 == 0 { Ordering::Less } else { Ordering::Greater };
            *s == want
        });
        Ok(if alternating {
            Definiteness::Negative
        } else {
            Definiteness::IndefiniteOrDegenerate
        })
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity_and_dependent_rows() {
        let id = Matrix::<Rational>::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let r = m(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots.len(), 1);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn membership_coordinates() {
        let a = Matrix::from_cols(&[vec![rat(1, 1), rat(0, 1), rat(1, 1)]], 3);
        assert_eq!(
            a.membership(&[rat(3, 1), rat(0, 1), rat(3, 1)]).unwrap(),
            Some(vec![rat(3, 1)])
        );
        assert_eq!(a.membership(&[rat(0, 1), rat(1, 1), rat(0, 1)]).unwrap(), None);
        assert_eq!(
            a.membership(&vec![rat(0, 1); 3]).unwrap(),
            Some(vec![rat(0, 1)])
        );
        assert!(a.membership(&[rat(0, 1)]).is_err());
    }

    #[test]
    fn sylvester_examples() {
        let id = Matrix::<Rational>::identity(7);
        assert_eq!(id.sylvester_definite().unwrap(), Definiteness::Positive);
        let neg = id.scale(&rat(-1, 1));
        assert_eq!(neg.sylvester_definite().unwrap(), Definiteness::Negative);
        let mut d = id.clone();
        d[(1, 1)] = rat(-1, 1);
        assert_eq!(d.sylvester_definite().unwrap(), Definiteness::IndefiniteOrDegenerate);
        let mut ns = id;
        ns[(0, 1)] = rat(1, 1);
        assert_eq!(ns.sylvester_definite(), Err(MatrixError::NotSymmetric));
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det().unwrap(), rat(1, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(MatrixError::Singular));
    }
}
