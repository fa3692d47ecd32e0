use super::{monomials, KForm, Mono};
use crate::exact_algebra::{Field, Matrix};

/// A linear subspace of `Λᵏ` kept in reduced echelon form.
///
/// The stored basis is the list of non-zero rows of the echelon matrix, so
/// re-reducing the basis reproduces the same matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSubspace<S> {
    dim: usize,
    grade: usize,
    echelon: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Field> FormSubspace<S> {
    pub fn span(dim: usize, grade: usize, forms: &[KForm<S>]) -> Self {
        let n = monomials(dim, grade).len();
        let rows: Vec<Vec<S>> = forms
            .iter()
            .map(|f| {
                assert_eq!((f.dim(), f.grade()), (dim, grade), "ambient mismatch");
                f.to_coords()
            })
            .collect();
        let m = if rows.is_empty() {
            Matrix::zeros(0, n)
        } else {
            Matrix::from_rows(rows)
        };
        let r = m.rref();
        let k = r.pivots.len();
        let mut echelon = Matrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                echelon[(i, j)] = r.matrix[(i, j)].clone();
            }
        }
        Self {
            dim,
            grade,
            echelon,
            pivots: r.pivots,
        }
    }

    pub fn full(dim: usize, grade: usize) -> Self {
        let basis: Vec<KForm<S>> = monomials(dim, grade)
            .into_iter()
            .map(|m| KForm::monomial(dim, m, S::one()))
            .collect();
        Self::span(dim, grade, &basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn echelon(&self) -> &Matrix<S> {
        &self.echelon
    }

    pub fn basis(&self) -> Vec<KForm<S>> {
        (0..self.dimension())
            .map(|i| KForm::from_coords(self.dim, self.grade, self.echelon.row(i)))
            .collect()
    }

    /// Coordinates of `f` with respect to [`Self::basis`], if `f` lies in
    /// the subspace.
    pub fn coordinates(&self, f: &KForm<S>) -> Option<Vec<S>> {
        assert_eq!((f.dim(), f.grade()), (self.dim, self.grade), "ambient mismatch");
        let v = f.to_coords();
        // With a reduced echelon basis the candidate coordinates are read
        // off the pivot columns.
        let coords: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![S::zero(); v.len()];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.echelon.row(i).iter().enumerate() {
                rebuilt[j] = rebuilt[j].add_ref(&c.mul_ref(x));
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, f: &KForm<S>) -> bool {
        self.coordinates(f).is_some()
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.echelon.cols()
    }

    /// Monomials completing the subspace to all of `Λᵏ`.
    pub fn complement(&self) -> Vec<Mono> {
        monomials(self.dim, self.grade)
            .into_iter()
            .enumerate()
            .filter(|(j, _)| !self.pivots.contains(j))
            .map(|(_, m)| m)
            .collect()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut all = self.basis();
        all.extend(other.basis());
        Self::span(self.dim, self.grade, &all)
    }
}
