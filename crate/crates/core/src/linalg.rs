//! Exact dense/sparse linear algebra over a [`Scalar`] field.
//!
//! Everything here is Gaussian elimination with the lowest-index nonzero
//! pivot, so results are deterministic and exact for rational scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(rows: &[Vec<F>], cols: usize) -> Self {
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_negligible)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| (a.clone() - b).is_negligible())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_negligible() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_negligible() {
                        out[(r, c)] += a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_negligible() && !b.is_negligible() {
                        acc += a.clone() * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut space = Subspace::new(self.cols);
        for r in 0..self.rows {
            space.insert(self.row(r));
        }
        space.dim()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in ascending order.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut space = Subspace::new(self.cols);
        for r in 0..self.rows {
            space.insert(self.row(r));
        }
        space.orthogonal_kernel()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_negligible()) else {
                return F::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if m[(r, col)].is_negligible() {
                    continue;
                }
                let factor = m[(r, col)].clone() / &p;
                for c in col..n {
                    let sub = factor.clone() * &m[(col, c)];
                    m[(r, c)] -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[(r, col)].is_negligible())?;
            aug.swap_rows(pivot, col);
            let p = aug[(col, col)].clone();
            for c in 0..2 * n {
                let v = aug[(col, c)].clone() / &p;
                aug[(col, c)] = v;
            }
            for r in 0..n {
                if r == col || aug[(r, col)].is_negligible() {
                    continue;
                }
                let factor = aug[(r, col)].clone();
                for c in 0..2 * n {
                    let sub = factor.clone() * &aug[(col, c)];
                    aug[(r, c)] -= sub;
                }
            }
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, c + n)].clone()))
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let cols = self.cols;
        let mut aug = Self::from_fn(self.rows, cols + 1, |r, c| if c < cols { self[(r, c)].clone() } else { b[r].clone() });
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(pivot) = (row..aug.rows).find(|&r| !aug[(r, col)].is_negligible()) else {
                continue;
            };
            aug.swap_rows(pivot, row);
            let p = aug[(row, col)].clone();
            for c in col..=cols {
                let v = aug[(row, c)].clone() / &p;
                aug[(row, c)] = v;
            }
            for r in 0..aug.rows {
                if r == row || aug[(r, col)].is_negligible() {
                    continue;
                }
                let factor = aug[(r, col)].clone();
                for c in col..=cols {
                    let sub = factor.clone() * &aug[(row, c)];
                    aug[(r, c)] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
            if row == aug.rows {
                break;
            }
        }
        if (row..aug.rows).any(|r| !aug[(r, cols)].is_negligible()) {
            return None;
        }
        let mut x = vec![F::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.data[r * self.cols + c])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse vector as sorted `(index, coefficient)` pairs without zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn to_sparse<F: Scalar>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, c)| !c.is_negligible()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(Scalar::is_negligible)
}

/// A subspace of `F^n` kept in reduced row echelon form.
///
/// Vectors can be inserted one at a time; each insertion reports whether the
/// dimension grew. Pivot rows are stored sparsely.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    // pivot column -> normalized row (pivot entry 1, zero at all other pivots)
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Scalar> Subspace<F> {
    pub fn new(ambient: usize) -> Self {
        Subspace { ambient, rows: BTreeMap::new() }
    }

    pub fn spanned_by<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a Vec<F>>) -> Self {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduces `v` against the pivot rows; the result vanishes iff `v` lies in the span.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector length does not match the ambient space");
        let mut w = v.to_vec();
        for (&p, row) in &self.rows {
            if w[p].is_negligible() {
                continue;
            }
            let c = w[p].clone();
            for (j, a) in row {
                w[*j] -= c.clone() * a;
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Inserts `v`; returns true when the dimension increased.
    pub fn insert(&mut self, v: &[F]) -> bool {
        let w = self.reduce(v);
        let Some(pivot) = w.iter().position(|c| !c.is_negligible()) else {
            return false;
        };
        let inv = F::one() / &w[pivot];
        let new_row: SparseVec<F> = w
            .iter()
            .enumerate()
            .skip(pivot)
            .filter(|(_, c)| !c.is_negligible())
            .map(|(j, c)| (j, if j == pivot { F::one() } else { c.clone() * &inv }))
            .collect();
        for row in self.rows.values_mut() {
            let Ok(pos) = row.binary_search_by_key(&pivot, |(j, _)| *j) else {
                continue;
            };
            let c = row[pos].1.clone();
            let mut dense: BTreeMap<usize, F> = row.drain(..).collect();
            for (j, a) in &new_row {
                let e = dense.entry(*j).or_insert_with(F::zero);
                *e -= c.clone() * a;
            }
            *row = dense.into_iter().filter(|(_, a)| !a.is_negligible()).collect();
        }
        self.rows.insert(pivot, new_row);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// The reduced basis as dense vectors, ordered by pivot.
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows
            .values()
            .map(|row| {
                let mut v = vec![F::zero(); self.ambient];
                for (j, a) in row {
                    v[*j] = a.clone();
                }
                v
            })
            .collect()
    }

    /// Treating the stored rows as linear equations, returns a basis of their
    /// common solution space (one vector per free column, ascending).
    pub fn orthogonal_kernel(&self) -> Vec<Vec<F>> {
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.ambient];
                v[f] = F::one();
                for (&p, row) in &self.rows {
                    if let Ok(pos) = row.binary_search_by_key(&f, |(j, _)| *j) {
                        v[p] = -row[pos].1.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Coordinates of `v` in terms of the given (independent) vectors, if `v` lies in their span.
pub fn coordinates<F: Scalar>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    Matrix::from_columns(v.len(), basis).solve(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_fn(rows.len(), rows[0].len(), |r, c| q(rows[r][c]))
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.determinant(), q(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        let singular = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), q(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = qm(&[&[1, 1], &[1, -1], &[2, 0]]);
        let x = m.solve(&[q(3), q(1), q(4)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        assert!(m.solve(&[q(3), q(1), q(5)]).is_none());
    }

    #[test]
    fn subspace_insertion_tracks_dimension() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(2), q(2), q(0)]));
        assert!(s.insert(&[q(0), q(1), q(1)]));
        assert!(s.contains(&[q(1), q(2), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.orthogonal_kernel().len(), 1);
    }

    #[test]
    fn coordinates_in_basis() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(coordinates(&basis, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(coordinates(&basis, &[q(2), q(3), q(4)]), None);
    }
}
