//! Finite-dimensional (super)algebras given by structure constants.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::linalg::{is_zero_vec, Matrix, SparseVec};
use crate::scalar::Scalar;

/// An algebra on a fixed basis with a sparse multiplication table and an
/// optional Z/2 grading (all parities 0 when ungraded).
#[derive(Clone, PartialEq)]
pub struct Algebra<F> {
    labels: Vec<String>,
    parity: Vec<u8>,
    // products[i * dim + j] = e_i e_j, sparse over the basis
    products: Vec<SparseVec<F>>,
}

impl<F: Scalar> Algebra<F> {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `c` is the
    /// coefficient of `e_k` in `e_i e_j`. Repeated entries are summed.
    pub fn from_entries(
        labels: Vec<String>,
        parity: Option<Vec<u8>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let parity = Self::check_parity(dim, parity)?;
        let mut dense = vec![vec![F::zero(); dim]; dim * dim];
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index, dim });
                }
            }
            dense[i * dim + j][k] += c;
        }
        Self::from_dense(labels, parity, dense)
    }

    /// Builds an algebra from a closure returning the coefficient vector of `e_i e_j`.
    pub fn from_fn(
        labels: Vec<String>,
        parity: Option<Vec<u8>>,
        mut product: impl FnMut(usize, usize) -> Vec<F>,
    ) -> Result<Self> {
        let dim = labels.len();
        let parity = Self::check_parity(dim, parity)?;
        let mut dense = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, found: v.len() });
                }
                dense.push(v);
            }
        }
        Self::from_dense(labels, parity, dense)
    }

    fn check_parity(dim: usize, parity: Option<Vec<u8>>) -> Result<Vec<u8>> {
        if dim == 0 {
            return Err(AlgebraError::InvalidStructure("dimension must be positive".into()));
        }
        let parity = parity.unwrap_or_else(|| vec![0; dim]);
        if parity.len() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: parity.len() });
        }
        if parity.iter().any(|&p| p > 1) {
            return Err(AlgebraError::InvalidStructure("parity bits must be 0 or 1".into()));
        }
        Ok(parity)
    }

    fn from_dense(labels: Vec<String>, parity: Vec<u8>, dense: Vec<Vec<F>>) -> Result<Self> {
        let dim = labels.len();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(AlgebraError::InvalidStructure(format!("duplicate basis label `{dup}`")));
        }
        let mut products = Vec::with_capacity(dim * dim);
        for (idx, v) in dense.into_iter().enumerate() {
            let (i, j) = (idx / dim, idx % dim);
            let sparse = crate::linalg::to_sparse(&v);
            for (k, _) in &sparse {
                if parity[*k] != (parity[i] ^ parity[j]) {
                    return Err(AlgebraError::GradingViolated { i, j, k: *k });
                }
            }
            products.push(sparse);
        }
        Ok(Algebra { labels, parity, products })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn is_graded(&self) -> bool {
        self.parity.contains(&1)
    }

    /// `e_i e_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.products[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
        self.product(i, j).iter().find(|(idx, _)| *idx == k).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    /// All nonzero structure constants in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &F)> + '_ {
        let dim = self.dim();
        self.products.iter().enumerate().flat_map(move |(idx, v)| v.iter().map(move |(k, c)| (idx / dim, idx % dim, *k, c)))
    }

    /// A copy with one structure constant replaced (grading is re-validated).
    pub fn with_structure_constant(&self, i: usize, j: usize, k: usize, value: F) -> Result<Self> {
        let dim = self.dim();
        for index in [i, j, k] {
            if index >= dim {
                return Err(AlgebraError::IndexOutOfRange { index, dim });
            }
        }
        let mut dense: Vec<Vec<F>> = self.products.iter().map(|v| densify(v, dim)).collect();
        dense[i * dim + j][k] = value;
        Self::from_dense(self.labels.clone(), self.parity.clone(), dense)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn zero(&self) -> Element<F> {
        Element::zero(self.dim())
    }

    pub fn basis(&self, i: usize) -> Element<F> {
        Element::basis(self.dim(), i)
    }

    pub fn element(&self, coeffs: Vec<F>) -> Result<Element<F>> {
        self.check(&coeffs)?;
        Ok(Element::new(coeffs))
    }

    fn check(&self, v: &[F]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    /// Bilinear product of two elements of this algebra.
    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check(&x.coeffs)?;
        self.check(&y.coeffs)?;
        Ok(Element::new(self.mul(&x.coeffs, &y.coeffs)))
    }

    /// Product on raw coefficient vectors; lengths must equal `dim`.
    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let dim = self.dim();
        let mut out = vec![F::zero(); dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_negligible() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_negligible() {
                    continue;
                }
                let ab = a.clone() * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += ab.clone() * c;
                }
            }
        }
        out
    }

    /// `x e_j`.
    pub fn mul_basis_right(&self, x: &[F], j: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_negligible() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] += a.clone() * c;
            }
        }
        out
    }

    /// `e_i y`.
    pub fn mul_basis_left(&self, i: usize, y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (j, b) in y.iter().enumerate() {
            if b.is_negligible() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] += b.clone() * c;
            }
        }
        out
    }

    /// Parity of a vector if it is homogeneous; the zero vector counts as even.
    pub fn parity_of(&self, v: &[F]) -> Option<u8> {
        let mut found = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_negligible() {
                continue;
            }
            match found {
                None => found = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(0))
    }

    /// Splits a vector into its even and odd components.
    pub fn homogeneous_parts(&self, v: &[F]) -> [Vec<F>; 2] {
        let part = |p: u8| v.iter().enumerate().map(|(i, c)| if self.parity[i] == p { c.clone() } else { F::zero() }).collect();
        [part(0), part(1)]
    }

    /// Matrix of `y -> x y`.
    pub fn left_multiplication(&self, x: &[F]) -> Matrix<F> {
        let dim = self.dim();
        let cols: Vec<Vec<F>> = (0..dim).map(|j| self.mul_basis_right(x, j)).collect();
        Matrix::from_columns(dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_multiplication(&self, x: &[F]) -> Matrix<F> {
        let dim = self.dim();
        let cols: Vec<Vec<F>> = (0..dim).map(|i| self.mul_basis_left(i, x)).collect();
        Matrix::from_columns(dim, &cols)
    }

    /// True when every product vanishes.
    pub fn is_zero_product(&self) -> bool {
        self.products.iter().all(Vec::is_empty)
    }

    /// Direct product `A x B`: basis of `A` followed by basis of `B`, mixed products zero.
    pub fn direct_sum(&self, other: &Algebra<F>) -> Result<Self> {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut parity = self.parity.clone();
        parity.extend(other.parity.iter().copied());
        let entries = self
            .entries()
            .map(|(i, j, k, c)| (i, j, k, c.clone()))
            .chain(other.entries().map(|(i, j, k, c)| (i + n, j + n, k + n, c.clone())))
            .collect::<Vec<_>>();
        Self::from_entries(labels, Some(parity), entries)
    }
}

pub(crate) fn densify<F: Scalar>(v: &SparseVec<F>, dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); dim];
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

impl<F: Scalar> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Algebra(dim {}) {{", self.dim())?;
        for (i, j, k, c) in self.entries() {
            writeln!(f, "  {} * {} -> {} {}", self.labels[i], self.labels[j], c, self.labels[k])?;
        }
        write!(f, "}}")
    }
}

/// Coefficient vector over the basis of some algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F> {
    pub coeffs: Vec<F>,
}

impl<F: Scalar> Element<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        Element { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coeffs: vec![F::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[i] = F::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn scale(&self, s: &F) -> Self {
        Element { coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect() }
    }

    /// Renders the element with the given basis labels, e.g. `-6 e3 + 1/2 e1`.
    pub fn display(&self, labels: &[String]) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible())
            .map(|(i, c)| format!("{c} {}", labels[i]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<F: Scalar> Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: &Element<F>) -> Element<F> {
        assert_eq!(self.dim(), rhs.dim(), "elements of different algebras");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b).collect() }
    }
}

impl<F: Scalar> Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: &Element<F>) -> Element<F> {
        assert_eq!(self.dim(), rhs.dim(), "elements of different algebras");
        Element { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b).collect() }
    }
}

impl<F: Scalar> Neg for &Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        Element { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

/// A linear operator on an algebra or carrier space, stored in column
/// convention: `apply(x) = matrix * x`.
///
/// Operators are written on the right of their argument in the literature
/// (`x alpha`); [`then`](Self::then) composes in that reading order.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorMatrix<F> {
    pub matrix: Matrix<F>,
    pub parity: u8,
}

impl<F: Scalar> OperatorMatrix<F> {
    pub fn new(matrix: Matrix<F>, parity: u8) -> Self {
        OperatorMatrix { matrix, parity }
    }

    pub fn identity(dim: usize) -> Self {
        OperatorMatrix { matrix: Matrix::identity(dim), parity: 0 }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.matrix.mul_vec(x)
    }

    /// First `self`, then `next`: `x (self next) = (x self) next`.
    pub fn then(&self, next: &OperatorMatrix<F>) -> OperatorMatrix<F> {
        OperatorMatrix { matrix: next.matrix.mul(&self.matrix), parity: self.parity ^ next.parity }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Flattened entries, for span computations inside `End(V)`.
    pub fn flatten(&self) -> Vec<F> {
        self.matrix.as_slice().to_vec()
    }

    /// True when the operator maps parity-`q` basis vectors into the parity-`q + parity` span.
    pub fn respects_grading(&self, parities: &[u8]) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| self.matrix[(r, c)].is_negligible() || parities[r] == parities[c] ^ self.parity))
    }

    /// True when every scalar multiple of the identity; returns the scalar.
    pub fn scalar_value(&self) -> Option<F> {
        let n = self.dim();
        let lambda = self.matrix[(0, 0)].clone();
        let scalar = (0..n).all(|r| {
            (0..n).all(|c| {
                let expected = if r == c { lambda.clone() } else { F::zero() };
                (self.matrix[(r, c)].clone() - expected).is_negligible()
            })
        });
        scalar.then_some(lambda)
    }
}

/// Koszul sign of reordering homogeneous symbols: `order[k]` is the original
/// position of the symbol placed k-th. Returns the exponent of -1.
pub fn koszul_exponent(parities: &[u8], order: &[usize]) -> u8 {
    let mut e = 0u8;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                e ^= parities[order[a]] & parities[order[b]];
            }
        }
    }
    e
}

pub(crate) fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
