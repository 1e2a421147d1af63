//! Involutions, bilinear forms, adjoint operators and J-admissibility.
//!
//! Operators act on the right (`x ↦ xα`, stored as a matrix acting on
//! column vectors). The adjoint of `α` with respect to a form `f` is the
//! operator `α*` with `f(xα, y) = (-1)^{|α||y|} f(x, yα*)`.

use thiserror::Error;

use crate::algebra::{Algebra, OperatorMatrix};
use crate::cayley_dickson::{build_octonions, M7Variant};
use crate::error::{AlgebraError, Result};
use crate::factorization::{kronecker_factorize, Embedding, FactorizationError, FactorizationResult};
use crate::linalg::{coordinates, is_zero_vec, Matrix, Subspace};
use crate::report::{timed, Report, Witness};
use crate::scalar::Scalar;

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm<F> {
    pub gram: Matrix<F>,
    /// Parities of the underlying basis (all zero when ungraded).
    pub parity: Vec<u8>,
}

impl<F: Scalar> BilinearForm<F> {
    pub fn new(gram: Matrix<F>, parity: Vec<u8>) -> Result<Self> {
        if !gram.is_square() || gram.rows() != parity.len() {
            return Err(AlgebraError::DimensionMismatch { expected: parity.len(), found: gram.rows() });
        }
        if gram != gram.transpose() {
            return Err(AlgebraError::InvalidStructure("bilinear form is not symmetric".into()));
        }
        Ok(BilinearForm { gram, parity })
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(gy).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.gram.rank() == self.dim()
    }
}

/// Checks `σ² = id`, that `σ` is even, and `(ab)* = (-1)^{|a||b|} b* a*` on all basis pairs.
pub fn verify_involution<F: Scalar>(a: &Algebra<F>, sigma: &Matrix<F>) -> Report<F> {
    timed(|| {
        let n = a.dim();
        if sigma.rows() != n || sigma.cols() != n {
            return Report::error("involution", format!("expected a {n}x{n} matrix"));
        }
        if !OperatorMatrix::new(sigma.clone(), 0).respects_grading(a.parities()) {
            return Report::error("involution", "map is not even");
        }
        let square = sigma.mul(sigma);
        if square != Matrix::identity(n) {
            let col = (0..n).find(|&c| square.column(c) != crate::algebra::Element::basis(n, c).coeffs).unwrap_or(0);
            let mut defect = square.column(col);
            defect[col] -= F::one();
            return Report::fail(
                "involution",
                col + 1,
                Witness { indices: vec![col], defect, description: format!("({})** != {}", a.label(col), a.label(col)) },
            );
        }
        let star: Vec<Vec<F>> = (0..n).map(|i| sigma.column(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = sigma.mul_vec(&crate::algebra::densify(a.product(i, j), n));
                let s = F::sign(a.parity(i) & a.parity(j));
                let rhs: Vec<F> = a.mul(&star[j], &star[i]).into_iter().map(|c| c * &s).collect();
                if lhs != rhs {
                    let defect = lhs.into_iter().zip(rhs).map(|(x, y)| x - y).collect();
                    return Report::fail(
                        "involution",
                        n + i * n + j + 1,
                        Witness {
                            indices: vec![i, j],
                            defect,
                            description: format!("({}{})* != ±{}*{}*", a.label(i), a.label(j), a.label(j), a.label(i)),
                        },
                    );
                }
            }
        }
        Report::pass("involution", n + n * n)
    })
}

/// `f(x, y)` = identity coefficient of `(-x̂)ŷ`, where `x̂` lifts a basis
/// element of the 7-dimensional algebra to the octonions.
pub fn canonical_form_m7<F: Scalar>(variant: M7Variant, gamma: &F) -> Result<BilinearForm<F>> {
    let o = build_octonions(variant, gamma)?;
    // octonion basis index 0 is the identity; the 7-dimensional basis is 1..8
    let gram = Matrix::from_fn(7, 7, |i, j| -o.structure_constant(i + 1, j + 1, 0));
    let form = BilinearForm::new(gram, vec![0; 7])?;
    if !form.is_nonsingular() {
        return Err(AlgebraError::SingularForm);
    }
    Ok(form)
}

/// Chooses the functional `τ` on `U` used by [`induced_form`]: the
/// coefficient of the identity basis element when that makes
/// `(u, w) ↦ τ(uw)` non-singular, otherwise the first basis coefficient that does.
pub fn trace_functional<F: Scalar>(u: &Algebra<F>) -> Result<usize> {
    let m = u.dim();
    let gram_for = |t: usize| Matrix::from_fn(m, m, |i, j| u.structure_constant(i, j, t));
    let unit = crate::structure::unit_element(u).ok_or_else(|| AlgebraError::CoordinateAlgebra("no unit element".into()))?;
    let first = unit.iter().position(|c| !c.is_negligible()).unwrap_or(0);
    std::iter::once(first)
        .chain((0..m).filter(|&t| t != first))
        .find(|&t| gram_for(t).rank() == m)
        .ok_or(AlgebraError::SingularForm)
}

/// `f(a ⊗ u, b ⊗ w) = f𝕄(a, b) τ(uw)` on `𝕄 ⊗ U` (index `u * 7 + a`).
pub fn induced_form<F: Scalar>(base: &BilinearForm<F>, u: &Algebra<F>) -> Result<BilinearForm<F>> {
    let t = trace_functional(u)?;
    let k = base.dim();
    let m = u.dim();
    let gram = Matrix::from_fn(k * m, k * m, |r, c| {
        let (u1, a) = (r / k, r % k);
        let (u2, b) = (c / k, c % k);
        base.gram[(a, b)].clone() * u.structure_constant(u1, u2, t)
    });
    let parity = (0..k * m).map(|r| u.parity(r / k)).collect();
    let form = BilinearForm::new(gram, parity)?;
    if !form.is_nonsingular() {
        return Err(AlgebraError::SingularForm);
    }
    Ok(form)
}

/// `(a ⊗ u)* = a* ⊗ ū` on `𝕄 ⊗ U` (index `u * 7 + a`).
pub fn tensor_involution<F: Scalar>(sigma_m: &Matrix<F>, sigma_u: &Matrix<F>) -> Matrix<F> {
    let (k, m) = (sigma_m.rows(), sigma_u.rows());
    Matrix::from_fn(k * m, k * m, |r, c| sigma_u[(r / k, c / k)].clone() * &sigma_m[(r % k, c % k)])
}

/// `(a ⊗ u)* = -a ⊗ u`: the involution induced from `a ↦ -a`.
pub fn induced_involution<F: Scalar>(u: &Algebra<F>) -> Matrix<F> {
    Matrix::identity(7 * u.dim()).scale(&-F::one())
}

/// The unique `α*` with `f(xα, y) = (-1)^{|α||y|} f(x, yα*)`.
pub fn adjoint_operator<F: Scalar>(alpha: &OperatorMatrix<F>, f: &BilinearForm<F>) -> Result<OperatorMatrix<F>> {
    let n = f.dim();
    if alpha.dim() != n {
        return Err(AlgebraError::DimensionMismatch { expected: n, found: alpha.dim() });
    }
    let inv = f.gram.inverse().ok_or(AlgebraError::SingularForm)?;
    let mut m = inv.mul(&alpha.matrix.transpose()).mul(&f.gram);
    if alpha.parity == 1 {
        m = m.mul(&Matrix::from_fn(n, n, |r, c| if r == c { F::sign(f.parity[r]) } else { F::zero() }));
    }
    Ok(OperatorMatrix::new(m, alpha.parity))
}

/// Basis of `{a : a* = a}`.
pub fn symmetric_elements<F: Scalar>(sigma: &Matrix<F>) -> Vec<Vec<F>> {
    sigma.sub(&Matrix::identity(sigma.rows())).kernel()
}

/// Passes when every symmetric element lies in the nucleus; the witness is
/// a symmetric basis vector `s` and basis elements with a nonzero associator.
pub fn j_admissibility<F: Scalar>(e: &Algebra<F>, sigma: &Matrix<F>) -> Report<F> {
    timed(|| {
        let n = e.dim();
        let sym = symmetric_elements(sigma);
        let basis: Vec<Vec<F>> = (0..n).map(|i| e.basis(i).coeffs).collect();
        let assoc = |x: &[F], y: &[F], z: &[F]| {
            let mut l = e.mul(&e.mul(x, y), z);
            for (a, b) in l.iter_mut().zip(e.mul(x, &e.mul(y, z))) {
                *a -= b;
            }
            l
        };
        let mut checked = 0;
        for (si, s) in sym.iter().enumerate() {
            let name = crate::algebra::Element::new(s.clone()).display(e.labels());
            for x in 0..n {
                for y in 0..n {
                    checked += 1;
                    let slots = [
                        (assoc(&basis[x], s, &basis[y]), format!("({}, {name}, {})", e.label(x), e.label(y))),
                        (assoc(s, &basis[x], &basis[y]), format!("({name}, {}, {})", e.label(x), e.label(y))),
                        (assoc(&basis[x], &basis[y], s), format!("({}, {}, {name})", e.label(x), e.label(y))),
                    ];
                    for (defect, what) in slots {
                        if !is_zero_vec(&defect) {
                            let value = crate::algebra::Element::new(defect.clone()).display(e.labels());
                            return Report::fail(
                                "j-admissible",
                                checked,
                                Witness {
                                    indices: vec![si, x, y],
                                    defect,
                                    description: format!("symmetric element outside the nucleus: {what} = {value}"),
                                },
                            );
                        }
                    }
                }
            }
        }
        Report::pass("j-admissible", checked).with_note(format!("{} symmetric basis elements", sym.len()))
    })
}

/// Bases of the symmetric and skew parts of an operator space.
pub type SymSkew<F> = (Vec<OperatorMatrix<F>>, Vec<OperatorMatrix<F>>);

/// Splits a `*`-invariant operator space into symmetric and skew parts.
pub fn sym_skew_split<F: Scalar>(operators: &[OperatorMatrix<F>], f: &BilinearForm<F>) -> Result<SymSkew<F>> {
    let flat: Vec<Vec<F>> = operators.iter().map(OperatorMatrix::flatten).collect();
    let n = f.dim();
    let half = F::from_ratio(1, 2);
    let mut sym_span = Subspace::new(n * n);
    let mut skew_span = Subspace::new(n * n);
    let (mut sym, mut skew) = (Vec::new(), Vec::new());
    for (i, op) in operators.iter().enumerate() {
        let star = adjoint_operator(op, f)?;
        if coordinates(&flat, &star.flatten()).is_none() {
            return Err(AlgebraError::NotStarInvariant(i));
        }
        let plus = OperatorMatrix::new(op.matrix.add(&star.matrix).scale(&half), op.parity);
        let minus = OperatorMatrix::new(op.matrix.sub(&star.matrix).scale(&half), op.parity);
        if sym_span.insert(&plus.flatten()) {
            sym.push(plus);
        }
        if skew_span.insert(&minus.flatten()) {
            skew.push(minus);
        }
    }
    Ok((sym, skew))
}

/// Errors from [`factorize_with_involution`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvolutionError {
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("form is singular")]
    SingularForm,
    #[error("not J-admissible: {0}")]
    NotJAdmissible(String),
    #[error("operator {0} of U is not symmetric")]
    NotSymmetric(usize),
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Factorization of an algebra with involution whose coordinate operators
/// are certified symmetric: `α* = α` for every operator basis element.
#[derive(Clone, Debug)]
pub struct InvolutiveFactorization<F: Scalar> {
    pub result: FactorizationResult<F>,
    pub adjoints: Vec<OperatorMatrix<F>>,
    pub skew: Vec<OperatorMatrix<F>>,
}

pub fn factorize_with_involution<F: Scalar>(
    host: &Algebra<F>,
    emb: &Embedding<F>,
    sigma: &Matrix<F>,
    f: &BilinearForm<F>,
) -> std::result::Result<InvolutiveFactorization<F>, InvolutionError> {
    let describe = |r: Report<F>| r.witness.map(|w| w.description).unwrap_or_else(|| r.notes.join("; "));
    let inv = verify_involution(host, sigma);
    if !inv.passed() {
        return Err(InvolutionError::NotInvolution(describe(inv)));
    }
    if f.dim() != host.dim() || !f.is_nonsingular() {
        return Err(InvolutionError::SingularForm);
    }
    let j = j_admissibility(host, sigma);
    if !j.passed() {
        return Err(InvolutionError::NotJAdmissible(describe(j)));
    }
    let result = kronecker_factorize(host, emb)?;
    let mut adjoints = Vec::with_capacity(result.operators.len());
    for (i, op) in result.operators.iter().enumerate() {
        let star = adjoint_operator(op, f)?;
        if &star != op {
            return Err(InvolutionError::NotSymmetric(i));
        }
        adjoints.push(star);
    }
    let (_, skew) = sym_skew_split(&result.operators, f)?;
    Ok(InvolutiveFactorization { result, adjoints, skew })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::build_m7;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn canonical_form_values() {
        let f = canonical_form_m7::<Q>(M7Variant::Split, &q(1)).unwrap();
        assert_eq!(f.gram[(1, 4)], Q::from_ratio(-1, 2));
        assert_eq!(f.gram[(1, 2)], q(0));
        assert_eq!(f.gram[(0, 0)], q(-1));
        let g = canonical_form_m7::<Q>(M7Variant::Division, &q(-1)).unwrap();
        assert_eq!(g.gram[(0, 0)], q(1));
        assert_eq!(g.gram[(3, 3)], q(1));
    }

    #[test]
    fn minus_identity_is_an_involution() {
        let m = build_m7::<Q>(M7Variant::Split, &q(1)).unwrap();
        assert!(verify_involution(&m, &Matrix::identity(7).scale(&q(-1))).passed());
        let r = verify_involution(&m, &Matrix::identity(7));
        assert_eq!(r.witness.unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn adjoint_of_identity_and_diagonal() {
        let f = BilinearForm::new(Matrix::from_fn(3, 3, |r, c| if r == c { q(r as i64 + 1) } else { q(0) }), vec![0; 3]).unwrap();
        let id = OperatorMatrix::identity(3);
        assert_eq!(adjoint_operator(&id, &f).unwrap(), id);
        let d = OperatorMatrix::new(Matrix::from_fn(3, 3, |r, c| if r == c { q(5 - r as i64) } else { q(0) }), 0);
        assert_eq!(adjoint_operator(&d, &f).unwrap(), d);
    }

    #[test]
    fn sym_skew_of_artificial_space() {
        let f = BilinearForm::new(Matrix::identity(2), vec![0, 0]).unwrap();
        let a = OperatorMatrix::new(Matrix::from_rows(&[vec![q(0), q(1)], vec![q(0), q(0)]], 2), 0);
        let b = OperatorMatrix::new(Matrix::from_rows(&[vec![q(0), q(0)], vec![q(1), q(0)]], 2), 0);
        let (sym, skew) = sym_skew_split(&[a.clone(), b], &f).unwrap();
        assert_eq!((sym.len(), skew.len()), (1, 1));
        assert_eq!(sym_skew_split(&[a], &f), Err(AlgebraError::NotStarInvariant(0)));
    }
}
