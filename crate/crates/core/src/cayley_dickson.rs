//! Octonion constructions and the seven-dimensional simple Malcev algebras.
//!
//! The split octonions are realized as Cayley (Zorn) vector matrices
//! `[[a, α], [β, b]]` with `a, b` scalars and `α, β` in `F^3`; the division
//! octonions by doubling the quaternions with parameter `γ`. The commutator
//! algebra of either, modulo the scalars, is a 7-dimensional simple Malcev
//! algebra that is not Lie.

use crate::algebra::{labels, Algebra};
use crate::error::{AlgebraError, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::structure::{grassmann_label, grassmann_product, is_associative, is_supercommutative, unit_element};

/// A Cayley vector matrix `[[a, alpha], [beta, b]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyMatrix<F> {
    pub a: F,
    pub alpha: [F; 3],
    pub beta: [F; 3],
    pub b: F,
}

fn dot<F: Scalar>(x: &[F; 3], y: &[F; 3]) -> F {
    x[0].clone() * &y[0] + x[1].clone() * &y[1] + x[2].clone() * &y[2]
}

fn cross<F: Scalar>(x: &[F; 3], y: &[F; 3]) -> [F; 3] {
    [
        x[1].clone() * &y[2] - x[2].clone() * &y[1],
        x[2].clone() * &y[0] - x[0].clone() * &y[2],
        x[0].clone() * &y[1] - x[1].clone() * &y[0],
    ]
}

fn lin3<F: Scalar>(s: &F, x: &[F; 3], t: &F, y: &[F; 3]) -> [F; 3] {
    [0, 1, 2].map(|i| s.clone() * &x[i] + t.clone() * &y[i])
}

impl<F: Scalar> CayleyMatrix<F> {
    /// Coordinates in the basis `e0 = diag(1,1)`, `e1 = diag(1,-1)`, `e2..e4` (α), `e5..e7` (β).
    pub fn from_coords(x: &[F]) -> Self {
        assert_eq!(x.len(), 8);
        CayleyMatrix {
            a: x[0].clone() + &x[1],
            alpha: [x[2].clone(), x[3].clone(), x[4].clone()],
            beta: [x[5].clone(), x[6].clone(), x[7].clone()],
            b: x[0].clone() - &x[1],
        }
    }

    pub fn to_coords(&self) -> Vec<F> {
        let half = F::from_ratio(1, 2);
        let mut out = vec![(self.a.clone() + &self.b) * &half, (self.a.clone() - &self.b) * &half];
        out.extend(self.alpha.iter().cloned());
        out.extend(self.beta.iter().cloned());
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [na, nb] = [&self.a, &self.b];
        let alpha = lin3(na, &o.alpha, &o.b, &self.alpha);
        let bc = cross(&self.beta, &o.beta);
        let beta = lin3(&o.a, &self.beta, nb, &o.beta);
        let ag = cross(&self.alpha, &o.alpha);
        CayleyMatrix {
            a: self.a.clone() * &o.a + dot(&self.alpha, &o.beta),
            alpha: [0, 1, 2].map(|i| alpha[i].clone() - &bc[i]),
            beta: [0, 1, 2].map(|i| beta[i].clone() + &ag[i]),
            b: dot(&self.beta, &o.alpha) + self.b.clone() * &o.b,
        }
    }
}

/// The 8-dimensional split octonions `C(F)` as Cayley vector matrices, basis `e0..e7`.
pub fn split_octonions<F: Scalar>() -> Algebra<F> {
    let names: Vec<String> = (0..8).map(|i| format!("e{i}")).collect();
    let unit = |i: usize| {
        let mut v = vec![F::zero(); 8];
        v[i] = F::one();
        CayleyMatrix::from_coords(&v)
    };
    Algebra::from_fn(names, None, |i, j| unit(i).mul(&unit(j)).to_coords()).expect("fixed dimensions")
}

type Quaternion<F> = [F; 4];

fn quat_mul<F: Scalar>(p: &Quaternion<F>, q: &Quaternion<F>) -> Quaternion<F> {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1.clone() * a2 - b1.clone() * b2 - c1.clone() * c2 - d1.clone() * d2,
        a1.clone() * b2 + b1.clone() * a2 + c1.clone() * d2 - d1.clone() * c2,
        a1.clone() * c2 - b1.clone() * d2 + c1.clone() * a2 + d1.clone() * b2,
        a1.clone() * d2 + b1.clone() * c2 - c1.clone() * b2 + d1.clone() * a2,
    ]
}

fn quat_conj<F: Scalar>(p: &Quaternion<F>) -> Quaternion<F> {
    [p[0].clone(), -p[1].clone(), -p[2].clone(), -p[3].clone()]
}

fn quat_add<F: Scalar>(p: Quaternion<F>, q: Quaternion<F>, s: &F) -> Quaternion<F> {
    let [a, b, c, d] = q;
    let [w, x, y, z] = p;
    [w + a * s, x + b * s, y + c * s, z + d * s]
}

/// Octonions `H + vH` over Hamilton's quaternions with `v^2 = gamma`, basis
/// `1, i, j, k, v, vi, vj, vk`. The product is
/// `(a + vb)(c + vd) = (ac + gamma d conj(b)) + v(conj(a) d + c b)`.
pub fn build_division_octonions<F: Scalar>(gamma: &F) -> Result<Algebra<F>> {
    if gamma.is_negligible() {
        return Err(AlgebraError::ZeroGamma);
    }
    let split = |x: usize| -> (Quaternion<F>, Quaternion<F>) {
        let mut q = [F::zero(), F::zero(), F::zero(), F::zero()];
        q[x % 4] = F::one();
        let zero = [F::zero(), F::zero(), F::zero(), F::zero()];
        if x < 4 {
            (q, zero)
        } else {
            (zero, q)
        }
    };
    Algebra::from_fn(labels(&["1", "i", "j", "k", "v", "vi", "vj", "vk"]), None, |x, y| {
        let (a, b) = split(x);
        let (c, d) = split(y);
        let first = quat_add(quat_mul(&a, &c), quat_mul(&d, &quat_conj(&b)), gamma);
        let second = quat_add(quat_mul(&quat_conj(&a), &d), quat_mul(&c, &b), &F::one());
        first.into_iter().chain(second).collect()
    })
}

/// The (super)commutator algebra `[x, y] = xy - (-1)^{|x||y|} yx` on the same basis.
pub fn commutator_algebra<F: Scalar>(a: &Algebra<F>) -> Algebra<F> {
    let dim = a.dim();
    let parity = a.is_graded().then(|| a.parities().to_vec());
    Algebra::from_fn(a.labels().to_vec(), parity, |i, j| {
        let mut v = crate::algebra::densify(a.product(i, j), dim);
        let s = F::sign(a.parity(i) & a.parity(j));
        for (k, c) in a.product(j, i) {
            v[*k] -= s.clone() * c;
        }
        v
    })
    .expect("same shape as the input")
}

/// A quotient algebra together with the projection from the original space.
#[derive(Clone, Debug)]
pub struct Quotient<F: Scalar> {
    pub algebra: Algebra<F>,
    /// `dim(quotient) x dim(original)` matrix sending coordinates to coset coordinates.
    pub projection: Matrix<F>,
}

/// Quotient by the line spanned by an element that annihilates the algebra on both sides.
pub fn central_quotient<F: Scalar>(a: &Algebra<F>, z: &[F]) -> Result<Quotient<F>> {
    central_quotient_by(a, &[z.to_vec()])
}

/// Quotient by the span of annihilating elements. The basis of the quotient
/// is the original basis minus the pivot positions of the span (in echelon
/// form, lowest index first); labels and parities are inherited.
pub fn central_quotient_by<F: Scalar>(a: &Algebra<F>, zs: &[Vec<F>]) -> Result<Quotient<F>> {
    let dim = a.dim();
    let mut span = Subspace::new(dim);
    for z in zs {
        if z.len() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: z.len() });
        }
        for i in 0..dim {
            if !crate::linalg::is_zero_vec(&a.mul_basis_left(i, z)) || !crate::linalg::is_zero_vec(&a.mul_basis_right(z, i)) {
                let name = crate::algebra::Element::new(z.clone()).display(a.labels());
                return Err(AlgebraError::NotCentral(name, i));
            }
        }
        span.insert(z);
    }
    if span.dim() == 0 {
        return Err(AlgebraError::ZeroQuotient);
    }
    let pivots = span.pivots();
    let keep: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let names = keep.iter().map(|&i| a.label(i).to_string()).collect();
    let parity = a.is_graded().then(|| keep.iter().map(|&i| a.parity(i)).collect());
    let project = |v: &[F]| -> Vec<F> {
        let reduced = span.reduce(v);
        keep.iter().map(|&k| reduced[k].clone()).collect()
    };
    let algebra = Algebra::from_fn(names, parity, |i, j| project(&crate::algebra::densify(a.product(keep[i], keep[j]), dim)))?;
    let columns: Vec<Vec<F>> = (0..dim).map(|j| project(&crate::algebra::Element::basis(dim, j).coeffs)).collect();
    Ok(Quotient { algebra, projection: Matrix::from_columns(keep.len(), &columns) })
}

/// Validates that `u` is unital, associative and supercommutative.
pub fn check_coordinate_algebra<F: Scalar>(u: &Algebra<F>) -> Result<()> {
    if !is_associative(u).passed() {
        return Err(AlgebraError::CoordinateAlgebra("not associative".into()));
    }
    if !is_supercommutative(u).passed() {
        return Err(AlgebraError::CoordinateAlgebra("not supercommutative".into()));
    }
    if unit_element(u).is_none() {
        return Err(AlgebraError::CoordinateAlgebra("no unit element".into()));
    }
    Ok(())
}

/// `A ⊗ U` for an even algebra `A` and a supercommutative coordinate algebra `U`.
///
/// The basis element `a ⊗ u` has index `u * dim A + a`, label `a⊗u` (just
/// `a` when `u` is labelled `1`) and parity `|u|`.
pub fn tensor_with_coordinates<F: Scalar>(a: &Algebra<F>, u: &Algebra<F>) -> Result<Algebra<F>> {
    if a.parities().contains(&1) {
        return Err(AlgebraError::InvalidStructure("the first factor must be even".into()));
    }
    check_coordinate_algebra(u)?;
    Ok(tensor_unchecked(a, u))
}

pub(crate) fn tensor_unchecked<F: Scalar>(a: &Algebra<F>, u: &Algebra<F>) -> Algebra<F> {
    let (n, m) = (a.dim(), u.dim());
    let mut names = Vec::with_capacity(n * m);
    let mut parity = Vec::with_capacity(n * m);
    for w in 0..m {
        for i in 0..n {
            names.push(if u.label(w) == "1" { a.label(i).to_string() } else { format!("{}⊗{}", a.label(i), u.label(w)) });
            parity.push(u.parity(w));
        }
    }
    let mut entries = Vec::new();
    for w1 in 0..m {
        for w2 in 0..m {
            for (w3, c) in u.product(w1, w2) {
                for i in 0..n {
                    for j in 0..n {
                        for (k, d) in a.product(i, j) {
                            entries.push((w1 * n + i, w2 * n + j, w3 * n + k, c.clone() * d));
                        }
                    }
                }
            }
        }
    }
    Algebra::from_entries(names, u.is_graded().then_some(parity), entries).expect("indices in range")
}

/// `C(U)`: Cayley vector matrices with entries in a coordinate algebra `U`,
/// basis `e_i ⊗ u` at index `u * 8 + i`.
pub fn build_cayley_matrix_algebra<F: Scalar>(u: &Algebra<F>) -> Result<Algebra<F>> {
    check_coordinate_algebra(u)?;
    Ok(tensor_unchecked(&split_octonions(), u))
}

/// Which octonion algebra the 7-dimensional Malcev algebra comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum M7Variant {
    Split,
    Division,
}

impl std::str::FromStr for M7Variant {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split" => Ok(M7Variant::Split),
            "division" => Ok(M7Variant::Division),
            other => Err(AlgebraError::UnknownKind(other.to_string())),
        }
    }
}

impl M7Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            M7Variant::Split => "split",
            M7Variant::Division => "division",
        }
    }
}

/// The octonion algebra underlying a variant; `gamma` is ignored for the split case.
pub fn build_octonions<F: Scalar>(variant: M7Variant, gamma: &F) -> Result<Algebra<F>> {
    match variant {
        M7Variant::Split => Ok(split_octonions()),
        M7Variant::Division => build_division_octonions(gamma),
    }
}

/// The 7-dimensional simple Malcev algebra: the commutator algebra of the
/// octonions modulo the scalars. Basis `e1..e7` (split) or
/// `i, j, k, v, vi, vj, vk` (division).
pub fn build_m7<F: Scalar>(variant: M7Variant, gamma: &F) -> Result<Algebra<F>> {
    let o = build_octonions(variant, gamma)?;
    let mut unit = vec![F::zero(); 8];
    unit[0] = F::one();
    Ok(central_quotient(&commutator_algebra(&o), &unit)?.algebra)
}

/// `M7(U)`: the commutator superalgebra of `O ⊗ U` modulo `1 ⊗ U`.
///
/// Its basis (index `u * 7 + a`) coincides with that of
/// `tensor_with_coordinates(build_m7(..), U)`.
pub fn build_m7_over<F: Scalar>(variant: M7Variant, gamma: &F, u: &Algebra<F>) -> Result<Algebra<F>> {
    check_coordinate_algebra(u)?;
    let cu = tensor_unchecked(&build_octonions(variant, gamma)?, u);
    let scalars: Vec<Vec<F>> = (0..u.dim())
        .map(|w| {
            let mut v = vec![F::zero(); cu.dim()];
            v[w * 8] = F::one();
            v
        })
        .collect();
    Ok(central_quotient_by(&commutator_algebra(&cu), &scalars)?.algebra)
}

/// Sample coordinate algebras by name:
///
/// * `field`: `F`
/// * `dual`: `F[t]/(t^2)`
/// * `split-quadratic`: `F[t]/(t^2 - 1)`
/// * `truncated:N`: `F[t]/(t^N)`, `N >= 1`
/// * `grassmann:N`: Grassmann algebra on `N` odd generators
/// * `dual-odd`: `{1, t, θ}` with `t` even, `θ` odd and all products of `t, θ` zero
pub fn build_sample_coordinates<F: Scalar>(kind: &str) -> Result<Algebra<F>> {
    let one = F::one;
    let unital = |dim: usize| {
        let mut e = Vec::new();
        for i in 0..dim {
            e.push((0, i, i, one()));
            if i > 0 {
                e.push((i, 0, i, one()));
            }
        }
        e
    };
    let parse_n = |rest: &str| rest.parse::<u32>().map_err(|_| AlgebraError::UnknownKind(kind.to_string()));
    match kind {
        "field" => Ok(Algebra::from_entries(labels(&["1"]), None, unital(1))?),
        "dual" => Ok(Algebra::from_entries(labels(&["1", "t"]), None, unital(2))?),
        "split-quadratic" => {
            let mut e = unital(2);
            e.push((1, 1, 0, one()));
            Ok(Algebra::from_entries(labels(&["1", "t"]), None, e)?)
        }
        "dual-odd" => Ok(Algebra::from_entries(labels(&["1", "t", "θ"]), Some(vec![0, 0, 1]), unital(3))?),
        _ => {
            if let Some(rest) = kind.strip_prefix("truncated:") {
                let n = parse_n(rest)? as usize;
                if n == 0 || n > 64 {
                    return Err(AlgebraError::UnknownKind(kind.to_string()));
                }
                let names = (0..n)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "t".to_string(),
                        _ => format!("t^{i}"),
                    })
                    .collect();
                let mut e = Vec::new();
                for i in 0..n {
                    for j in 0..n - i {
                        e.push((i, j, i + j, one()));
                    }
                }
                Ok(Algebra::from_entries(names, None, e)?)
            } else if let Some(rest) = kind.strip_prefix("grassmann:") {
                let n = parse_n(rest)?;
                if n > 8 {
                    return Err(AlgebraError::UnknownKind(kind.to_string()));
                }
                let size = 1usize << n;
                let names = (0..size as u32).map(|g| if g == 0 { "1".to_string() } else { grassmann_label(g) }).collect();
                let parity = (0..size as u32).map(|g| (g.count_ones() % 2) as u8).collect();
                let mut e = Vec::new();
                for g in 0..size as u32 {
                    for h in 0..size as u32 {
                        if let Some((s, gh)) = grassmann_product(g, h) {
                            e.push((g as usize, h as usize, gh as usize, F::sign(s)));
                        }
                    }
                }
                Ok(Algebra::from_entries(names, Some(parity), e)?)
            } else {
                Err(AlgebraError::UnknownKind(kind.to_string()))
            }
        }
    }
}
