//! The multilinear functions of Malcev theory and exhaustive identity checks.
//!
//! All graded formulas follow the Koszul rule: a sign `(-1)^{|a||b|}` for
//! every pair of homogeneous arguments whose order is exchanged. On an
//! ungraded algebra every parity is 0 and the formulas reduce to their
//! classical forms.

use crate::algebra::{Algebra, Element, OperatorMatrix};
use crate::error::{AlgebraError, Result};
use crate::linalg::{is_zero_vec, Matrix, SparseVec};
use crate::report::{timed, Report, Witness};
use crate::scalar::Scalar;

/// Which multilinear function [`special_form`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `[x,y,z] = (xy)z + x(yz)`
    Antiassociator,
    /// `{x,y,z} = (xy)z - (-1)^{|y||z|}(xz)y + 2x(yz)`
    Braces,
    /// `h(y,z,t,x,u)`, five arguments in that order.
    H,
    /// `p(x,y,z,t) = -{zt,x,y} - {yt,z,x} + {xt,y,z}`
    P,
}

impl FormKind {
    fn arity(self) -> usize {
        match self {
            FormKind::Antiassociator | FormKind::Braces => 3,
            FormKind::H => 5,
            FormKind::P => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FormKind::Antiassociator => "antiassociator",
            FormKind::Braces => "braces",
            FormKind::H => "h",
            FormKind::P => "p",
        }
    }
}

fn sign<F: Scalar>(e: u8) -> F {
    F::sign(e)
}

fn add_scaled<F: Scalar>(acc: &mut [F], s: &F, v: &[F]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_negligible() {
            *a += s.clone() * b;
        }
    }
}

fn add_scaled_sparse<F: Scalar>(acc: &mut [F], s: &F, v: &SparseVec<F>) {
    for (k, c) in v {
        acc[*k] += s.clone() * c;
    }
}

/// `{x,y,z}~ = (xy)z - (-1)^{|y||z|}(xz)y + 2x(yz)`.
pub(crate) fn braces_raw<F: Scalar>(a: &Algebra<F>, x: &[F], y: &[F], py: u8, z: &[F], pz: u8) -> Vec<F> {
    let mut out = a.mul(&a.mul(x, y), z);
    let xz_y = a.mul(&a.mul(x, z), y);
    add_scaled(&mut out, &-sign::<F>(py & pz), &xz_y);
    let x_yz = a.mul(x, &a.mul(y, z));
    add_scaled(&mut out, &F::from_int(2), &x_yz);
    out
}

/// Graded `p~(x,y,z,t)`; signs are the Koszul signs of each permuted term.
pub(crate) fn p_raw<F: Scalar>(a: &Algebra<F>, args: [(&[F], u8); 4]) -> Vec<F> {
    let [(x, px), (y, py), (z, pz), (t, pt)] = args;
    let s1 = (px ^ py) & (pz ^ pt);
    let s2 = (px & (py ^ pz ^ pt)) ^ (pz & pt);
    let s3 = pt & (py ^ pz);
    let mut out = vec![F::zero(); a.dim()];
    let zt = a.mul(z, t);
    add_scaled(&mut out, &-sign::<F>(s1), &braces_raw(a, &zt, x, px, y, py));
    let yt = a.mul(y, t);
    add_scaled(&mut out, &-sign::<F>(s2), &braces_raw(a, &yt, z, pz, x, px));
    let xt = a.mul(x, t);
    add_scaled(&mut out, &sign::<F>(s3), &braces_raw(a, &xt, y, py, z, pz));
    out
}

/// Graded `h~(y,z,t,x,u)` exactly as displayed, including both terms ending in `t`.
pub(crate) fn h_raw<F: Scalar>(a: &Algebra<F>, args: [(&[F], u8); 5]) -> Vec<F> {
    let [(y, _), (z, pz), (t, pt), (x, px), (u, pu)] = args;
    let s2 = px & pu;
    let s3 = (px & (pz ^ pt ^ pu)) ^ (pu & pt);
    let s4 = (pu & (pz ^ pt)) ^ (px & pt);
    let yz = a.mul(y, z);
    let yx = a.mul(y, x);
    let yu = a.mul(y, u);
    let mut out = a.mul(&braces_raw(a, &yz, t, pt, u, pu), x);
    add_scaled(&mut out, &sign::<F>(s2), &a.mul(&braces_raw(a, &yz, t, pt, x, px), u));
    add_scaled(&mut out, &sign::<F>(s3), &a.mul(&braces_raw(a, &yx, z, pz, u, pu), t));
    add_scaled(&mut out, &sign::<F>(s4), &a.mul(&braces_raw(a, &yu, z, pz, x, px), t));
    out
}

fn checked_parity<F: Scalar>(a: &Algebra<F>, x: &Element<F>) -> Result<u8> {
    if x.dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: x.dim() });
    }
    a.parity_of(&x.coeffs).ok_or(AlgebraError::NotHomogeneous)
}

fn check_dims<F: Scalar>(a: &Algebra<F>, xs: &[&Element<F>]) -> Result<()> {
    for x in xs {
        if x.dim() != a.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: a.dim(), found: x.dim() });
        }
    }
    Ok(())
}

/// Classical Jacobian `(xy)z + (yz)x + (zx)y`.
pub fn jacobian<F: Scalar>(a: &Algebra<F>, x: &Element<F>, y: &Element<F>, z: &Element<F>) -> Result<Element<F>> {
    check_dims(a, &[x, y, z])?;
    let (x, y, z) = (&x.coeffs, &y.coeffs, &z.coeffs);
    let mut out = a.mul(&a.mul(x, y), z);
    add_scaled(&mut out, &F::one(), &a.mul(&a.mul(y, z), x));
    add_scaled(&mut out, &F::one(), &a.mul(&a.mul(z, x), y));
    Ok(Element::new(out))
}

/// Super Jacobian `(xy)z - x(yz) - (-1)^{|y||z|}(xz)y` on homogeneous elements.
pub fn super_jacobian<F: Scalar>(a: &Algebra<F>, x: &Element<F>, y: &Element<F>, z: &Element<F>) -> Result<Element<F>> {
    checked_parity(a, x)?;
    let py = checked_parity(a, y)?;
    let pz = checked_parity(a, z)?;
    let (x, y, z) = (&x.coeffs, &y.coeffs, &z.coeffs);
    let mut out = a.mul(&a.mul(x, y), z);
    add_scaled(&mut out, &-F::one(), &a.mul(x, &a.mul(y, z)));
    add_scaled(&mut out, &-sign::<F>(py & pz), &a.mul(&a.mul(x, z), y));
    Ok(Element::new(out))
}

/// Evaluates one of the Malcev multilinear functions. On a graded algebra
/// the arguments must be homogeneous and the graded version is used.
pub fn special_form<F: Scalar>(a: &Algebra<F>, kind: FormKind, args: &[Element<F>]) -> Result<Element<F>> {
    if args.len() != kind.arity() {
        return Err(AlgebraError::WrongArity { form: kind.name(), expected: kind.arity(), found: args.len() });
    }
    let parities = args.iter().map(|x| checked_parity(a, x)).collect::<Result<Vec<_>>>()?;
    let v = |i: usize| (args[i].coeffs.as_slice(), parities[i]);
    let out = match kind {
        FormKind::Antiassociator => {
            let (x, y, z) = (v(0).0, v(1).0, v(2).0);
            let mut out = a.mul(&a.mul(x, y), z);
            add_scaled(&mut out, &F::one(), &a.mul(x, &a.mul(y, z)));
            out
        }
        FormKind::Braces => braces_raw(a, v(0).0, v(1).0, v(1).1, v(2).0, v(2).1),
        FormKind::H => h_raw(a, [v(0), v(1), v(2), v(3), v(4)]),
        FormKind::P => p_raw(a, [v(0), v(1), v(2), v(3)]),
    };
    Ok(Element::new(out))
}

/// The operator `x -> p~(x, y, z, t)` as a matrix over the basis, with parity `|y|+|z|+|t|`.
pub fn alpha_operator<F: Scalar>(a: &Algebra<F>, y: &Element<F>, z: &Element<F>, t: &Element<F>) -> Result<OperatorMatrix<F>> {
    let py = checked_parity(a, y)?;
    let pz = checked_parity(a, z)?;
    let pt = checked_parity(a, t)?;
    Ok(alpha_raw(a, (&y.coeffs, py), (&z.coeffs, pz), (&t.coeffs, pt)))
}

pub(crate) fn alpha_raw<F: Scalar>(a: &Algebra<F>, y: (&[F], u8), z: (&[F], u8), t: (&[F], u8)) -> OperatorMatrix<F> {
    let dim = a.dim();
    let columns: Vec<Vec<F>> = (0..dim)
        .map(|m| {
            let e = a.basis(m).coeffs;
            p_raw(a, [(&e, a.parity(m)), y, z, t])
        })
        .collect();
    OperatorMatrix::new(Matrix::from_columns(dim, &columns), y.1 ^ z.1 ^ t.1)
}

/// Defect of the quadratic Malcev identity `J(x,y,xz) - J(x,y,z)x` (ungraded).
pub fn malcev_defect<F: Scalar>(a: &Algebra<F>, x: &Element<F>, y: &Element<F>, z: &Element<F>) -> Result<Element<F>> {
    let xz = a.multiply(x, z)?;
    let lhs = jacobian(a, x, y, &xz)?;
    let rhs = a.multiply(&jacobian(a, x, y, z)?, x)?;
    Ok(&lhs - &rhs)
}

/// Checks super-anticommutativity of the table: returns the first failing pair.
pub fn anticommutativity_witness<F: Scalar>(a: &Algebra<F>) -> Option<Witness<F>> {
    let dim = a.dim();
    for i in 0..dim {
        for j in 0..dim {
            let mut defect = vec![F::zero(); dim];
            add_scaled_sparse(&mut defect, &F::one(), a.product(i, j));
            add_scaled_sparse(&mut defect, &sign(a.parity(i) & a.parity(j)), a.product(j, i));
            if !is_zero_vec(&defect) {
                return Some(Witness {
                    indices: vec![i, j],
                    defect,
                    description: format!("{} {} + (-1)^(|x||y|) {} {} != 0", a.label(i), a.label(j), a.label(j), a.label(i)),
                });
            }
        }
    }
    None
}

/// Right product of a sparse vector with a basis element, added into `acc` with scale `s`.
fn acc_times_basis<F: Scalar>(a: &Algebra<F>, acc: &mut [F], s: &F, v: &SparseVec<F>, j: usize) {
    for (i, c) in v {
        let sc = s.clone() * c;
        for (k, d) in a.product(*i, j) {
            acc[*k] += sc.clone() * d;
        }
    }
}

fn sparse_product<F: Scalar>(a: &Algebra<F>, x: &SparseVec<F>, y: &SparseVec<F>) -> Vec<F> {
    let mut out = vec![F::zero(); a.dim()];
    for (i, c) in x {
        for (j, d) in y {
            let cd = c.clone() * d;
            for (k, e) in a.product(*i, *j) {
                out[*k] += cd.clone() * e;
            }
        }
    }
    out
}

/// Exhaustive Malcev (super)algebra check.
///
/// (a) `xy = -(-1)^{|x||y|} yx` on all basis pairs; (b) the linearized
/// identity on all basis quadruples:
///
/// ```text
/// (-1)^{|y||z|}(xz)(yt) = ((xy)z)t + (-1)^{|x|(|y|+|z|+|t|)}((yz)t)x
///     + (-1)^{(|x|+|y|)(|z|+|t|)}((zt)x)y + (-1)^{(|x|+|y|+|z|)|t|}((tx)y)z
/// ```
pub fn verify_malcev<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    timed(|| malcev_sweep(a))
}

fn malcev_sweep<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    let dim = a.dim();
    if let Some(w) = anticommutativity_witness(a) {
        return Report::fail("malcev", dim * dim, w).with_note("anticommutativity fails");
    }
    let p = a.parities();
    // triple[(a*dim + b)*dim + c] = (e_a e_b) e_c
    let mut triple: Vec<SparseVec<F>> = Vec::with_capacity(dim * dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut acc = vec![F::zero(); dim];
                acc_times_basis(a, &mut acc, &F::one(), a.product(i, j), k);
                triple.push(crate::linalg::to_sparse(&acc));
            }
        }
    }
    let tri = |i: usize, j: usize, k: usize| &triple[(i * dim + j) * dim + k];
    let mut acc = vec![F::zero(); dim];
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                for t in 0..dim {
                    let s0 = p[y] & p[z];
                    let s1 = p[x] & (p[y] ^ p[z] ^ p[t]);
                    let s2 = (p[x] ^ p[y]) & (p[z] ^ p[t]);
                    let s3 = (p[x] ^ p[y] ^ p[z]) & p[t];
                    let lhs = sparse_product(a, a.product(x, z), a.product(y, t));
                    for (k, c) in lhs.into_iter().enumerate() {
                        acc[k] = if s0 == 0 { c } else { -c };
                    }
                    let minus = -F::one();
                    acc_times_basis(a, &mut acc, &minus, tri(x, y, z), t);
                    acc_times_basis(a, &mut acc, &-sign::<F>(s1), tri(y, z, t), x);
                    acc_times_basis(a, &mut acc, &-sign::<F>(s2), tri(z, t, x), y);
                    acc_times_basis(a, &mut acc, &-sign::<F>(s3), tri(t, x, y), z);
                    if !is_zero_vec(&acc) {
                        let names = [x, y, z, t].map(|i| a.label(i).to_string());
                        return Report::fail(
                            "malcev",
                            dim.pow(4),
                            Witness {
                                indices: vec![x, y, z, t],
                                defect: acc,
                                description: format!("linearized Malcev identity fails at (x,y,z,t) = ({})", names.join(", ")),
                            },
                        );
                    }
                }
            }
        }
    }
    Report::pass("malcev", dim.pow(4))
}

/// Exhaustive check that the graded function `h~(y,z,t,x,u)` vanishes on all basis quintuples.
///
/// The report carries a note when the algebra is not Malcev; the sweep runs regardless.
pub fn verify_h_variety<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    timed(|| {
        let report = h_sweep(a);
        if anticommutativity_witness(a).is_some() {
            report.with_note("warning: algebra is not anticommutative, so not Malcev")
        } else {
            report
        }
    })
}

fn h_sweep<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    let dim = a.dim();
    let p = a.parities();
    let basis: Vec<Vec<F>> = (0..dim).map(|i| a.basis(i).coeffs).collect();
    let mut acc = vec![F::zero(); dim];
    let one = F::one();
    for y in 0..dim {
        for z in 0..dim {
            let yz = crate::algebra::densify(a.product(y, z), dim);
            let yz_zero = is_zero_vec(&yz);
            // by_t_u[t*dim+u] = {yz, t, u}; by_x_u[x*dim+u] = {yx, z, u}
            let by_t_u: Vec<SparseVec<F>> = (0..dim * dim)
                .map(|idx| {
                    let (t, u) = (idx / dim, idx % dim);
                    if yz_zero {
                        Vec::new()
                    } else {
                        crate::linalg::to_sparse(&braces_raw(a, &yz, &basis[t], p[t], &basis[u], p[u]))
                    }
                })
                .collect();
            let by_x_u: Vec<SparseVec<F>> = (0..dim * dim)
                .map(|idx| {
                    let (x, u) = (idx / dim, idx % dim);
                    let yx = a.product(y, x);
                    if yx.is_empty() {
                        Vec::new()
                    } else {
                        let yx = crate::algebra::densify(yx, dim);
                        crate::linalg::to_sparse(&braces_raw(a, &yx, &basis[z], p[z], &basis[u], p[u]))
                    }
                })
                .collect();
            for t in 0..dim {
                for x in 0..dim {
                    for u in 0..dim {
                        let s2 = p[x] & p[u];
                        let s3 = (p[x] & (p[z] ^ p[t] ^ p[u])) ^ (p[u] & p[t]);
                        let s4 = (p[u] & (p[z] ^ p[t])) ^ (p[x] & p[t]);
                        let terms = [
                            (&by_t_u[t * dim + u], x, 0u8),
                            (&by_t_u[t * dim + x], u, s2),
                            (&by_x_u[x * dim + u], t, s3),
                            (&by_x_u[u * dim + x], t, s4),
                        ];
                        if terms.iter().all(|(v, _, _)| v.is_empty()) {
                            continue;
                        }
                        for (v, j, s) in terms {
                            if !v.is_empty() {
                                let s = if s == 0 { one.clone() } else { -one.clone() };
                                acc_times_basis(a, &mut acc, &s, v, j);
                            }
                        }
                        if !is_zero_vec(&acc) {
                            let names = [y, z, t, x, u].map(|i| a.label(i).to_string());
                            return Report::fail(
                                "h-variety",
                                dim.pow(5),
                                Witness {
                                    indices: vec![y, z, t, x, u],
                                    defect: acc,
                                    description: format!("h(y,z,t,x,u) != 0 at ({})", names.join(", ")),
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    Report::pass("h-variety", dim.pow(5))
}
