//! Structural invariants: centroid, nucleus, ideals, simplicity, units,
//! associativity and the Grassmann envelope.

use crate::algebra::{Algebra, OperatorMatrix};
use crate::linalg::{is_zero_vec, Matrix, Subspace};
use crate::report::{timed, Report, Witness};
use crate::scalar::Scalar;

/// Basis of the (super)centroid component of the given parity: operators
/// `α` (written on the right, `x ↦ xα`) with
/// `(xy)α = x(yα) = (-1)^{|α||y|} (xα)y` that shift parity by `parity`.
/// On an ungraded algebra, parity 1 gives the empty list.
pub fn centroid_basis<F: Scalar>(a: &Algebra<F>, parity: u8) -> Vec<OperatorMatrix<F>> {
    let dim = a.dim();
    let p = a.parities();
    // unknown A[k][m] (coefficient of e_k in e_m α) allowed iff p_k = p_m + parity
    let mut index = vec![usize::MAX; dim * dim];
    let mut n = 0;
    for k in 0..dim {
        for m in 0..dim {
            if p[k] == p[m] ^ (parity & 1) {
                index[k * dim + m] = n;
                n += 1;
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut equations = Subspace::new(n);
    let mut row = vec![F::zero(); n];
    let push = |coeffs: &mut Vec<F>, eqs: &mut Subspace<F>| {
        if !is_zero_vec(coeffs) {
            eqs.insert(coeffs);
        }
        coeffs.iter_mut().for_each(|c| *c = F::zero());
    };
    for i in 0..dim {
        for j in 0..dim {
            let s = F::sign(parity & p[j]);
            for k in 0..dim {
                // (e_i e_j)α - e_i(e_j α)
                for (m, c) in a.product(i, j) {
                    let u = index[k * dim + m];
                    if u != usize::MAX {
                        row[u] += c;
                    }
                }
                let mut other = row.clone();
                for m in 0..dim {
                    let c = a.structure_constant(i, m, k);
                    if c.is_negligible() {
                        continue;
                    }
                    let u = index[m * dim + j];
                    if u != usize::MAX {
                        row[u] -= &c;
                    }
                }
                push(&mut row, &mut equations);
                // (e_i e_j)α - (-1)^{|α||e_j|} (e_i α) e_j
                for m in 0..dim {
                    let c = a.structure_constant(m, j, k);
                    if c.is_negligible() {
                        continue;
                    }
                    let u = index[m * dim + i];
                    if u != usize::MAX {
                        other[u] -= s.clone() * &c;
                    }
                }
                push(&mut other, &mut equations);
            }
        }
    }
    equations
        .orthogonal_kernel()
        .into_iter()
        .map(|sol| {
            let mut m = Matrix::zeros(dim, dim);
            for k in 0..dim {
                for j in 0..dim {
                    let u = index[k * dim + j];
                    if u != usize::MAX {
                        m[(k, j)] = sol[u].clone();
                    }
                }
            }
            OperatorMatrix::new(m, parity & 1)
        })
        .collect()
}

/// Direct test of the (super)centroid conditions on every basis pair.
pub fn is_in_centroid<F: Scalar>(a: &Algebra<F>, op: &OperatorMatrix<F>) -> bool {
    let dim = a.dim();
    if op.dim() != dim || !op.respects_grading(a.parities()) {
        return false;
    }
    let images: Vec<Vec<F>> = (0..dim).map(|i| op.matrix.column(i)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let s = F::sign(op.parity & a.parity(j));
            let lhs = op.apply(&crate::algebra::densify(a.product(i, j), dim));
            if lhs != a.mul_basis_left(i, &images[j]) {
                return false;
            }
            let right: Vec<F> = a.mul_basis_right(&images[i], j).into_iter().map(|c| c * &s).collect();
            if lhs != right {
                return false;
            }
        }
    }
    true
}

/// Basis of the nucleus: elements `n` with `(n,x,y) = (x,n,y) = (x,y,n) = 0`.
pub fn nucleus<F: Scalar>(a: &Algebra<F>) -> Vec<Vec<F>> {
    let dim = a.dim();
    let basis: Vec<Vec<F>> = (0..dim).map(|i| a.basis(i).coeffs).collect();
    let assoc = |x: &[F], y: &[F], z: &[F]| {
        let mut l = a.mul(&a.mul(x, y), z);
        let r = a.mul(x, &a.mul(y, z));
        for (u, v) in l.iter_mut().zip(r) {
            *u -= v;
        }
        l
    };
    let mut equations = Subspace::new(dim);
    for x in 0..dim {
        for y in 0..dim {
            let cols: [Vec<Vec<F>>; 3] = [
                (0..dim).map(|m| assoc(&basis[m], &basis[x], &basis[y])).collect(),
                (0..dim).map(|m| assoc(&basis[x], &basis[m], &basis[y])).collect(),
                (0..dim).map(|m| assoc(&basis[x], &basis[y], &basis[m])).collect(),
            ];
            for slot in &cols {
                for k in 0..dim {
                    let eq: Vec<F> = slot.iter().map(|col| col[k].clone()).collect();
                    if !is_zero_vec(&eq) {
                        equations.insert(&eq);
                    }
                }
            }
            if equations.is_full() {
                return Vec::new();
            }
        }
    }
    equations.orthogonal_kernel()
}

/// The two-sided ideal generated by `generators`.
pub fn ideal_closure<F: Scalar>(a: &Algebra<F>, generators: &[Vec<F>]) -> Subspace<F> {
    let dim = a.dim();
    let mut ideal = Subspace::new(dim);
    let mut queue: Vec<Vec<F>> = Vec::new();
    for g in generators {
        if ideal.insert(g) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for j in 0..dim {
            for w in [a.mul_basis_right(&v, j), a.mul_basis_left(j, &v)] {
                if ideal.insert(&w) {
                    queue.push(w);
                }
            }
        }
        if ideal.is_full() {
            break;
        }
    }
    ideal
}

/// Simplicity test (graded ideals when the algebra is graded).
///
/// Fails with a witness when the product vanishes or a basis element
/// generates a proper nonzero ideal. Otherwise it passes when the
/// multiplication algebra is all of `End(A)` (or, for a graded algebra, all
/// parity-preserving maps together with the odd ones it generates), which
/// forces irreducibility. If neither applies the result is `Error` with an
/// explanatory note.
pub fn is_simple<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    timed(|| {
        let dim = a.dim();
        if a.is_zero_product() {
            return Report::fail(
                "simple",
                0,
                Witness { indices: vec![], defect: vec![F::zero(); dim], description: "product is identically zero".into() },
            );
        }
        for i in 0..dim {
            let ideal = ideal_closure(a, &[a.basis(i).coeffs]);
            if !ideal.is_full() {
                return Report::fail(
                    "simple",
                    i + 1,
                    Witness {
                        indices: vec![i],
                        defect: a.basis(i).coeffs,
                        description: format!("{} generates a proper ideal of dimension {}", a.label(i), ideal.dim()),
                    },
                );
            }
        }
        let mut gens: Vec<Matrix<F>> = Vec::new();
        for i in 0..dim {
            let e = a.basis(i).coeffs;
            gens.push(a.left_multiplication(&e));
            gens.push(a.right_multiplication(&e));
        }
        if a.is_graded() {
            gens.push(Matrix::from_fn(dim, dim, |r, c| if r == c { F::sign(a.parity(r)) } else { F::zero() }));
        }
        let env = enveloping_dimension(&gens, dim);
        if env == dim * dim {
            Report::pass("simple", dim)
        } else {
            Report::error(
                "simple",
                format!(
                    "no basis element generates a proper ideal, but the multiplication algebra has dimension {env} < {}; simplicity undecided",
                    dim * dim
                ),
            )
        }
    })
}

/// Dimension of the unital associative algebra generated by the given square matrices.
pub(crate) fn enveloping_dimension<F: Scalar>(gens: &[Matrix<F>], n: usize) -> usize {
    enveloping_basis(gens, n).len()
}

pub(crate) fn enveloping_basis<F: Scalar>(gens: &[Matrix<F>], n: usize) -> Vec<Matrix<F>> {
    let mut span = Subspace::new(n * n);
    let mut basis = Vec::new();
    let id = Matrix::identity(n);
    span.insert(id.as_slice());
    basis.push(id);
    let mut frontier = 0;
    while frontier < basis.len() && !span.is_full() {
        let current = basis[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = g.mul(&current);
            if span.insert(next.as_slice()) {
                basis.push(next);
            }
        }
    }
    basis
}

/// The two-sided identity, if one exists.
pub fn unit_element<F: Scalar>(a: &Algebra<F>) -> Option<Vec<F>> {
    let dim = a.dim();
    let mut rows = Vec::with_capacity(2 * dim * dim);
    let mut rhs = Vec::with_capacity(2 * dim * dim);
    for j in 0..dim {
        for k in 0..dim {
            rows.push((0..dim).map(|m| a.structure_constant(m, j, k)).collect::<Vec<F>>());
            rhs.push(if j == k { F::one() } else { F::zero() });
            rows.push((0..dim).map(|m| a.structure_constant(j, m, k)).collect::<Vec<F>>());
            rhs.push(if j == k { F::one() } else { F::zero() });
        }
    }
    Matrix::from_rows(&rows, dim).solve(&rhs)
}

/// Exhaustive check of `(xy)z = x(yz)` on basis triples.
pub fn is_associative<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    timed(|| {
        let dim = a.dim();
        for i in 0..dim {
            for j in 0..dim {
                let ij = crate::algebra::densify(a.product(i, j), dim);
                for k in 0..dim {
                    let l = a.mul_basis_right(&ij, k);
                    let r = a.mul_basis_left(i, &crate::algebra::densify(a.product(j, k), dim));
                    if l != r {
                        let defect = l.into_iter().zip(r).map(|(x, y)| x - y).collect();
                        return Report::fail(
                            "associative",
                            dim.pow(3),
                            Witness {
                                indices: vec![i, j, k],
                                defect,
                                description: format!(
                                    "({}{}){} != {}({}{})",
                                    a.label(i),
                                    a.label(j),
                                    a.label(k),
                                    a.label(i),
                                    a.label(j),
                                    a.label(k)
                                ),
                            },
                        );
                    }
                }
            }
        }
        Report::pass("associative", dim.pow(3))
    })
}

/// Exhaustive check of `xy = (-1)^{|x||y|} yx` on basis pairs.
pub fn is_supercommutative<F: Scalar>(a: &Algebra<F>) -> Report<F> {
    timed(|| {
        let dim = a.dim();
        for i in 0..dim {
            for j in 0..dim {
                let s = F::sign(a.parity(i) & a.parity(j));
                let l = crate::algebra::densify(a.product(i, j), dim);
                let r: Vec<F> = crate::algebra::densify(a.product(j, i), dim).into_iter().map(|c| c * &s).collect();
                if l != r {
                    let defect = l.into_iter().zip(r).map(|(x, y)| x - y).collect();
                    return Report::fail(
                        "supercommutative",
                        dim * dim,
                        Witness {
                            indices: vec![i, j],
                            defect,
                            description: format!("{}{} != (-1)^(|x||y|) {}{}", a.label(i), a.label(j), a.label(j), a.label(i)),
                        },
                    );
                }
            }
        }
        Report::pass("supercommutative", dim * dim)
    })
}

/// Sign and union of Grassmann monomials given as bit masks; `None` if they share a generator.
pub fn grassmann_product(g: u32, h: u32) -> Option<(u8, u32)> {
    if g & h != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = h;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (g >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(((swaps & 1) as u8, g | h))
}

pub(crate) fn grassmann_label(g: u32) -> String {
    (0..32).filter(|b| g >> b & 1 == 1).map(|b| format!("θ{}", b + 1)).collect()
}

/// Grassmann envelope `A_0 ⊗ G_0 + A_1 ⊗ G_1` over `n` odd generators, as an ungraded algebra.
///
/// Basis order: monomials by ascending bit mask, then algebra basis indices
/// of matching parity. Products are `(a⊗g)(b⊗h) = ab ⊗ gh`.
pub fn grassmann_envelope<F: Scalar>(a: &Algebra<F>, n: u32) -> Algebra<F> {
    assert!(n < 16, "too many Grassmann generators");
    let mut basis: Vec<(u32, usize)> = Vec::new();
    for g in 0..(1u32 << n) {
        for m in 0..a.dim() {
            if u32::from(a.parity(m)) == g.count_ones() % 2 {
                basis.push((g, m));
            }
        }
    }
    let position: std::collections::HashMap<(u32, usize), usize> = basis.iter().enumerate().map(|(i, key)| (*key, i)).collect();
    let labels = basis
        .iter()
        .map(|&(g, m)| if g == 0 { a.label(m).to_string() } else { format!("{}⊗{}", a.label(m), grassmann_label(g)) })
        .collect();
    let mut entries = Vec::new();
    for (i, &(g, m)) in basis.iter().enumerate() {
        for (j, &(h, w)) in basis.iter().enumerate() {
            let Some((s, gh)) = grassmann_product(g, h) else { continue };
            for (k, c) in a.product(m, w) {
                let target = position[&(gh, *k)];
                entries.push((i, j, target, if s == 0 { c.clone() } else { -c.clone() }));
            }
        }
    }
    Algebra::from_entries(labels, None, entries).expect("envelope indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::labels;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn dual_numbers() -> Algebra<Q> {
        Algebra::from_entries(labels(&["1", "t"]), None, vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))]).unwrap()
    }

    #[test]
    fn dual_numbers_structure() {
        let a = dual_numbers();
        assert_eq!(unit_element(&a), Some(vec![q(1), q(0)]));
        assert!(is_associative(&a).passed());
        assert!(is_supercommutative(&a).passed());
        assert_eq!(centroid_basis(&a, 0).len(), 2);
        assert_eq!(nucleus(&a).len(), 2);
        let r = is_simple(&a);
        assert!(!r.passed());
        assert_eq!(r.witness.unwrap().indices, vec![1]);
    }

    #[test]
    fn field_is_simple() {
        let a = Algebra::<Q>::from_entries(labels(&["1"]), None, vec![(0, 0, 0, q(1))]).unwrap();
        assert!(is_simple(&a).passed());
    }

    #[test]
    fn grassmann_signs() {
        assert_eq!(grassmann_product(0b01, 0b10), Some((0, 0b11)));
        assert_eq!(grassmann_product(0b10, 0b01), Some((1, 0b11)));
        assert_eq!(grassmann_product(0b01, 0b01), None);
        assert_eq!(grassmann_product(0b110, 0b001), Some((0, 0b111)));
    }

    #[test]
    fn odd_centroid_of_odd_line() {
        // F[θ] with θ odd: left multiplication by θ is an odd centroid element.
        let a = Algebra::<Q>::from_entries(
            labels(&["1", "θ"]),
            Some(vec![0, 1]),
            vec![(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
        )
        .unwrap();
        let odd = centroid_basis(&a, 1);
        assert_eq!(odd.len(), 1);
        assert!(is_in_centroid(&a, &odd[0]));
        assert_eq!(centroid_basis(&a, 0).len(), 1);
    }
}
