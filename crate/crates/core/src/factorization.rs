//! Kronecker factorization `M ≅ 𝕄 ⊗ U` and the coordinatization functor
//! taking `U`-modules to `M7(U)`-modules.

use thiserror::Error;

use crate::algebra::{Algebra, OperatorMatrix};
use crate::cayley_dickson::{build_m7, build_m7_over, tensor_unchecked, M7Variant};
use crate::error::AlgebraError;
use crate::identities::{alpha_raw, verify_malcev};
use crate::linalg::{coordinates, is_zero_vec, Matrix, Subspace};
use crate::module_theory::Representation;
use crate::report::{timed, Report, Witness};
use crate::scalar::Scalar;
use crate::structure::{is_associative, is_supercommutative, unit_element};

/// A copy of the 7-dimensional simple algebra inside a host algebra.
#[derive(Clone, Debug)]
pub struct Embedding<F: Scalar> {
    pub variant: M7Variant,
    pub gamma: F,
    /// The source algebra, built from `variant` and `gamma`.
    pub source: Algebra<F>,
    /// `images[a]` is `ι(e_a)` in host coordinates.
    pub images: Vec<Vec<F>>,
}

impl<F: Scalar> Embedding<F> {
    pub fn new(variant: M7Variant, gamma: F, images: Vec<Vec<F>>) -> Result<Self, AlgebraError> {
        let source = build_m7(variant, &gamma)?;
        if images.len() != source.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: source.dim(), found: images.len() });
        }
        Ok(Embedding { variant, gamma, source, images })
    }

    /// `a ↦ a ⊗ 1` into `tensor_with_coordinates(𝕄, u)`.
    pub fn into_tensor(variant: M7Variant, gamma: F, u: &Algebra<F>) -> Result<Self, AlgebraError> {
        let unit = unit_element(u).ok_or_else(|| AlgebraError::CoordinateAlgebra("no unit element".into()))?;
        let n = 7 * u.dim();
        let images = (0..7)
            .map(|a| {
                let mut v = vec![F::zero(); n];
                for (w, c) in unit.iter().enumerate() {
                    v[w * 7 + a] = c.clone();
                }
                v
            })
            .collect();
        Self::new(variant, gamma, images)
    }

    /// The identity embedding of the 7-dimensional algebra into itself.
    pub fn identity(variant: M7Variant, gamma: F) -> Result<Self, AlgebraError> {
        let images = (0..7).map(|a| crate::algebra::Element::basis(7, a).coeffs).collect();
        Self::new(variant, gamma, images)
    }
}

/// Checks independence, evenness and all products `ι(e_a)ι(e_b) = ι(e_a e_b)`.
pub fn verify_embedding<F: Scalar>(host: &Algebra<F>, emb: &Embedding<F>) -> Report<F> {
    timed(|| {
        let n = host.dim();
        let k = emb.source.dim();
        if emb.images.len() != k || emb.images.iter().any(|v| v.len() != n) {
            return Report::error("embedding", "image count or length does not match the algebras");
        }
        for (a, img) in emb.images.iter().enumerate() {
            if host.parity_of(img) != Some(0) {
                return Report::fail(
                    "embedding",
                    a + 1,
                    Witness {
                        indices: vec![a],
                        defect: img.clone(),
                        description: format!("image of {} is not even", emb.source.label(a)),
                    },
                );
            }
        }
        if Matrix::from_columns(n, &emb.images).rank() < k {
            return Report::fail(
                "embedding",
                k,
                Witness { indices: vec![], defect: vec![], description: "images are linearly dependent".into() },
            );
        }
        for a in 0..k {
            for b in 0..k {
                let lhs = host.mul(&emb.images[a], &emb.images[b]);
                let mut rhs = vec![F::zero(); n];
                for (c, coef) in emb.source.product(a, b) {
                    for (r, x) in rhs.iter_mut().zip(&emb.images[*c]) {
                        *r += coef.clone() * x;
                    }
                }
                if lhs != rhs {
                    let defect = lhs.into_iter().zip(rhs).map(|(x, y)| x - y).collect();
                    return Report::fail(
                        "embedding",
                        a * k + b + 1,
                        Witness {
                            indices: vec![a, b],
                            defect,
                            description: format!(
                                "ι({})ι({}) != ι({}{})",
                                emb.source.label(a),
                                emb.source.label(b),
                                emb.source.label(a),
                                emb.source.label(b)
                            ),
                        },
                    );
                }
            }
        }
        Report::pass("embedding", k * k)
    })
}

/// The map `m ↦ (m ι(e_1), …, m ι(e_7))` must be injective; on failure the
/// witness is a nonzero homogeneous element annihilating the embedded copy.
pub fn check_annihilator_hypothesis<F: Scalar>(host: &Algebra<F>, emb: &Embedding<F>) -> Report<F> {
    timed(|| {
        let n = host.dim();
        let mut rows = Vec::with_capacity(n * emb.images.len());
        for img in &emb.images {
            let r = host.right_multiplication(img);
            for i in 0..n {
                rows.push(r.row(i).to_vec());
            }
        }
        let kernel = Matrix::from_rows(&rows, n).kernel();
        match kernel.first() {
            None => Report::pass("annihilator", n),
            Some(v) => {
                let [even, odd] = host.homogeneous_parts(v);
                let defect = if is_zero_vec(&even) { odd } else { even };
                let description = format!(
                    "{} annihilates the embedded algebra",
                    crate::algebra::Element::new(defect.clone()).display(host.labels())
                );
                let indices = (0..n).filter(|&i| !defect[i].is_negligible()).collect();
                Report::fail("annihilator", n, Witness { indices, defect, description })
            }
        }
    })
}

/// Reasons the factorization engine stops. Each names the offending basis indices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorizationError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("operator {generator} is not in the supercentroid (fails on basis pair ({i}, {j}))")]
    CentroidViolation { generator: usize, i: usize, j: usize },
    #[error("composition of operators {i} and {j} leaves the operator span")]
    NotClosed { i: usize, j: usize },
    #[error("operators {i} and {j} do not supercommute")]
    NotSupercommutative { i: usize, j: usize },
    #[error("operator table is not associative at ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("dimension {host} is not 7 x {coordinates}")]
    DimensionMismatch { host: usize, coordinates: usize },
    #[error("map onto the host is not an isomorphism (basis pair ({i}, {j}))")]
    IsoCheckFailed { i: usize, j: usize },
    #[error("recovered coordinate algebra differs from the expected one: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Output of [`kronecker_factorize`].
#[derive(Clone, Debug)]
pub struct FactorizationResult<F: Scalar> {
    /// Coordinate algebra on the operator basis; `u` labels are `1, u2, u3, …`.
    pub u: Algebra<F>,
    /// Operator basis: identity first, then the kept `α(v, a, b)`.
    pub operators: Vec<OperatorMatrix<F>>,
    /// `(v, a, b)` for each operator after the identity.
    pub witnesses: Vec<(usize, usize, usize)>,
    /// `Φ`: column `u * 7 + a` is `ι(e_a) α_u`.
    pub iso: Matrix<F>,
    /// The tensor product `𝕄 ⊗ U` that `Φ` maps isomorphically onto the host.
    pub tensor: Algebra<F>,
}

fn centroid_defect<F: Scalar>(a: &Algebra<F>, op: &OperatorMatrix<F>) -> Option<(usize, usize)> {
    let dim = a.dim();
    let images: Vec<Vec<F>> = (0..dim).map(|i| op.matrix.column(i)).collect();
    for i in 0..dim {
        for j in 0..dim {
            let s = F::sign(op.parity & a.parity(j));
            let lhs = op.apply(&crate::algebra::densify(a.product(i, j), dim));
            if lhs != a.mul_basis_left(i, &images[j]) {
                return Some((i, j));
            }
            let right: Vec<F> = a.mul_basis_right(&images[i], j).into_iter().map(|c| c * &s).collect();
            if lhs != right {
                return Some((i, j));
            }
        }
    }
    None
}

/// Recovers `U` with `M ≅ 𝕄 ⊗ U` from a host algebra and an embedding of `𝕄`.
///
/// `U` is the operator span of the identity and all `α(e_v, ι(e_a), ι(e_b))`
/// (`v` over the host basis, `a < b`). Every step is verified: centroid
/// membership, closure, supercommutativity, associativity, freeness of the
/// map `Φ(a ⊗ u) = ι(a)u`, and that `Φ` is multiplicative on all basis pairs.
pub fn kronecker_factorize<F: Scalar>(
    host: &Algebra<F>,
    emb: &Embedding<F>,
) -> Result<FactorizationResult<F>, FactorizationError> {
    let hyp = |r: Report<F>| -> Result<(), FactorizationError> {
        if r.passed() {
            Ok(())
        } else {
            let detail = r.witness.map(|w| w.description).unwrap_or_else(|| r.notes.join("; "));
            Err(FactorizationError::HypothesisViolated(format!("{}: {}", r.check, detail)))
        }
    };
    hyp(verify_embedding(host, emb))?;
    hyp(check_annihilator_hypothesis(host, emb))?;
    hyp(verify_malcev(host))?;

    let n = host.dim();
    let k = emb.source.dim();
    let mut span = Subspace::new(n * n);
    let mut operators = vec![OperatorMatrix::identity(n)];
    span.insert(operators[0].flatten().as_slice());
    let mut witnesses = Vec::new();
    for v in 0..n {
        let ev = host.basis(v).coeffs;
        for a in 0..k {
            for b in a + 1..k {
                let alpha = alpha_raw(host, (&ev, host.parity(v)), (&emb.images[a], 0), (&emb.images[b], 0));
                if alpha.is_zero() {
                    continue;
                }
                // dependent generators lie in the span, so the checks below cover them
                if span.insert(&alpha.flatten()) {
                    operators.push(alpha);
                    witnesses.push((v, a, b));
                }
            }
        }
    }
    for (g, op) in operators.iter().enumerate() {
        if let Some((i, j)) = centroid_defect(host, op) {
            return Err(FactorizationError::CentroidViolation { generator: g, i, j });
        }
    }
    let d = operators.len();
    let flat: Vec<Vec<F>> = operators.iter().map(OperatorMatrix::flatten).collect();
    let mut table: Vec<Vec<Vec<F>>> = vec![Vec::with_capacity(d); d];
    for i in 0..d {
        for j in 0..d {
            let comp = operators[i].then(&operators[j]);
            let c = coordinates(&flat, &comp.flatten()).ok_or(FactorizationError::NotClosed { i, j })?;
            table[i].push(c);
        }
    }
    let parity: Vec<u8> = operators.iter().map(|o| o.parity).collect();
    for i in 0..d {
        for j in 0..d {
            let s = F::sign(parity[i] & parity[j]);
            if table[i][j].iter().zip(&table[j][i]).any(|(x, y)| x.clone() != s.clone() * y) {
                return Err(FactorizationError::NotSupercommutative { i, j });
            }
        }
    }
    let names: Vec<String> = (0..d).map(|i| if i == 0 { "1".to_string() } else { format!("u{}", i + 1) }).collect();
    let graded = host.is_graded().then(|| parity.clone());
    let u = Algebra::from_fn(names, graded, |i, j| table[i][j].clone())?;
    if let Some(w) = is_associative(&u).witness {
        return Err(FactorizationError::NotAssociative { i: w.indices[0], j: w.indices[1], k: w.indices[2] });
    }
    if n != k * d {
        return Err(FactorizationError::DimensionMismatch { host: n, coordinates: d });
    }
    let columns: Vec<Vec<F>> =
        (0..d).flat_map(|w| (0..k).map(move |a| (w, a))).map(|(w, a)| operators[w].apply(&emb.images[a])).collect();
    let iso = Matrix::from_columns(n, &columns);
    if iso.rank() < n {
        return Err(FactorizationError::IsoCheckFailed { i: 0, j: 0 });
    }
    let tensor = tensor_unchecked(&emb.source, &u);
    for i in 0..n {
        for j in 0..n {
            let lhs = iso.mul_vec(&crate::algebra::densify(tensor.product(i, j), n));
            let rhs = host.mul(&columns[i], &columns[j]);
            if lhs != rhs {
                return Err(FactorizationError::IsoCheckFailed { i, j });
            }
        }
    }
    Ok(FactorizationResult { u, operators, witnesses, iso, tensor })
}

impl<F: Scalar> FactorizationResult<F> {
    pub fn dim_u(&self) -> usize {
        self.operators.len()
    }

    /// Dimensions of the even and odd parts of `U`.
    pub fn graded_dims(&self) -> (usize, usize) {
        let odd = self.operators.iter().filter(|o| o.parity == 1).count();
        (self.operators.len() - odd, odd)
    }

    /// For a host of the form `𝕄 ⊗ expected` with the canonical embedding,
    /// expresses each recovered operator in the basis of right
    /// multiplications `R_{u_k}` and checks that this is a unital algebra
    /// isomorphism onto `expected`. Returns the matrix whose column `i` holds
    /// the coordinates of operator `i` in `expected`.
    pub fn canonical_comparison(&self, expected: &Algebra<F>) -> Result<Matrix<F>, FactorizationError> {
        let m = expected.dim();
        let n = 7 * m;
        if self.dim_u() != m {
            return Err(FactorizationError::Mismatch(format!("dimension {} versus {}", self.dim_u(), m)));
        }
        let canonical: Vec<Vec<F>> = (0..m)
            .map(|k| {
                let mut r = Matrix::zeros(n, n);
                for w in 0..m {
                    for (w2, c) in expected.product(w, k) {
                        for a in 0..7 {
                            r[(w2 * 7 + a, w * 7 + a)] = c.clone();
                        }
                    }
                }
                r.as_slice().to_vec()
            })
            .collect();
        let mut cols = Vec::with_capacity(m);
        for (i, op) in self.operators.iter().enumerate() {
            let c = coordinates(&canonical, &op.flatten())
                .ok_or_else(|| FactorizationError::Mismatch(format!("operator {i} is not a right multiplication")))?;
            if expected.parity_of(&c) != Some(op.parity) {
                return Err(FactorizationError::Mismatch(format!("operator {i} has the wrong parity")));
            }
            cols.push(c);
        }
        let map = Matrix::from_columns(m, &cols);
        if map.rank() < m {
            return Err(FactorizationError::Mismatch("coordinate map is singular".into()));
        }
        if Some(cols[0].clone()) != unit_element(expected) {
            return Err(FactorizationError::Mismatch("identity operator does not map to the unit".into()));
        }
        for i in 0..m {
            for j in 0..m {
                let lhs = map.mul_vec(&crate::algebra::densify(self.u.product(i, j), m));
                let rhs = expected.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(FactorizationError::Mismatch(format!(
                        "products of {} and {} differ",
                        self.u.label(i),
                        self.u.label(j)
                    )));
                }
            }
        }
        Ok(map)
    }
}

/// Result of [`coordinatize_module`].
#[derive(Clone, Debug)]
pub struct Coordinatized<F: Scalar> {
    /// `M7(E)` for `E = U ⊕ W`; the first `7 dim U` basis vectors span `M7(U)`.
    pub ambient: Algebra<F>,
    pub m7u: Algebra<F>,
    /// `V = M7(W)` as a module over `M7(U)`: `ρ_x(v) = v x`.
    pub module: Representation<F>,
}

/// Builds `T(W)`: the `M7(U)`-module `M7(W)` inside `M7(U ⊕ W)`, where
/// `U ⊕ W` is the commutative split null extension of the `U`-module `W`.
pub fn coordinatize_module<F: Scalar>(u: &Algebra<F>, w: &Representation<F>) -> Result<Coordinatized<F>, AlgebraError> {
    if u.is_graded() || w.carrier_parity.contains(&1) {
        return Err(AlgebraError::ModuleHypothesis("graded coordinate data is not supported".into()));
    }
    let unit = unit_element(u).ok_or_else(|| AlgebraError::CoordinateAlgebra("no unit element".into()))?;
    let (m, d) = (u.dim(), w.carrier_dim());
    if w.acting.dim() != m {
        return Err(AlgebraError::DimensionMismatch { expected: m, found: w.acting.dim() });
    }
    if d == 0 {
        return Err(AlgebraError::ModuleHypothesis("the zero module".into()));
    }
    let id = Matrix::<F>::identity(d);
    let mut unit_action = Matrix::zeros(d, d);
    for (x, c) in unit.iter().enumerate() {
        unit_action = unit_action.add(&w.action[x].matrix.scale(c));
    }
    if unit_action != id {
        return Err(AlgebraError::ModuleHypothesis("the unit does not act as the identity".into()));
    }
    let stacked: Vec<Vec<F>> = w.action.iter().flat_map(|op| (0..d).map(move |r| op.matrix.row(r).to_vec())).collect();
    if let Some(v) = Matrix::from_rows(&stacked, d).kernel().first() {
        return Err(AlgebraError::ModuleHypothesis(format!("vector {v:?} is annihilated by U")));
    }
    let mut labels: Vec<String> = u.labels().to_vec();
    labels.extend(w.carrier_labels.iter().cloned());
    let mut entries: Vec<(usize, usize, usize, F)> = u.entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    for (x, op) in w.action.iter().enumerate() {
        for c in 0..d {
            for r in 0..d {
                let coef = &op.matrix[(r, c)];
                if !coef.is_negligible() {
                    entries.push((m + c, x, m + r, coef.clone()));
                    entries.push((x, m + c, m + r, coef.clone()));
                }
            }
        }
    }
    let e = Algebra::from_entries(labels, None, entries)?;
    if !is_associative(&e).passed() || !is_supercommutative(&e).passed() {
        return Err(AlgebraError::ModuleHypothesis("U ⊕ W is not commutative and associative".into()));
    }
    let ambient = build_m7_over(M7Variant::Split, &F::one(), &e)?;
    let k = 7 * m;
    let total = ambient.dim();
    for i in 0..total {
        for j in 0..total {
            let bad = ambient.product(i, j).iter().any(|(t, _)| match (i < k, j < k) {
                (true, true) => *t >= k,
                (false, false) => true,
                _ => *t < k,
            });
            if bad {
                return Err(AlgebraError::InvalidStructure(format!(
                    "M7(E) is not the split null extension of M7(U) at ({i}, {j})"
                )));
            }
        }
    }
    let m7u = Algebra::from_fn(ambient.labels()[..k].to_vec(), None, |i, j| {
        crate::algebra::densify(ambient.product(i, j), total)[..k].to_vec()
    })?;
    let action =
        (0..k).map(|x| Matrix::from_fn(total - k, total - k, |r, c| ambient.structure_constant(k + c, x, k + r))).collect();
    let module = Representation::new(m7u.clone(), ambient.labels()[k..].to_vec(), vec![0; total - k], action)?;
    Ok(Coordinatized { ambient, m7u, module })
}
