//! Representations (bimodules) of Malcev (super)algebras.
//!
//! A representation stores one operator `ρ_x` per basis element of the
//! acting algebra, read as the right action `v·x = ρ_x(v)`. The split null
//! extension `M ⊕ V` turns a representation into an algebra so that the
//! identity checks of [`crate::identities`] apply to modules as well.

use thiserror::Error;

use crate::algebra::{Algebra, OperatorMatrix};
use crate::error::{AlgebraError, Result};
use crate::factorization::Embedding;
use crate::identities::{alpha_raw, verify_h_variety, verify_malcev};
use crate::linalg::{is_zero_vec, Matrix, Subspace};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::structure::enveloping_basis;

/// A (graded) representation `ρ` of `acting` on a carrier of dimension `carrier_parity.len()`.
#[derive(Clone, Debug)]
pub struct Representation<F: Scalar> {
    pub acting: Algebra<F>,
    pub carrier_labels: Vec<String>,
    pub carrier_parity: Vec<u8>,
    /// `action[x]` is `ρ_{e_x}`.
    pub action: Vec<OperatorMatrix<F>>,
}

impl<F: Scalar> Representation<F> {
    /// Validates shapes and that each `ρ_{e_x}` shifts parity by `|e_x|`.
    pub fn new(acting: Algebra<F>, carrier_labels: Vec<String>, carrier_parity: Vec<u8>, action: Vec<Matrix<F>>) -> Result<Self> {
        let n = carrier_parity.len();
        if carrier_labels.len() != n {
            return Err(AlgebraError::DimensionMismatch { expected: n, found: carrier_labels.len() });
        }
        if action.len() != acting.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: acting.dim(), found: action.len() });
        }
        if carrier_parity.iter().any(|&p| p > 1) {
            return Err(AlgebraError::InvalidStructure("carrier parity must be 0 or 1".into()));
        }
        let mut ops = Vec::with_capacity(action.len());
        for (x, m) in action.into_iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: m.rows().max(m.cols()) });
            }
            let op = OperatorMatrix::new(m, acting.parity(x));
            if !op.respects_grading(&carrier_parity) {
                return Err(AlgebraError::InvalidStructure(format!(
                    "action of {} does not shift parity by {}",
                    acting.label(x),
                    acting.parity(x)
                )));
            }
            ops.push(op);
        }
        Ok(Representation { acting, carrier_labels, carrier_parity, action: ops })
    }

    /// `Reg A`: the algebra acting on itself by right multiplication.
    pub fn regular(a: &Algebra<F>) -> Self {
        let action = (0..a.dim()).map(|y| OperatorMatrix::new(a.right_multiplication(&a.basis(y).coeffs), a.parity(y))).collect();
        Representation {
            acting: a.clone(),
            carrier_labels: a.labels().iter().map(|l| format!("{l}'")).collect(),
            carrier_parity: a.parities().to_vec(),
            action,
        }
    }

    /// The zero action on an even space of dimension `dim`.
    pub fn zero(acting: &Algebra<F>, dim: usize) -> Self {
        Representation {
            acting: acting.clone(),
            carrier_labels: (0..dim).map(|i| format!("v{}", i + 1)).collect(),
            carrier_parity: vec![0; dim],
            action: (0..acting.dim()).map(|x| OperatorMatrix::new(Matrix::zeros(dim, dim), acting.parity(x))).collect(),
        }
    }

    /// Same action with the carrier parity flipped (the odd copy `ΠV`).
    pub fn parity_shift(&self) -> Self {
        let mut out = self.clone();
        out.carrier_parity.iter_mut().for_each(|p| *p ^= 1);
        out
    }

    /// `V ⊕ W` with block-diagonal action. The acting algebras must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.acting.dim() != other.acting.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.acting.dim(), found: other.acting.dim() });
        }
        let (n, m) = (self.carrier_dim(), other.carrier_dim());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mat = Matrix::from_fn(n + m, n + m, |r, c| match (r < n, c < n) {
                    (true, true) => a.matrix[(r, c)].clone(),
                    (false, false) => b.matrix[(r - n, c - n)].clone(),
                    _ => F::zero(),
                });
                OperatorMatrix::new(mat, a.parity)
            })
            .collect();
        let mut labels = self.carrier_labels.clone();
        labels.extend(other.carrier_labels.iter().map(|l| format!("{l}#2")));
        let mut parity = self.carrier_parity.clone();
        parity.extend(&other.carrier_parity);
        Ok(Representation { acting: self.acting.clone(), carrier_labels: labels, carrier_parity: parity, action })
    }

    pub fn carrier_dim(&self) -> usize {
        self.carrier_parity.len()
    }

    fn is_graded(&self) -> bool {
        self.acting.is_graded() || self.carrier_parity.contains(&1)
    }

    /// `ρ_x(v)` for an arbitrary element `x` of the acting algebra.
    pub fn act(&self, x: &[F], v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.carrier_dim()];
        for (i, c) in x.iter().enumerate() {
            if c.is_negligible() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.action[i].apply(v)) {
                *o += c.clone() * w;
            }
        }
        out
    }

    fn homogeneous_parts(&self, v: &[F]) -> [Vec<F>; 2] {
        let part = |p: u8| v.iter().zip(&self.carrier_parity).map(|(c, q)| if *q == p { c.clone() } else { F::zero() }).collect();
        [part(0), part(1)]
    }
}

/// The split null extension `E = M ⊕ V` of a representation.
#[derive(Clone, Debug)]
pub struct SplitExtension<F: Scalar> {
    pub rep: Representation<F>,
    /// Basis: that of `M` (indices `0..dim M`), then the carrier (`dim M + i`).
    pub total: Algebra<F>,
}

impl<F: Scalar> SplitExtension<F> {
    pub fn base_dim(&self) -> usize {
        self.rep.acting.dim()
    }

    /// Embeds a carrier vector into `E`.
    pub fn carrier_vector(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.base_dim()];
        out.extend(v.iter().cloned());
        out
    }
}

/// `(x + v)(y + w) = xy + ρ_y(v) - (-1)^{|x||w|} ρ_x(w)`, with `V·V = 0`.
pub fn split_null_extension<F: Scalar>(rep: &Representation<F>) -> Result<SplitExtension<F>> {
    let m = &rep.acting;
    let (n, d) = (m.dim(), rep.carrier_dim());
    let mut labels: Vec<String> = m.labels().to_vec();
    for l in &rep.carrier_labels {
        let mut name = l.clone();
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
    }
    let mut parity: Vec<u8> = m.parities().to_vec();
    parity.extend(&rep.carrier_parity);
    let mut entries: Vec<(usize, usize, usize, F)> = m.entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    for (x, op) in rep.action.iter().enumerate() {
        for w in 0..d {
            for r in 0..d {
                let c = &op.matrix[(r, w)];
                if c.is_negligible() {
                    continue;
                }
                // v_w · e_x = ρ_x(v_w)
                entries.push((n + w, x, n + r, c.clone()));
                // e_x · v_w = -(-1)^{|x||w|} ρ_x(v_w)
                let s = F::sign(1 ^ (m.parity(x) & rep.carrier_parity[w]));
                entries.push((x, n + w, n + r, s * c));
            }
        }
    }
    let graded = rep.is_graded().then_some(parity);
    let total = Algebra::from_entries(labels, graded, entries)?;
    Ok(SplitExtension { rep: rep.clone(), total })
}

/// Checks that `ρ` is a Malcev (super)module by verifying the split null
/// extension; with `require_h` the extension must also lie in the variety H.
pub fn verify_module<F: Scalar>(rep: &Representation<F>, require_h: bool) -> Report<F> {
    let ext = match split_null_extension(rep) {
        Ok(e) => e,
        Err(e) => return Report::error("module", e.to_string()),
    };
    let r = verify_malcev(&ext.total);
    if !r.passed() || !require_h {
        return Report { check: "module".into(), ..r };
    }
    let h = verify_h_variety(&ext.total);
    Report { check: "h-module".into(), ..h }
}

/// `M` as a module over the embedded copy of the 7-dimensional algebra: `ρ_a(m) = m·ι(a)`.
pub fn adjoint_restriction<F: Scalar>(host: &Algebra<F>, emb: &Embedding<F>) -> Result<Representation<F>> {
    let report = crate::factorization::verify_embedding(host, emb);
    if !report.passed() {
        return Err(AlgebraError::InvalidStructure(format!(
            "invalid embedding: {}",
            report.witness.map(|w| w.description).unwrap_or_default()
        )));
    }
    let action = emb.images.iter().map(|img| host.right_multiplication(img)).collect();
    Representation::new(emb.source.clone(), host.labels().to_vec(), host.parities().to_vec(), action)
}

/// Smallest graded `ρ`-invariant subspace containing `v`.
pub fn submodule_generated<F: Scalar>(rep: &Representation<F>, v: &[F]) -> Subspace<F> {
    let mut span = Subspace::new(rep.carrier_dim());
    let mut queue = Vec::new();
    for part in rep.homogeneous_parts(v) {
        if span.insert(&part) {
            queue.push(part);
        }
    }
    while let Some(w) = queue.pop() {
        for op in &rep.action {
            let image = op.apply(&w);
            if span.insert(&image) {
                queue.push(image);
            }
        }
        if span.is_full() {
            break;
        }
    }
    span
}

/// Outcome of the irreducibility analysis.
#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility<F> {
    Irreducible,
    /// A proper nonzero invariant subspace (basis), or an empty list for `ρ = 0`.
    Reducible(Vec<Vec<F>>),
    /// Every basis vector generates the carrier but no decisive test applied.
    Undecided,
}

/// Irreducibility test.
///
/// A basis vector generating a proper submodule proves reducibility. If
/// every basis vector generates the whole carrier, the enveloping algebra
/// is computed: full matrix algebra means irreducible (Burnside); otherwise
/// a Norton test is attempted with an element of nullity one. Carriers where
/// no such element is found are reported [`Irreducibility::Undecided`].
pub fn irreducibility<F: Scalar>(rep: &Representation<F>) -> Irreducibility<F> {
    let n = rep.carrier_dim();
    if n == 0 || rep.action.iter().all(OperatorMatrix::is_zero) {
        return Irreducibility::Reducible(Vec::new());
    }
    for i in 0..n {
        let sub = submodule_generated(rep, &crate::algebra::Element::basis(n, i).coeffs);
        if !sub.is_full() {
            return Irreducibility::Reducible(sub.basis());
        }
    }
    let mut gens: Vec<Matrix<F>> = rep.action.iter().map(|op| op.matrix.clone()).collect();
    if rep.is_graded() {
        gens.push(Matrix::from_fn(n, n, |r, c| if r == c { F::sign(rep.carrier_parity[r]) } else { F::zero() }));
    }
    let env = enveloping_basis(&gens, n);
    if env.len() == n * n {
        return Irreducibility::Irreducible;
    }
    norton(&gens, &env, n)
}

fn closure_span<F: Scalar>(gens: &[Matrix<F>], v: &[F], n: usize) -> Subspace<F> {
    let mut span = Subspace::new(n);
    let mut queue = vec![v.to_vec()];
    span.insert(v);
    while let Some(w) = queue.pop() {
        for g in gens {
            let img = g.mul_vec(&w);
            if span.insert(&img) {
                queue.push(img);
            }
        }
    }
    span
}

// Norton's test: for `a` in the enveloping algebra with one-dimensional
// kernel spanned by `v`, and `w` spanning the kernel of `aᵀ`, the module is
// irreducible iff `v` generates it and `w` generates the dual.
fn norton<F: Scalar>(gens: &[Matrix<F>], env: &[Matrix<F>], n: usize) -> Irreducibility<F> {
    let transposed: Vec<Matrix<F>> = gens.iter().map(Matrix::transpose).collect();
    let id = Matrix::identity(n);
    let mut candidates: Vec<Matrix<F>> = Vec::new();
    for b in env {
        for c in -4i64..=4 {
            candidates.push(b.sub(&id.scale(&F::from_int(c))));
        }
    }
    for w in env.windows(2) {
        candidates.push(w[0].add(&w[1]));
    }
    for a in candidates {
        let kernel = a.kernel();
        if kernel.len() != 1 {
            continue;
        }
        let forward = closure_span(gens, &kernel[0], n);
        if !forward.is_full() {
            return Irreducibility::Reducible(forward.basis());
        }
        let cokernel = a.transpose().kernel();
        let backward = closure_span(&transposed, &cokernel[0], n);
        if !backward.is_full() {
            // the annihilator of an invariant subspace of the dual is invariant
            return Irreducibility::Reducible(backward.orthogonal_kernel());
        }
        return Irreducibility::Irreducible;
    }
    Irreducibility::Undecided
}

/// True unless a proper submodule (or `ρ = 0`) is found; see [`irreducibility`]
/// for the undecided case, which counts as irreducible here.
pub fn is_irreducible<F: Scalar>(rep: &Representation<F>) -> bool {
    !matches!(irreducibility(rep), Irreducibility::Reducible(_))
}

/// Basis of the largest ideal of the acting algebra contained in `ker ρ`.
pub fn kernel_ideal<F: Scalar>(rep: &Representation<F>) -> Vec<Vec<F>> {
    let a = &rep.acting;
    let dim = a.dim();
    let flat: Vec<Vec<F>> = rep.action.iter().map(OperatorMatrix::flatten).collect();
    let rows = rep.carrier_dim() * rep.carrier_dim();
    let mut current: Vec<Vec<F>> =
        if rows == 0 { (0..dim).map(|i| a.basis(i).coeffs).collect() } else { Matrix::from_columns(rows, &flat).kernel() };
    loop {
        if current.is_empty() {
            return current;
        }
        let space = Subspace::spanned_by(dim, current.iter());
        let mut columns: Vec<Vec<F>> = vec![Vec::new(); current.len()];
        for (k, b) in current.iter().enumerate() {
            for i in 0..dim {
                columns[k].extend(space.reduce(&a.mul_basis_right(b, i)));
                columns[k].extend(space.reduce(&a.mul_basis_left(i, b)));
            }
        }
        let coeffs = Matrix::from_columns(2 * dim * dim, &columns).kernel();
        if coeffs.len() == current.len() {
            return current;
        }
        current = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); dim];
                for (ck, b) in c.iter().zip(&current) {
                    for (o, x) in v.iter_mut().zip(b) {
                        *o += ck.clone() * x;
                    }
                }
                v
            })
            .collect();
    }
}

/// `ker ρ` contains no nonzero ideal.
pub fn almost_faithful<F: Scalar>(rep: &Representation<F>) -> bool {
    kernel_ideal(rep).is_empty()
}

/// Graded basis of the supercentralizer: `φ ρ_x = (-1)^{|φ||x|} ρ_x φ`.
/// Returns the even part followed by the odd part.
pub fn centralizer_basis<F: Scalar>(rep: &Representation<F>) -> Vec<OperatorMatrix<F>> {
    let mut out = centralizer_of_parity(rep, 0);
    if rep.is_graded() {
        out.extend(centralizer_of_parity(rep, 1));
    }
    out
}

fn centralizer_of_parity<F: Scalar>(rep: &Representation<F>, parity: u8) -> Vec<OperatorMatrix<F>> {
    let n = rep.carrier_dim();
    let p = &rep.carrier_parity;
    let mut index = vec![usize::MAX; n * n];
    let mut count = 0;
    for k in 0..n {
        for l in 0..n {
            if p[k] == p[l] ^ parity {
                index[k * n + l] = count;
                count += 1;
            }
        }
    }
    if count == 0 {
        return Vec::new();
    }
    let mut equations = Subspace::new(count);
    for (x, op) in rep.action.iter().enumerate() {
        let s = F::sign(parity & rep.acting.parity(x));
        let r = &op.matrix;
        for k in 0..n {
            for m in 0..n {
                // (φ ρ_x - s ρ_x φ)[k][m]
                let mut eq = vec![F::zero(); count];
                for l in 0..n {
                    let u = index[k * n + l];
                    if u != usize::MAX && !r[(l, m)].is_negligible() {
                        eq[u] += &r[(l, m)];
                    }
                    let u = index[l * n + m];
                    if u != usize::MAX && !r[(k, l)].is_negligible() {
                        eq[u] -= s.clone() * &r[(k, l)];
                    }
                }
                if !is_zero_vec(&eq) {
                    equations.insert(&eq);
                }
            }
        }
    }
    equations
        .orthogonal_kernel()
        .into_iter()
        .map(|sol| {
            let m = Matrix::from_fn(n, n, |k, l| {
                let u = index[k * n + l];
                if u == usize::MAX {
                    F::zero()
                } else {
                    sol[u].clone()
                }
            });
            OperatorMatrix::new(m, parity)
        })
        .collect()
}

/// Diagnostic: every supercentralizer basis element, and every sum of two of
/// them, is bijective. Expected to pass on irreducible almost-faithful carriers.
pub fn centralizer_diagnostic<F: Scalar>(rep: &Representation<F>) -> Report<F> {
    let basis = centralizer_basis(rep);
    let mut checked = 0;
    let n = rep.carrier_dim();
    let singular = |m: &Matrix<F>| m.rank() < n;
    for (i, b) in basis.iter().enumerate() {
        checked += 1;
        if singular(&b.matrix) {
            return Report::fail(
                "centralizer-bijective",
                checked,
                crate::report::Witness {
                    indices: vec![i],
                    defect: b.flatten(),
                    description: format!("basis operator {i} is singular"),
                },
            );
        }
        for (j, c) in basis.iter().enumerate().skip(i + 1) {
            if b.parity != c.parity {
                continue;
            }
            checked += 1;
            let sum = b.matrix.add(&c.matrix);
            if singular(&sum) {
                return Report::fail(
                    "centralizer-bijective",
                    checked,
                    crate::report::Witness {
                        indices: vec![i, j],
                        defect: sum.as_slice().to_vec(),
                        description: format!("sum of basis operators {i} and {j} is singular"),
                    },
                );
            }
        }
    }
    Report::pass("centralizer-bijective", checked)
}

/// Errors from [`decompose_into_irreducibles`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError<F: Scalar> {
    #[error("carrier vector annihilated by the acting algebra: {witness:?}")]
    HypothesisViolated { witness: Vec<F> },
    #[error("alpha operators span only {found} of {carrier} dimensions; the rest is a Lie component")]
    LieComponent { found: usize, carrier: usize },
    #[error("carrier is not a module: {0}")]
    NotAModule(String),
    #[error("component {component} does not intertwine the action of basis element {x}")]
    Intertwining { component: usize, x: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One summand `{zα : z ∈ 𝕄}` of the decomposition.
#[derive(Clone, Debug)]
pub struct Component<F: Scalar> {
    /// `(carrier index v, a, b)` with `α = α(v, e_a, e_b)` computed in the split extension.
    pub witness: (usize, usize, usize),
    pub alpha: OperatorMatrix<F>,
    pub parity: u8,
    /// Carrier coordinates of `e_z α` for `z = 0..dim 𝕄`: the isomorphism `Reg 𝕄 → component`.
    pub images: Vec<Vec<F>>,
}

/// A complete decomposition into copies of `Reg 𝕄`.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Scalar> {
    pub components: Vec<Component<F>>,
    /// Columns are the component images in order; `P⁻¹ ρ_x P` is block diagonal.
    pub change_of_basis: Matrix<F>,
}

/// Splits a module over the 7-dimensional simple algebra into copies of the
/// regular module using the operators `α(v, a, b)` of the split extension.
///
/// Candidates are tried in lexicographic order of (carrier index, pair
/// `a < b`); a candidate is kept when its image adds `dim 𝕄` to the span.
pub fn decompose_into_irreducibles<F: Scalar>(
    rep: &Representation<F>,
) -> std::result::Result<Decomposition<F>, DecomposeError<F>> {
    let m = &rep.acting;
    let (k, n) = (m.dim(), rep.carrier_dim());
    let stacked: Vec<Vec<F>> =
        (0..k).flat_map(|x| (0..n).map(move |r| (x, r))).map(|(x, r)| rep.action[x].matrix.row(r).to_vec()).collect();
    if n > 0 {
        let kernel = Matrix::from_rows(&stacked, n).kernel();
        if let Some(v) = kernel.first() {
            let [even, odd] = rep.homogeneous_parts(v);
            let witness = if is_zero_vec(&even) { odd } else { even };
            return Err(DecomposeError::HypothesisViolated { witness });
        }
    }
    let module = verify_module(rep, false);
    if !module.passed() {
        let why = module.witness.map(|w| w.description).unwrap_or_else(|| module.notes.join("; "));
        return Err(DecomposeError::NotAModule(why));
    }
    let ext = split_null_extension(rep)?;
    let e = &ext.total;
    let basis = |i: usize| e.basis(i).coeffs;
    let mut span = Subspace::new(n);
    let mut components = Vec::new();
    'search: for v in 0..n {
        for a in 0..k {
            for b in a + 1..k {
                if span.is_full() {
                    break 'search;
                }
                let alpha = alpha_raw(e, (&basis(k + v), e.parity(k + v)), (&basis(a), e.parity(a)), (&basis(b), e.parity(b)));
                let images: Vec<Vec<F>> = (0..k).map(|z| alpha.apply(&basis(z))[k..].to_vec()).collect();
                let mut trial = span.clone();
                if images.iter().filter(|w| trial.insert(w)).count() == k {
                    span = trial;
                    components.push(Component { witness: (v, a, b), parity: rep.carrier_parity[v], alpha, images });
                }
            }
        }
    }
    if !span.is_full() {
        return Err(DecomposeError::LieComponent { found: span.dim(), carrier: n });
    }
    let columns: Vec<Vec<F>> = components.iter().flat_map(|c| c.images.iter().cloned()).collect();
    let change_of_basis = Matrix::from_columns(n, &columns);
    // ρ_x(zα) = (zx)α: the action on each component is the regular action.
    for (ci, c) in components.iter().enumerate() {
        for x in 0..k {
            for z in 0..k {
                let lhs = rep.action[x].apply(&c.images[z]);
                let mut rhs = vec![F::zero(); n];
                for (w, coef) in m.product(z, x) {
                    for (r, val) in rhs.iter_mut().zip(&c.images[*w]) {
                        *r += coef.clone() * val;
                    }
                }
                if lhs != rhs {
                    return Err(DecomposeError::Intertwining { component: ci, x });
                }
            }
        }
    }
    Ok(Decomposition { components, change_of_basis })
}
