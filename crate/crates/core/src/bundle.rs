//! JSON documents for algebras, modules, forms, involutions and embeddings,
//! plus line-delimited report records.
//!
//! Coefficients are strings holding exact rationals (`"n"` or `"p/q"`).
//! [`to_canonical_string`] sorts every sparse list and drops zeros, so
//! writing a bundle that was read back is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;
use crate::cayley_dickson::M7Variant;
use crate::factorization::Embedding;
use crate::involution::BilinearForm;
use crate::linalg::Matrix;
use crate::module_theory::Representation;
use crate::report::Report;
use crate::scalar::{format_rational, parse_rational};
use crate::Q;

pub const FORMAT: &str = "malcev-bundle/1";

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid bundle at `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> BundleError {
    BundleError::Invalid { field: field.into(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleKind {
    Algebra,
    Module,
}

impl BundleKind {
    fn as_str(self) -> &'static str {
        match self {
            BundleKind::Algebra => "algebra",
            BundleKind::Module => "module",
        }
    }
}

/// `rows[a]` is the image of the `a`-th basis element of the 7-dimensional algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSpec {
    pub variant: M7Variant,
    pub gamma: Q,
    pub rows: Vec<Vec<Q>>,
}

/// In-memory form of a bundle document.
///
/// For `Algebra` bundles `entries` holds `(i, j, k, c)`: `c` is the
/// coefficient of `e_k` in `e_i e_j`. For `Module` bundles it holds
/// `(x, row, col, c)`: entry `(row, col)` of the matrix of `ρ_{e_x}` on the
/// carrier, whose acting algebra has dimension `acting_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraBundle {
    pub kind: BundleKind,
    pub labels: Vec<String>,
    pub parity: Option<Vec<u8>>,
    pub gamma: Option<Q>,
    pub acting_dim: Option<usize>,
    pub entries: BTreeMap<(usize, usize, usize), Q>,
    pub form: Option<Matrix<Q>>,
    pub involution: Option<Matrix<Q>>,
    pub embedding: Option<EmbeddingSpec>,
}

impl AlgebraBundle {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn from_algebra(a: &Algebra<Q>) -> Self {
        let entries = a.entries().filter(|e| !e.3.is_zero()).map(|(i, j, k, c)| ((i, j, k), c.clone())).collect();
        AlgebraBundle {
            kind: BundleKind::Algebra,
            labels: a.labels().to_vec(),
            parity: a.is_graded().then(|| a.parities().to_vec()),
            gamma: None,
            acting_dim: None,
            entries,
            form: None,
            involution: None,
            embedding: None,
        }
    }

    pub fn from_representation(rep: &Representation<Q>) -> Self {
        let mut entries = BTreeMap::new();
        for (x, op) in rep.action.iter().enumerate() {
            let n = op.dim();
            for r in 0..n {
                for c in 0..n {
                    let v = &op.matrix[(r, c)];
                    if !v.is_zero() {
                        entries.insert((x, r, c), v.clone());
                    }
                }
            }
        }
        AlgebraBundle {
            kind: BundleKind::Module,
            labels: rep.carrier_labels.clone(),
            parity: rep.carrier_parity.contains(&1).then(|| rep.carrier_parity.clone()),
            gamma: None,
            acting_dim: Some(rep.acting.dim()),
            entries,
            form: None,
            involution: None,
            embedding: None,
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra<Q>, BundleError> {
        if self.kind != BundleKind::Algebra {
            return Err(invalid("kind", "expected an algebra bundle"));
        }
        let entries = self.entries.iter().map(|(&(i, j, k), c)| (i, j, k, c.clone()));
        Algebra::from_entries(self.labels.clone(), self.parity.clone(), entries).map_err(|e| invalid("table", e.to_string()))
    }

    /// The module described by this bundle, acting through `acting`.
    pub fn to_representation(&self, acting: &Algebra<Q>) -> Result<Representation<Q>, BundleError> {
        if self.kind != BundleKind::Module {
            return Err(invalid("kind", "expected a module bundle"));
        }
        if self.acting_dim != Some(acting.dim()) {
            return Err(invalid(
                "acting_dim",
                format!("module acts through dimension {:?}, algebra has {}", self.acting_dim, acting.dim()),
            ));
        }
        let n = self.dim();
        let mut action = vec![Matrix::zeros(n, n); acting.dim()];
        for (&(x, r, c), v) in &self.entries {
            action[x][(r, c)] = v.clone();
        }
        let parity = self.parity.clone().unwrap_or_else(|| vec![0; n]);
        Representation::new(acting.clone(), self.labels.clone(), parity, action).map_err(|e| invalid("action", e.to_string()))
    }

    pub fn to_embedding(&self) -> Result<Embedding<Q>, BundleError> {
        let spec = self.embedding.as_ref().ok_or_else(|| invalid("embedding", "missing"))?;
        Embedding::new(spec.variant, spec.gamma.clone(), spec.rows.clone()).map_err(|e| invalid("embedding", e.to_string()))
    }

    pub fn to_form(&self) -> Result<BilinearForm<Q>, BundleError> {
        let gram = self.form.clone().ok_or_else(|| invalid("form", "missing"))?;
        let parity = self.parity.clone().unwrap_or_else(|| vec![0; self.dim()]);
        BilinearForm::new(gram, parity).map_err(|e| invalid("form", e.to_string()))
    }

    pub fn to_involution(&self) -> Result<Matrix<Q>, BundleError> {
        self.involution.clone().ok_or_else(|| invalid("involution", "missing"))
    }
}

impl EmbeddingSpec {
    pub fn from_embedding(emb: &Embedding<Q>) -> Self {
        EmbeddingSpec { variant: emb.variant, gamma: emb.gamma.clone(), rows: emb.images.clone() }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    format: String,
    kind: String,
    dim: usize,
    labels: Option<Vec<String>>,
    parity: Option<Vec<u8>>,
    gamma: Option<String>,
    acting_dim: Option<usize>,
    #[serde(default)]
    table: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    action: Vec<(usize, usize, usize, String)>,
    form: Option<Vec<(usize, usize, String)>>,
    involution: Option<Vec<(usize, usize, String)>>,
    embedding: Option<RawEmbedding>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmbedding {
    variant: String,
    gamma: String,
    rows: Vec<Vec<String>>,
}

fn coefficient(text: &str, field: &str) -> Result<Q, BundleError> {
    parse_rational(text).ok_or_else(|| invalid(field, format!("`{text}` is not an exact rational literal")))
}

fn check_index(index: usize, bound: usize, field: &str) -> Result<(), BundleError> {
    if index >= bound {
        return Err(invalid(field, format!("index {index} out of range 0..{bound}")));
    }
    Ok(())
}

fn sparse_matrix(list: &[(usize, usize, String)], dim: usize, name: &str) -> Result<Matrix<Q>, BundleError> {
    let mut m = Matrix::zeros(dim, dim);
    let mut seen = std::collections::HashSet::new();
    for (n, (i, j, c)) in list.iter().enumerate() {
        let field = format!("{name}[{n}]");
        check_index(*i, dim, &format!("{field}[0]"))?;
        check_index(*j, dim, &format!("{field}[1]"))?;
        if !seen.insert((*i, *j)) {
            return Err(invalid(field, format!("duplicate entry ({i}, {j})")));
        }
        m[(*i, *j)] = coefficient(c, &format!("{field}[2]"))?;
    }
    Ok(m)
}

/// Parses a bundle document. Type errors report line and column; invariant
/// violations report the offending field path.
pub fn parse_bundle(text: &str) -> Result<AlgebraBundle, BundleError> {
    let raw: RawBundle = serde_json::from_str(text).map_err(|e| BundleError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.format != FORMAT {
        return Err(invalid("format", format!("expected `{FORMAT}`, found `{}`", raw.format)));
    }
    let kind = match raw.kind.as_str() {
        "algebra" => BundleKind::Algebra,
        "module" => BundleKind::Module,
        other => return Err(invalid("kind", format!("unknown kind `{other}`"))),
    };
    let dim = raw.dim;
    let labels = raw.labels.unwrap_or_else(|| (1..=dim).map(|i| format!("e{i}")).collect());
    if labels.len() != dim {
        return Err(invalid("labels", format!("expected {dim} labels, found {}", labels.len())));
    }
    if let Some(p) = &raw.parity {
        if p.len() != dim {
            return Err(invalid("parity", format!("expected {dim} entries, found {}", p.len())));
        }
        if let Some(n) = p.iter().position(|&x| x > 1) {
            return Err(invalid(format!("parity[{n}]"), "parity must be 0 or 1"));
        }
    }
    let gamma = raw.gamma.as_deref().map(|g| coefficient(g, "gamma")).transpose()?;

    let (list, name, bounds) = match kind {
        BundleKind::Algebra => {
            if !raw.action.is_empty() || raw.acting_dim.is_some() {
                return Err(invalid("action", "algebra bundles carry a table, not an action"));
            }
            (&raw.table, "table", [dim, dim, dim])
        }
        BundleKind::Module => {
            if !raw.table.is_empty() {
                return Err(invalid("table", "module bundles carry an action, not a table"));
            }
            let m = raw.acting_dim.ok_or_else(|| invalid("acting_dim", "required for module bundles"))?;
            (&raw.action, "action", [m, dim, dim])
        }
    };
    let mut entries = BTreeMap::new();
    for (n, (i, j, k, c)) in list.iter().enumerate() {
        let field = format!("{name}[{n}]");
        for (slot, (&index, &bound)) in [i, j, k].into_iter().zip(&bounds).enumerate() {
            check_index(index, bound, &format!("{field}[{slot}]"))?;
        }
        let value = coefficient(c, &format!("{field}[3]"))?;
        if entries.contains_key(&(*i, *j, *k)) {
            return Err(invalid(field, format!("duplicate entry ({i}, {j}, {k})")));
        }
        entries.insert((*i, *j, *k), value);
    }
    entries.retain(|_, c| !c.is_zero());

    let form = raw.form.as_deref().map(|f| sparse_matrix(f, dim, "form")).transpose()?;
    let involution = raw.involution.as_deref().map(|f| sparse_matrix(f, dim, "involution")).transpose()?;
    let embedding = match raw.embedding {
        None => None,
        Some(e) => {
            let variant =
                e.variant.parse().map_err(|_| invalid("embedding.variant", format!("unknown variant `{}`", e.variant)))?;
            let gamma = coefficient(&e.gamma, "embedding.gamma")?;
            if e.rows.len() != 7 {
                return Err(invalid("embedding.rows", format!("expected 7 rows, found {}", e.rows.len())));
            }
            let mut rows = Vec::with_capacity(7);
            for (r, row) in e.rows.iter().enumerate() {
                if row.len() != dim {
                    return Err(invalid(
                        format!("embedding.rows[{r}]"),
                        format!("expected {dim} coefficients, found {}", row.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(c, s)| coefficient(s, &format!("embedding.rows[{r}][{c}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(parsed);
            }
            Some(EmbeddingSpec { variant, gamma, rows })
        }
    };
    Ok(AlgebraBundle {
        kind,
        labels,
        parity: raw.parity,
        gamma,
        acting_dim: raw.acting_dim,
        entries,
        form,
        involution,
        embedding,
    })
}

pub fn read_bundle(path: impl AsRef<Path>) -> Result<AlgebraBundle, BundleError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| BundleError::Io { path: path.display().to_string(), source })?;
    parse_bundle(&text)
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn write_sparse_matrix(out: &mut String, name: &str, m: &Matrix<Q>) {
    let mut lines = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                lines.push(format!("    [{i}, {j}, {}]", json(&format_rational(&m[(i, j)]))));
            }
        }
    }
    write_list(out, name, &lines);
}

fn write_list(out: &mut String, name: &str, lines: &[String]) {
    if lines.is_empty() {
        let _ = write!(out, ",\n  \"{name}\": []");
    } else {
        let _ = write!(out, ",\n  \"{name}\": [\n{}\n  ]", lines.join(",\n"));
    }
}

/// Canonical text: fixed field order, one sparse entry per line, entries
/// sorted, zeros dropped, fractions reduced.
pub fn to_canonical_string(b: &AlgebraBundle) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"format\": {},\n  \"kind\": {},\n  \"dim\": {}", json(FORMAT), json(b.kind.as_str()), b.dim());
    let _ = write!(out, ",\n  \"labels\": {}", json(&b.labels));
    if let Some(p) = &b.parity {
        let _ = write!(out, ",\n  \"parity\": {}", json(p));
    }
    if let Some(g) = &b.gamma {
        let _ = write!(out, ",\n  \"gamma\": {}", json(&format_rational(g)));
    }
    if let Some(m) = b.acting_dim {
        let _ = write!(out, ",\n  \"acting_dim\": {m}");
    }
    let lines: Vec<String> = b
        .entries
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j, k), c)| format!("    [{i}, {j}, {k}, {}]", json(&format_rational(c))))
        .collect();
    write_list(&mut out, if b.kind == BundleKind::Algebra { "table" } else { "action" }, &lines);
    if let Some(f) = &b.form {
        write_sparse_matrix(&mut out, "form", f);
    }
    if let Some(s) = &b.involution {
        write_sparse_matrix(&mut out, "involution", s);
    }
    if let Some(e) = &b.embedding {
        let rows: Vec<String> =
            e.rows.iter().map(|r| format!("      {}", json(&r.iter().map(format_rational).collect::<Vec<_>>()))).collect();
        let _ = write!(
            out,
            ",\n  \"embedding\": {{\n    \"variant\": {},\n    \"gamma\": {},\n    \"rows\": [\n{}\n    ]\n  }}",
            json(e.variant.as_str()),
            json(&format_rational(&e.gamma)),
            rows.join(",\n")
        );
    }
    out.push_str("\n}\n");
    out
}

pub fn write_bundle(b: &AlgebraBundle, path: impl AsRef<Path>) -> Result<(), BundleError> {
    let path = path.as_ref();
    std::fs::write(path, to_canonical_string(b)).map_err(|source| BundleError::Io { path: path.display().to_string(), source })
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    indices: &'a [usize],
    defect: Vec<String>,
    description: &'a str,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    check: &'a str,
    status: &'static str,
    checked: usize,
    witness: Option<WitnessRecord<'a>>,
    notes: &'a [String],
    elapsed_ms: f64,
}

/// One JSON line for a report; `elapsed_ms` is the only nondeterministic field.
pub fn report_record(r: &Report<Q>) -> String {
    let witness = r.witness.as_ref().map(|w| WitnessRecord {
        indices: &w.indices,
        defect: w.defect.iter().map(format_rational).collect(),
        description: &w.description,
    });
    json(&ReportRecord {
        kind: "report",
        check: &r.check,
        status: r.status.as_str(),
        checked: r.checked,
        witness,
        notes: &r.notes,
        elapsed_ms: (r.elapsed.as_secs_f64() * 1e6).round() / 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_dickson::build_m7;

    #[test]
    fn m7_round_trip_is_byte_stable() {
        let m = build_m7::<Q>(M7Variant::Split, &Q::from_integer(1.into())).unwrap();
        let text = to_canonical_string(&AlgebraBundle::from_algebra(&m));
        let back = parse_bundle(&text).unwrap();
        assert_eq!(back.to_algebra().unwrap(), m);
        assert_eq!(to_canonical_string(&back), text);
    }

    #[test]
    fn rejects_decimals_and_duplicates() {
        let doc = |table: &str| format!(r#"{{"format": "{FORMAT}", "kind": "algebra", "dim": 1, "table": {table}}}"#);
        assert!(parse_bundle(&doc(r#"[[0, 0, 0, "1/2"]]"#)).is_ok());
        match parse_bundle(&doc(r#"[[0, 0, 0, "0.5"]]"#)) {
            Err(BundleError::Invalid { field, .. }) => assert_eq!(field, "table[0][3]"),
            other => panic!("{other:?}"),
        }
        match parse_bundle(&doc(r#"[[0, 0, 0, "1"], [0, 0, 0, "2"]]"#)) {
            Err(BundleError::Invalid { field, .. }) => assert_eq!(field, "table[1]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_bundle(&doc(r#"[[0, 0, 1, "1"]]"#)), Err(BundleError::Invalid { .. })));
        assert!(matches!(parse_bundle("{\"format\": 1}"), Err(BundleError::Parse { line: 1, .. })));
    }
}
