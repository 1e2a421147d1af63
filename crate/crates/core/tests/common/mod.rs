#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use malcev::{QAlgebra, Scalar, Q};

pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

pub type Table = [(&'static str, [&'static str; 7]); 7];

pub const SPLIT_TABLE: Table = [
    ("e1", ["0", "2e2", "2e3", "2e4", "-2e5", "-2e6", "-2e7"]),
    ("e2", ["-2e2", "0", "2e7", "-2e6", "e1", "0", "0"]),
    ("e3", ["-2e3", "-2e7", "0", "2e5", "0", "e1", "0"]),
    ("e4", ["-2e4", "2e6", "-2e5", "0", "0", "0", "e1"]),
    ("e5", ["2e5", "-e1", "0", "0", "0", "-2e4", "2e3"]),
    ("e6", ["2e6", "0", "-e1", "0", "2e4", "0", "-2e2"]),
    ("e7", ["2e7", "0", "0", "-e1", "-2e3", "2e2", "0"]),
];

/// Cell `v·k` reads `2vk`: the anticommutative value (see `m7_tables.rs`).
pub const DIVISION_TABLE: Table = [
    ("i", ["0", "2k", "-2j", "-2vi", "2v", "-2vk", "2vj"]),
    ("j", ["-2k", "0", "2i", "-2vj", "2vk", "2v", "-2vi"]),
    ("k", ["2j", "-2i", "0", "-2vk", "-2vj", "2vi", "2v"]),
    ("v", ["2vi", "2vj", "2vk", "0", "2γi", "2γj", "2γk"]),
    ("vi", ["-2v", "-2vk", "2vj", "-2γi", "0", "2γk", "-2γj"]),
    ("vj", ["2vk", "-2v", "-2vi", "-2γj", "-2γk", "0", "2γi"]),
    ("vk", ["-2vj", "2vi", "-2v", "-2γk", "2γj", "-2γi", "0"]),
];

/// Parses entries like `2e3`, `-e1`, `2γvi`, `0` into (coefficient, has gamma, label).
pub fn parse_entry(s: &str) -> Option<(i64, bool, String)> {
    if s == "0" {
        return None;
    }
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let rest = &rest[digits.len()..];
    let coef: i64 = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
    let (gamma, label) = match rest.strip_prefix('γ') {
        Some(l) => (true, l),
        None => (false, rest),
    };
    Some((if neg { -coef } else { coef }, gamma, label.to_string()))
}

/// Cells of `rows` that differ from the products of `m`.
pub fn table_mismatches(m: &QAlgebra, gamma: &Q, rows: &Table) -> Vec<String> {
    let mut bad = Vec::new();
    for (row_label, cells) in rows {
        let Some(i) = m.index_of(row_label) else {
            bad.push(format!("missing label {row_label}"));
            continue;
        };
        for (j, cell) in cells.iter().enumerate() {
            let mut expected = vec![q(0); m.dim()];
            if let Some((c, g, label)) = parse_entry(cell) {
                let k = m.index_of(&label).expect("label in table");
                expected[k] = q(c) * if g { gamma.clone() } else { q(1) };
            }
            if m.multiply(&m.basis(i), &m.basis(j)).unwrap().coeffs != expected {
                bad.push(format!("{row_label} * {} != {cell}", m.label(j)));
            }
        }
    }
    bad
}

/// Dense product computed straight from structure constants.
pub fn naive_mul(a: &QAlgebra, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = a.dim();
    let mut out = vec![q(0); n];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot += xi.clone() * yj * a.structure_constant(i, j, k);
            }
        }
    }
    out
}

fn add(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b).collect()
}

fn sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b).collect()
}

fn basis(n: usize, i: usize) -> Vec<Q> {
    (0..n).map(|k| q((k == i) as i64)).collect()
}

/// `(xy)z + (yz)x + (zx)y` on basis elements, by brute-force expansion.
pub fn jacobian_oracle(a: &QAlgebra, i: usize, j: usize, k: usize) -> Vec<Q> {
    let (x, y, z) = (basis(a.dim(), i), basis(a.dim(), j), basis(a.dim(), k));
    let m = |u: &[Q], v: &[Q]| naive_mul(a, u, v);
    add(&add(&m(&m(&x, &y), &z), &m(&m(&y, &z), &x)), &m(&m(&z, &x), &y))
}

/// Ungraded linearized Malcev defect
/// `(xz)(yt) - ((xy)z)t - ((yz)t)x - ((zt)x)y - ((tx)y)z` on basis elements.
pub fn linearized_malcev_oracle(a: &QAlgebra, idx: [usize; 4]) -> Vec<Q> {
    let [x, y, z, t] = idx.map(|i| basis(a.dim(), i));
    let m = |u: &[Q], v: &[Q]| naive_mul(a, u, v);
    let mut d = m(&m(&x, &z), &m(&y, &t));
    for term in [m(&m(&m(&x, &y), &z), &t), m(&m(&m(&y, &z), &t), &x), m(&m(&m(&z, &t), &x), &y), m(&m(&m(&t, &x), &y), &z)] {
        d = sub(&d, &term);
    }
    d
}

/// `e_i e_j + e_j e_i` (ungraded anticommutativity defect).
pub fn anticommutator_oracle(a: &QAlgebra, i: usize, j: usize) -> Vec<Q> {
    (0..a.dim()).map(|k| a.structure_constant(i, j, k) + a.structure_constant(j, i, k)).collect()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malcev")).args(args).output().expect("binary runs")
}

/// Stdout records with the timing field removed.
pub fn strip_timing(stdout: &[u8]) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(stdout)
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).expect("JSON line");
            if let Some(o) = v.as_object_mut() {
                o.remove("elapsed_ms");
            }
            v
        })
        .collect()
}
