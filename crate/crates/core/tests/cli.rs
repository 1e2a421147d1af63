use malcev::bundle::{parse_bundle, read_bundle, to_canonical_string, AlgebraBundle, BundleKind, EmbeddingSpec};
use malcev::cayley_dickson::{build_m7, M7Variant};
use malcev::{QAlgebra, Q};
use proptest::prelude::*;

mod common;
use common::{cli, fixture, linearized_malcev_oracle, q, strip_timing};

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

fn temp_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("malcev-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn build_then_check_passes() {
    let dir = temp_dir("build");
    for (variant, gamma) in [("split", "1"), ("division", "-1"), ("division", "2")] {
        let file = dir.join(format!("{variant}{gamma}.json"));
        let out = cli(&["build", "m7", "--variant", variant, "--gamma", gamma, "--out", path(&file)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let out = cli(&["check", path(&file), "--malcev", "--h-variety", "--simple"]);
        assert_eq!(out.status.code(), Some(0));
        let records = strip_timing(&out.stdout);
        assert_eq!(records.len(), 3);
        assert!(records.iter().all(|r| r["status"] == "pass"));
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn factorize_fixture_emits_two_dimensional_u() {
    let dir = temp_dir("factorize");
    let u_file = dir.join("u.json");
    let out = cli(&["factorize", path(&fixture("m7_dual.json")), "--out", path(&u_file)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records = strip_timing(&out.stdout);
    let bundle = records.iter().find(|r| r["type"] == "bundle").expect("U bundle record");
    assert_eq!(bundle["bundle"]["dim"], 2);
    let u = read_bundle(&u_file).unwrap().to_algebra().unwrap();
    assert_eq!(u.dim(), 2);
    // u2 squares to zero: U is the dual numbers
    assert!(u.product(1, 1).is_empty());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn perturbed_fixture_fails_with_replayable_witness() {
    let file = fixture("m7_perturbed.json");
    let out = cli(&["check", path(&file), "--malcev"]);
    assert_eq!(out.status.code(), Some(1));
    let records = strip_timing(&out.stdout);
    let w = &records[0]["witness"];
    let idx: Vec<usize> = w["indices"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
    assert_eq!(idx.len(), 4);
    let a = read_bundle(&file).unwrap().to_algebra().unwrap();
    let defect: Vec<Q> =
        w["defect"].as_array().unwrap().iter().map(|v| malcev::parse_rational(v.as_str().unwrap()).unwrap()).collect();
    assert_eq!(linearized_malcev_oracle(&a, [idx[0], idx[1], idx[2], idx[3]]), defect);
}

#[test]
fn decompose_and_involutive_factorization() {
    let dir = temp_dir("involution");
    let file = dir.join("m.json");
    let out = cli(&[
        "build",
        "m7",
        "--variant",
        "division",
        "--gamma",
        "3",
        "--coords",
        "truncated:3",
        "--with-involution",
        "--out",
        path(&file),
    ]);
    assert!(out.status.success());
    let f = path(&file);
    let out = cli(&["factorize", f, "--involution", f, "--form", f]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records = strip_timing(&out.stdout);
    assert!(records.iter().any(|r| r["check"] == "symmetric-coordinates" && r["status"] == "pass"));
    let out = cli(&["decompose", path(&fixture("m7_dual.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let records = strip_timing(&out.stdout);
    assert_eq!(records.last().unwrap()["checked"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn coordinatize_and_envelope_commands() {
    let dir = temp_dir("coords");
    let (u, w, m) = (dir.join("u.json"), dir.join("w.json"), dir.join("m.json"));
    assert!(cli(&["build", "coords", "dual", "--out", path(&u)]).status.success());
    assert!(cli(&["build", "regular", path(&u), "--out", path(&w)]).status.success());
    let out = cli(&["coordinatize", path(&u), path(&w)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records = strip_timing(&out.stdout);
    let module = records.iter().find(|r| r["type"] == "bundle").unwrap();
    assert_eq!(module["bundle"]["acting_dim"], 14);
    assert!(cli(&["build", "m7", "--coords", "grassmann:1", "--out", path(&m)]).status.success());
    let out = cli(&["envelope", path(&m), "--generators", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(strip_timing(&out.stdout).len(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn input_errors_exit_with_two() {
    let dir = temp_dir("errors");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"format": "malcev-bundle/1", "kind": "algebra", "dim": 1, "table": [[0, 0, 0, "0.5"]]}"#).unwrap();
    let out = cli(&["check", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("table[0][3]"));
    assert_eq!(cli(&["check", path(&bad), "--bogus"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cli(&["build", "m7", "--variant", "division", "--gamma", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["check", path(&dir.join("missing.json"))]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn m7_bundle_is_byte_stable() {
    let m = build_m7::<Q>(M7Variant::Division, &q(-1)).unwrap();
    let mut b = AlgebraBundle::from_algebra(&m);
    b.gamma = Some(q(-1));
    b.embedding =
        Some(EmbeddingSpec { variant: M7Variant::Division, gamma: q(-1), rows: (0..7).map(|a| m.basis(a).coeffs).collect() });
    assert_eq!(b.entries.len(), 42);
    let text = to_canonical_string(&b);
    let back = parse_bundle(&text).unwrap();
    assert_eq!(back, b);
    assert_eq!(to_canonical_string(&back), text);
    assert_eq!(back.to_embedding().unwrap().images, b.embedding.unwrap().rows);
}

type RawEntry = (usize, usize, usize, i64, i64);

fn table() -> impl Strategy<Value = (usize, Vec<RawEntry>)> {
    (1usize..5).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n, 0..n, -20i64..21, 1i64..7), 0..20)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bundles_round_trip(data in table(), graded in any::<bool>()) {
        let (n, entries) = data;
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        let entries = entries.into_iter().map(|(i, j, k, p, d)| (i, j, k, Q::new(p.into(), d.into())));
        let parity = graded.then(|| vec![0; n]);
        let a = QAlgebra::from_entries(labels, parity, entries).unwrap();
        let b = AlgebraBundle::from_algebra(&a);
        prop_assert_eq!(b.kind, BundleKind::Algebra);
        let text = to_canonical_string(&b);
        let back = parse_bundle(&text).unwrap();
        prop_assert_eq!(back.to_algebra().unwrap(), a);
        prop_assert_eq!(to_canonical_string(&back), text);
    }
}
