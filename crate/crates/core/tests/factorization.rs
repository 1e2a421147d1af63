use malcev::cayley_dickson::{build_m7, build_m7_over, build_sample_coordinates, M7Variant};
use malcev::factorization::{
    check_annihilator_hypothesis, coordinatize_module, kronecker_factorize, verify_embedding, Embedding, FactorizationError,
};
use malcev::module_theory::{verify_module, Representation};
use malcev::structure::{is_associative, is_supercommutative};
use malcev::{Matrix, QAlgebra, Q};

mod common;
use common::q;

const KINDS: [&str; 7] = ["field", "dual", "split-quadratic", "truncated:3", "grassmann:1", "grassmann:2", "dual-odd"];

#[test]
fn every_sample_coordinate_algebra_is_recovered() {
    for (v, g) in [(M7Variant::Split, 1), (M7Variant::Division, 2)] {
        for kind in KINDS {
            let u = build_sample_coordinates::<Q>(kind).unwrap();
            let host = build_m7_over(v, &q(g), &u).unwrap();
            let res = kronecker_factorize(&host, &Embedding::into_tensor(v, q(g), &u).unwrap()).unwrap();
            assert_eq!(res.dim_u(), u.dim(), "{kind}");
            let even = u.parities().iter().filter(|&&p| p == 0).count();
            assert_eq!(res.graded_dims(), (even, u.dim() - even), "{kind}");
            assert!(is_associative(&res.u).passed() && is_supercommutative(&res.u).passed());
            let phi = res.canonical_comparison(&u).unwrap();
            assert!(phi.inverse().is_some());
            assert_eq!(res.iso.rank(), host.dim());
        }
    }
}

#[test]
fn twisted_embedding_still_factors() {
    // embed M7 as M7 ⊗ (1 + t) in M7 ⊗ F[t]/(t^2 - 1): (1+t)^2 = 2(1+t), so scale by 1/2
    let u = build_sample_coordinates::<Q>("split-quadratic").unwrap();
    let host = build_m7_over(M7Variant::Split, &q(1), &u).unwrap();
    let half = Q::new(1.into(), 2.into());
    let images = (0..7)
        .map(|a| {
            let mut v = vec![q(0); 14];
            v[a] = half.clone();
            v[7 + a] = half.clone();
            v
        })
        .collect();
    let emb = Embedding::new(M7Variant::Split, q(1), images).unwrap();
    assert!(verify_embedding(&host, &emb).passed());
    // the idempotent (1+t)/2 only sees half of the host
    let r = check_annihilator_hypothesis(&host, &emb);
    assert!(!r.passed());
    assert!(matches!(kronecker_factorize(&host, &emb), Err(FactorizationError::HypothesisViolated(_))));
}

#[test]
fn non_embeddings_are_reported() {
    let m = build_m7::<Q>(M7Variant::Split, &q(1)).unwrap();
    let doubled = (0..7).map(|a| m.basis(a).scale(&q(2)).coeffs).collect();
    let emb = Embedding::new(M7Variant::Split, q(1), doubled).unwrap();
    let r = verify_embedding(&m, &emb);
    assert!(!r.passed());
    assert!(kronecker_factorize(&m, &emb).is_err());
}

#[test]
fn perturbed_host_is_refused() {
    let u = build_sample_coordinates::<Q>("dual").unwrap();
    let host = build_m7_over(M7Variant::Split, &q(1), &u).unwrap();
    // change (e2⊗t)(e5⊗1) from e1⊗t to 2 e1⊗t, keeping anticommutativity
    let bad = host.with_structure_constant(8, 4, 7, q(2)).unwrap().with_structure_constant(4, 8, 7, q(-2)).unwrap();
    let emb = Embedding::into_tensor(M7Variant::Split, q(1), &u).unwrap();
    assert!(kronecker_factorize(&bad, &emb).is_err());
}

fn regular_of_dual() -> (QAlgebra, Representation<Q>) {
    let u = build_sample_coordinates::<Q>("dual").unwrap();
    let reg = Representation::regular(&u);
    (u, reg)
}

#[test]
fn coordinatize_regular_and_a_small_module() {
    let (u, reg) = regular_of_dual();
    let c = coordinatize_module(&u, &reg).unwrap();
    assert_eq!(c.module.action, Representation::regular(&c.m7u).action);
    assert!(verify_module(&c.module, false).passed());

    // W = F with t acting as zero
    let w = Representation::new(u.clone(), vec!["w".into()], vec![0], vec![Matrix::identity(1), Matrix::zeros(1, 1)]).unwrap();
    let c = coordinatize_module(&u, &w).unwrap();
    assert_eq!(c.module.carrier_dim(), 7);
    assert!(verify_module(&c.module, false).passed());
    assert!(coordinatize_module(&u, &Representation::zero(&u, 2)).is_err());
}
