use malcev::cayley_dickson::{build_m7, build_m7_over, build_sample_coordinates, M7Variant};
use malcev::factorization::Embedding;
use malcev::involution::{
    adjoint_operator, canonical_form_m7, factorize_with_involution, induced_form, induced_involution, j_admissibility,
    symmetric_elements, tensor_involution, verify_involution, BilinearForm, InvolutionError,
};
use malcev::{Matrix, OperatorMatrix, Q};
use proptest::prelude::*;

mod common;
use common::{naive_mul, q};

#[test]
fn minus_identity_is_an_involution_and_identity_is_not() {
    for (v, g) in [(M7Variant::Split, 1), (M7Variant::Division, 5)] {
        let m = build_m7::<Q>(v, &q(g)).unwrap();
        assert!(verify_involution(&m, &Matrix::identity(7).scale(&q(-1))).passed());
        assert!(!verify_involution(&m, &Matrix::identity(7)).passed());
    }
}

#[test]
fn canonical_forms_are_symmetric_and_nonsingular() {
    for (v, g) in [(M7Variant::Split, 1), (M7Variant::Division, -1), (M7Variant::Division, 2)] {
        let f = canonical_form_m7::<Q>(v, &q(g)).unwrap();
        assert_eq!(f.gram, f.gram.transpose());
        assert!(f.is_nonsingular());
    }
    let f = canonical_form_m7::<Q>(M7Variant::Split, &q(1)).unwrap();
    assert_eq!(f.gram[(1, 4)], Q::new((-1).into(), 2.into()));
    assert_eq!(f.gram[(0, 0)], q(-1));
}

#[test]
fn induced_data_certifies_symmetric_coordinates() {
    for kind in ["field", "dual", "truncated:3"] {
        let u = build_sample_coordinates::<Q>(kind).unwrap();
        let host = build_m7_over(M7Variant::Division, &q(2), &u).unwrap();
        let emb = Embedding::into_tensor(M7Variant::Division, q(2), &u).unwrap();
        let f = induced_form(&canonical_form_m7(M7Variant::Division, &q(2)).unwrap(), &u).unwrap();
        let sigma = induced_involution(&u);
        assert!(j_admissibility(&host, &sigma).passed());
        let inv = factorize_with_involution(&host, &emb, &sigma, &f).unwrap();
        assert!(inv.skew.is_empty());
        assert_eq!(inv.adjoints, inv.result.operators);
    }
}

#[test]
fn a_non_admissible_involution_is_caught() {
    let u = build_sample_coordinates::<Q>("dual").unwrap();
    let host = build_m7_over(M7Variant::Split, &q(1), &u).unwrap();
    let sigma_u = Matrix::from_fn(2, 2, |r, c| if r == c { q(1 - 2 * r as i64) } else { q(0) });
    let sigma = tensor_involution(&Matrix::identity(7).scale(&q(-1)), &sigma_u);
    assert!(verify_involution(&host, &sigma).passed());
    // e1 ⊗ t is symmetric, and (e2, e1⊗t, e3) = -8 e7⊗t
    assert!(symmetric_elements(&sigma).iter().any(|s| s[7] != q(0)));
    let (e2, s, e3) = (host.basis(1).coeffs, host.basis(7).coeffs, host.basis(2).coeffs);
    let left = naive_mul(&host, &naive_mul(&host, &e2, &s), &e3);
    let right = naive_mul(&host, &e2, &naive_mul(&host, &s, &e3));
    let assoc: Vec<Q> = left.iter().zip(&right).map(|(a, b)| a.clone() - b).collect();
    assert_eq!(assoc, host.basis(13).scale(&q(-8)).coeffs);
    assert!(!j_admissibility(&host, &sigma).passed());
    let f = induced_form(&canonical_form_m7(M7Variant::Split, &q(1)).unwrap(), &u).unwrap();
    let emb = Embedding::into_tensor(M7Variant::Split, q(1), &u).unwrap();
    assert!(matches!(factorize_with_involution(&host, &emb, &sigma, &f), Err(InvolutionError::NotJAdmissible(_))));
}

#[test]
fn adjoint_of_odd_operator_on_graded_form() {
    let u = build_sample_coordinates::<Q>("grassmann:1").unwrap();
    let f = induced_form(&canonical_form_m7(M7Variant::Split, &q(1)).unwrap(), &u).unwrap();
    assert_eq!(f.parity.iter().filter(|&&p| p == 1).count(), 7);
    // the odd swap of the two halves
    let swap = Matrix::from_fn(14, 14, |r, c| if r % 7 == c % 7 && r != c { q(1) } else { q(0) });
    let alpha = OperatorMatrix::new(swap, 1);
    let star = adjoint_operator(&alpha, &f).unwrap();
    assert_eq!(star.parity, 1);
    // defining relation f(xα, y) = (-1)^{|y|} f(x, yα*) on basis pairs
    for x in 0..14 {
        for y in 0..14 {
            let ex = (0..14).map(|i| q((i == x) as i64)).collect::<Vec<_>>();
            let ey = (0..14).map(|i| q((i == y) as i64)).collect::<Vec<_>>();
            let lhs = f.eval(&alpha.apply(&ex), &ey);
            let sign = if f.parity[y] == 1 { q(-1) } else { q(1) };
            assert_eq!(lhs, sign * f.eval(&ex, &star.apply(&ey)));
        }
    }
}

fn operator() -> impl Strategy<Value = OperatorMatrix<Q>> {
    prop::collection::vec((-6i64..7, 1i64..4), 49)
        .prop_map(|v| OperatorMatrix::new(Matrix::from_fn(7, 7, |r, c| Q::new(v[r * 7 + c].0.into(), v[r * 7 + c].1.into())), 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adjoint_is_involutive_and_reverses_products(a in operator(), b in operator()) {
        let f: BilinearForm<Q> = canonical_form_m7(M7Variant::Division, &q(-1)).unwrap();
        let star = |x: &OperatorMatrix<Q>| adjoint_operator(x, &f).unwrap();
        prop_assert_eq!(&star(&star(&a)), &a);
        // (αβ)* = β*α* with αβ meaning α first
        prop_assert_eq!(star(&a.then(&b)), star(&b).then(&star(&a)));
    }
}
