use malcev::cayley_dickson::{build_m7, build_m7_over, build_sample_coordinates, M7Variant};
use malcev::identities::anticommutativity_witness;
use malcev::{
    alpha_operator, jacobian, malcev_defect, special_form, verify_h_variety, verify_malcev, FormKind, QAlgebra, QElement, Status,
    Q,
};
use proptest::prelude::*;

mod common;
use common::{jacobian_oracle, linearized_malcev_oracle, naive_mul, q};

fn split() -> QAlgebra {
    build_m7(M7Variant::Split, &q(1)).unwrap()
}

fn sl2() -> QAlgebra {
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    let entries = vec![(0, 1, 1, q(2)), (1, 0, 1, q(-2)), (0, 2, 2, q(-2)), (2, 0, 2, q(2)), (1, 2, 0, q(1)), (2, 1, 0, q(-1))];
    QAlgebra::from_entries(vec!["h".into(), "e".into(), "f".into()], None, entries).unwrap()
}

#[test]
fn both_variants_are_malcev_and_in_h() {
    for (v, g) in [(M7Variant::Split, 1), (M7Variant::Division, -1), (M7Variant::Division, 2)] {
        let m = build_m7(v, &q(g)).unwrap();
        let r = verify_malcev(&m);
        assert_eq!((r.status, r.checked), (Status::Pass, 2401));
        assert!(verify_h_variety(&m).passed());
    }
}

#[test]
fn lie_algebras_pass_both_sweeps() {
    let a = sl2();
    assert!(verify_malcev(&a).passed());
    assert!(verify_h_variety(&a).passed());
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert!(jacobian_oracle(&a, i, j, k).iter().all(|c| *c == q(0)));
            }
        }
    }
}

#[test]
fn jacobian_matches_brute_force_on_all_triples() {
    let m = split();
    for i in 0..7 {
        for j in 0..7 {
            for k in 0..7 {
                let got = jacobian(&m, &m.basis(i), &m.basis(j), &m.basis(k)).unwrap();
                assert_eq!(got.coeffs, jacobian_oracle(&m, i, j, k), "J({i},{j},{k})");
            }
        }
    }
}

#[test]
fn linearized_identity_vanishes_by_independent_expansion() {
    let m = build_m7(M7Variant::Division, &q(-1)).unwrap();
    for idx in [[0, 1, 2, 3], [3, 4, 5, 6], [1, 1, 4, 2], [6, 0, 3, 5]] {
        assert!(linearized_malcev_oracle(&m, idx).iter().all(|c| *c == q(0)));
    }
}

#[test]
fn super_tensor_products_are_malcev_superalgebras() {
    for kind in ["grassmann:1", "grassmann:2", "dual-odd"] {
        let u = build_sample_coordinates::<Q>(kind).unwrap();
        let a = build_m7_over(M7Variant::Split, &q(1), &u).unwrap();
        assert!(a.is_graded());
        assert!(anticommutativity_witness(&a).is_none(), "{kind}");
        assert!(verify_malcev(&a).passed(), "{kind}");
    }
    let u = build_sample_coordinates::<Q>("grassmann:1").unwrap();
    assert!(verify_h_variety(&build_m7_over(M7Variant::Split, &q(1), &u).unwrap()).passed());
}

#[test]
fn commutative_table_fails_with_pair_witness() {
    let a = QAlgebra::from_entries(vec!["x".into(), "y".into()], None, vec![(0, 1, 0, q(1)), (1, 0, 0, q(1))]).unwrap();
    let r = verify_malcev(&a);
    assert_eq!(r.status, Status::Fail);
    let w = r.witness.unwrap();
    assert_eq!(w.indices, vec![0, 1]);
    assert_eq!(w.defect, vec![q(2), q(0)]);
    assert!(verify_h_variety(&a).notes.iter().any(|n| n.contains("not anticommutative")));
}

#[test]
fn quadratic_defect_vanishes_on_m7() {
    let m = split();
    for (x, y, z) in [(0, 1, 2), (1, 4, 6), (2, 5, 3)] {
        assert!(malcev_defect(&m, &m.basis(x), &m.basis(y), &m.basis(z)).unwrap().is_zero());
    }
}

#[test]
fn special_forms_check_arity_and_homogeneity() {
    let m = split();
    assert!(special_form(&m, FormKind::P, &[m.basis(0), m.basis(1)]).is_err());
    let u = build_sample_coordinates::<Q>("grassmann:1").unwrap();
    let a = build_m7_over(M7Variant::Split, &q(1), &u).unwrap();
    let mixed = &a.basis(0) + &a.basis(7);
    assert!(special_form(&a, FormKind::Braces, &[mixed, a.basis(1), a.basis(2)]).is_err());
}

fn element() -> impl Strategy<Value = QElement> {
    prop::collection::vec(-4i64..5, 7).prop_map(|v| QElement::new(v.into_iter().map(q).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_is_bilinear(x in element(), y in element(), z in element(), s in -5i64..6) {
        let m = split();
        let lhs = m.multiply(&(&x.scale(&q(s)) + &y), &z).unwrap();
        let rhs = &m.multiply(&x, &z).unwrap().scale(&q(s)) + &m.multiply(&y, &z).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.coeffs, naive_mul(&m, &(&x.scale(&q(s)) + &y).coeffs, &z.coeffs));
    }

    #[test]
    fn jacobian_is_alternating(x in element(), y in element()) {
        let m = split();
        prop_assert!(jacobian(&m, &x, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn alpha_is_skew_in_its_arguments(y in element(), z in element(), t in element()) {
        let m = split();
        let a = alpha_operator(&m, &y, &z, &t).unwrap();
        let swapped = alpha_operator(&m, &z, &y, &t).unwrap();
        let rotated = alpha_operator(&m, &y, &t, &z).unwrap();
        prop_assert_eq!(a.matrix.add(&swapped.matrix), malcev::Matrix::zeros(7, 7));
        prop_assert_eq!(a.matrix.add(&rotated.matrix), malcev::Matrix::zeros(7, 7));
        prop_assert!(alpha_operator(&m, &y, &y, &t).unwrap().is_zero());
        // on the simple algebra alpha acts by a scalar
        prop_assert!(a.scalar_value().is_some());
    }
}
