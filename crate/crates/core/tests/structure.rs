use malcev::cayley_dickson::{build_m7, build_m7_over, build_sample_coordinates, split_octonions, M7Variant};
use malcev::structure::{centroid_basis, grassmann_envelope, ideal_closure, is_in_centroid, is_simple, nucleus};
use malcev::{verify_malcev, QAlgebra, Q};

mod common;
use common::q;

fn m7_over(kind: &str) -> QAlgebra {
    build_m7_over(M7Variant::Split, &q(1), &build_sample_coordinates::<Q>(kind).unwrap()).unwrap()
}

#[test]
fn centroid_of_m7_tensor_u_has_the_graded_dimensions_of_u() {
    for (kind, even, odd) in [("field", 1, 0), ("dual", 2, 0), ("truncated:3", 3, 0), ("grassmann:1", 1, 1), ("dual-odd", 2, 1)] {
        let a = m7_over(kind);
        let c0 = centroid_basis(&a, 0);
        let c1 = centroid_basis(&a, 1);
        assert_eq!((c0.len(), c1.len()), (even, odd), "{kind}");
        assert!(c0.iter().chain(&c1).all(|op| is_in_centroid(&a, op)));
    }
}

#[test]
fn simplicity_and_ideals() {
    for (v, g) in [(M7Variant::Split, 1), (M7Variant::Division, 3)] {
        let m = build_m7(v, &q(g)).unwrap();
        assert!(is_simple(&m).passed());
    }
    let a = m7_over("dual");
    let r = is_simple(&a);
    assert!(!r.passed());
    // the ideal generated by e1 ⊗ t is M7 ⊗ t
    assert_eq!(ideal_closure(&a, &[a.basis(7).coeffs]).dim(), 7);
}

#[test]
fn nucleus_of_octonions_is_the_scalars() {
    let o = split_octonions::<Q>();
    let n = nucleus(&o);
    assert_eq!(n.len(), 1);
    assert!(n[0][1..].iter().all(|c| *c == q(0)));
    assert!(nucleus(&build_m7(M7Variant::Split, &q(1)).unwrap()).is_empty());
}

fn perturb_odd_pair(a: &QAlgebra) -> QAlgebra {
    // odd basis elements e2⊗θ, e5⊗θ multiply to zero in M7 ⊗ Λ(θ); give them a symmetric product
    let (x, y) = (8, 11);
    a.with_structure_constant(x, y, 0, q(1)).unwrap().with_structure_constant(y, x, 0, q(1)).unwrap()
}

#[test]
fn grassmann_envelopes_agree_with_the_graded_check() {
    let cases = [
        ("grassmann:1", m7_over("grassmann:1"), 1),
        ("grassmann:1", m7_over("grassmann:1"), 2),
        ("dual-odd", m7_over("dual-odd"), 2),
        ("perturbed", perturb_odd_pair(&m7_over("grassmann:1")), 2),
    ];
    for (name, a, n) in cases {
        let env = grassmann_envelope(&a, n);
        // even and odd Grassmann parts both have dimension 2^(n-1)
        assert_eq!(env.dim(), a.dim() << (n - 1), "{name}");
        assert!(!env.is_graded());
        assert_eq!(verify_malcev(&a).passed(), verify_malcev(&env).passed(), "{name} with {n} generators");
    }
    assert!(!verify_malcev(&perturb_odd_pair(&m7_over("grassmann:1"))).passed());
}
