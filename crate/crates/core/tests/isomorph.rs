use dgfree_core::classify2::witness_catalog;
use dgfree_core::isomorph::{
    decide, is_automorphism, is_symmetric_tuple, scalar_witness, stacked_rank, transport, Outcome,
};
use dgfree_core::rational::{frac, int};
use dgfree_core::{canonical_tuple, check_witness, ClassLabel, Error, Matrix, MatrixTuple, WitnessMatrix};
use proptest::prelude::*;

fn b(k: u8) -> MatrixTuple {
    canonical_tuple(&ClassLabel::B(k)).unwrap()
}

fn invertible() -> impl Strategy<Value = WitnessMatrix> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("invertible", |e| e[0] * e[3] != e[1] * e[2])
        .prop_map(|e| WitnessMatrix::from_ints(&[[e[0], e[1]], [e[2], e[3]]]))
}

#[test]
fn witness_examples() {
    let case2 = MatrixTuple::from_ints(&[[[0, 0], [0, 0]], [[1, 0], [0, 0]]]);
    let swap = WitnessMatrix::from_ints(&[[0, 1], [1, 0]]);
    let target = transport(&case2, &swap).unwrap();
    assert!(check_witness(&case2, &target, &swap).unwrap());

    // B(s, t) at s = 2, t = 1/2; not a valid label since s t = 1.
    let m = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), frac(1, 2)]]).unwrap();
    let bst = MatrixTuple::new(vec![m.clone(), m]).unwrap();
    let a = WitnessMatrix::new(
        Matrix::from_rows(vec![vec![int(2), frac(5, 2)], vec![int(3), frac(3, 2)]]).unwrap(),
    )
    .unwrap();
    assert!(check_witness(&b(8), &bst, &a).unwrap());
    assert!(check_witness(&bst, &b(8), &a.inverse()).unwrap());
}

#[test]
fn witness_errors() {
    assert_eq!(WitnessMatrix::new(Matrix::from_ints(&[[1, 2], [2, 4]])), Err(Error::Singular));
    let bad = MatrixTuple::from_ints(&[[[0, 1], [0, 0]], [[0, 0], [0, 0]]]);
    assert_eq!(check_witness(&bad, &bad, &WitnessMatrix::identity(2)), Err(Error::NotCrisscross));
    assert!(check_witness(&b(1), &MatrixTuple::zero(3), &WitnessMatrix::identity(2)).is_err());
}

#[test]
fn invariant_examples() {
    assert_eq!(stacked_rank(&b(1)), 1);
    assert_eq!(stacked_rank(&b(2)), 2);
    assert_eq!(stacked_rank(&MatrixTuple::zero(2)), 0);
    assert!(is_symmetric_tuple(&b(6)));
    assert!(!is_symmetric_tuple(&b(1)));
    assert!(is_symmetric_tuple(&MatrixTuple::zero(3)));
}

#[test]
fn catalog_symmetry_and_soundness() {
    for e in witness_catalog() {
        assert!(check_witness(&e.target, &e.source, &e.witness.inverse()).unwrap(), "{}", e.formula);
        assert_eq!(stacked_rank(&e.source), stacked_rank(&e.target), "{}", e.formula);
        assert_eq!(is_symmetric_tuple(&e.source), is_symmetric_tuple(&e.target), "{}", e.formula);
    }
}

#[test]
fn catalog_chains_compose_left_to_right() {
    let catalog = witness_catalog();
    let mut chains = 0;
    for a in &catalog {
        for c in catalog.iter().filter(|c| c.source == a.target) {
            let w = a.witness.then(&c.witness).unwrap();
            assert_eq!(w.matrix(), &(a.witness.matrix() * c.witness.matrix()));
            assert!(check_witness(&a.source, &c.target, &w).unwrap(), "{} then {}", a.formula, c.formula);
            chains += 1;
        }
    }
    assert!(chains > 0);
}

#[test]
fn automorphism_examples() {
    for k in [1u8, 6, 8, 10] {
        assert!(is_automorphism(&b(k), &WitnessMatrix::identity(2)).unwrap());
    }
    let zero = MatrixTuple::zero(2);
    assert!(is_automorphism(&zero, &WitnessMatrix::from_ints(&[[3, 1], [-2, 5]])).unwrap());
    // The coordinate swap does not fix B8: x1 maps to x2, whose differential differs.
    assert!(!is_automorphism(&b(8), &WitnessMatrix::from_ints(&[[0, 1], [1, 0]])).unwrap());
    let g = WitnessMatrix::from_ints(&[[2, -1], [0, 1]]);
    let h = WitnessMatrix::from_ints(&[[-2, 3], [0, 1]]);
    for a in [&g, &h] {
        assert!(is_automorphism(&b(8), a).unwrap());
        assert!(is_automorphism(&b(8), &a.inverse()).unwrap());
    }
    assert!(is_automorphism(&b(8), &g.then(&h).unwrap()).unwrap());
    assert!(is_automorphism(&b(8), &h.then(&g).unwrap()).unwrap());
}

#[test]
fn scalar_witness_scales_the_tuple() {
    let c = frac(3, 2);
    let m = b(10);
    let scaled = MatrixTuple::new(m.matrices().iter().map(|x| x.scale(&c)).collect()).unwrap();
    assert!(check_witness(&m, &scaled, &scalar_witness(2, c).unwrap()).unwrap());
}

#[test]
fn decisions() {
    let v = decide(&b(1), &b(2), None).unwrap();
    assert_eq!(v.outcome, Outcome::NotIsomorphic);
    assert_eq!(v.reason, "stacked_rank 1 vs 2");
    let v = decide(&b(6), &b(6), None).unwrap();
    assert_eq!(v.outcome, Outcome::Isomorphic);
    assert_eq!(v.witness, Some(WitnessMatrix::identity(2)));
    let moved = transport(&b(10), &WitnessMatrix::from_ints(&[[1, 2], [0, 1]])).unwrap();
    let v = decide(&moved, &b(10), None).unwrap();
    assert_eq!(v.outcome, Outcome::Isomorphic);
    assert!(check_witness(&moved, &b(10), v.witness.as_ref().unwrap()).unwrap());
    let v = decide(&MatrixTuple::zero(3), &MatrixTuple::zero(3), None).unwrap();
    assert_eq!(v.outcome, Outcome::Isomorphic);
}

proptest! {
    #[test]
    fn transported_tuples_keep_invariants(k in 0u8..12, a in invertible()) {
        let m = b(k);
        let t = transport(&m, &a).unwrap();
        prop_assert!(t.is_crisscross());
        prop_assert!(check_witness(&m, &t, &a).unwrap());
        prop_assert!(check_witness(&t, &m, &a.inverse()).unwrap());
        prop_assert_eq!(stacked_rank(&m), stacked_rank(&t));
        prop_assert_eq!(is_symmetric_tuple(&m), is_symmetric_tuple(&t));
    }

    #[test]
    fn witnesses_compose(k in 0u8..12, a in invertible(), c in invertible()) {
        let m = b(k);
        let t = transport(&m, &a).unwrap();
        let u = transport(&t, &c).unwrap();
        prop_assert!(check_witness(&m, &u, &a.then(&c).unwrap()).unwrap());
    }
}
