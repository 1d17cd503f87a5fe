//! Isomorphism of DG free algebras via witness matrices.
//!
//! A witness `A` for `m ~ t` realizes `f(x_i) = sum_j a_ij y_j`; the condition is
//! `sum_j a_ij N^j = A^T M^i A` for every `i`. Witnesses compose left to right:
//! if `A` certifies `m ~ t` and `B` certifies `t ~ u`, then `A * B` certifies `m ~ u`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::classify2;
use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::rational::Rational;

/// An invertible n x n rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessMatrix {
    matrix: Matrix,
}

impl WitnessMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!("witness is {}x{}", matrix.rows(), matrix.cols())));
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(WitnessMatrix { matrix })
    }

    /// Panics if singular; meant for literals.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        WitnessMatrix::new(Matrix::from_ints(rows)).expect("invertible literal")
    }

    pub fn identity(n: usize) -> Self {
        WitnessMatrix { matrix: Matrix::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn inverse(&self) -> WitnessMatrix {
        WitnessMatrix { matrix: self.matrix.inverse().expect("witness is invertible") }
    }

    /// `self * next`: the witness for the composite isomorphism.
    pub fn then(&self, next: &WitnessMatrix) -> Result<WitnessMatrix> {
        Ok(WitnessMatrix { matrix: self.matrix.checked_mul(&next.matrix)? })
    }
}

impl fmt::Display for WitnessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// Folds a chain of witnesses into one.
pub fn compose(chain: &[WitnessMatrix]) -> Result<WitnessMatrix> {
    let n = chain.first().map(WitnessMatrix::n).ok_or_else(|| Error::Dimension("empty witness chain".into()))?;
    chain.iter().try_fold(WitnessMatrix::identity(n), |acc, w| acc.then(w))
}

fn same_size(m: &MatrixTuple, t: &MatrixTuple, a: &WitnessMatrix) -> Result<()> {
    if m.n() != t.n() {
        return Err(Error::GeneratorMismatch { left: m.n(), right: t.n() });
    }
    if a.n() != m.n() {
        return Err(Error::Dimension(format!("witness is {}x{}, tuples have n = {}", a.n(), a.n(), m.n())));
    }
    Ok(())
}

/// The right-hand side `A^T M^i A` for every `i`.
fn congruences(m: &MatrixTuple, a: &WitnessMatrix) -> Vec<Matrix> {
    let at = a.matrix.transpose();
    m.matrices().iter().map(|mi| &(&at * mi) * &a.matrix).collect()
}

/// Whether `a` certifies `m ~ t`.
pub fn check_witness(m: &MatrixTuple, t: &MatrixTuple, a: &WitnessMatrix) -> Result<bool> {
    same_size(m, t, a)?;
    if !m.is_crisscross() || !t.is_crisscross() {
        return Err(Error::NotCrisscross);
    }
    Ok(witness_equations_hold(m, t, a))
}

pub(crate) fn witness_equations_hold(m: &MatrixTuple, t: &MatrixTuple, a: &WitnessMatrix) -> bool {
    let n = m.n();
    let rhs = congruences(m, a);
    (0..n).all(|i| {
        let mut lhs = Matrix::zeros(n, n);
        for j in 0..n {
            lhs = &lhs + &t.matrices()[j].scale(&a.matrix[(i, j)]);
        }
        lhs == rhs[i]
    })
}

/// The unique tuple `t` with `check_witness(m, t, a)`: `N^i = sum_j (A^-1)_ij A^T M^j A`.
pub fn transport(m: &MatrixTuple, a: &WitnessMatrix) -> Result<MatrixTuple> {
    if a.n() != m.n() {
        return Err(Error::Dimension(format!("witness size {} for n = {}", a.n(), m.n())));
    }
    let n = m.n();
    let inv = a.inverse();
    let c = congruences(m, a);
    let out = (0..n)
        .map(|i| {
            (0..n).fold(Matrix::zeros(n, n), |acc, j| &acc + &c[j].scale(&inv.matrix[(i, j)]))
        })
        .collect();
    MatrixTuple::new(out)
}

/// Rank of the n^2 x n stack of the tuple's matrices.
pub fn stacked_rank(t: &MatrixTuple) -> usize {
    linalg::rank(&t.stacked_rows())
}

pub fn is_symmetric_tuple(t: &MatrixTuple) -> bool {
    t.matrices().iter().all(Matrix::is_symmetric)
}

pub fn is_automorphism(t: &MatrixTuple, a: &WitnessMatrix) -> Result<bool> {
    check_witness(t, t, a)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub stacked_rank: (usize, usize),
    pub symmetric: (bool, bool),
}

impl InvariantReport {
    pub fn of(m: &MatrixTuple, t: &MatrixTuple) -> Self {
        InvariantReport {
            stacked_rank: (stacked_rank(m), stacked_rank(t)),
            symmetric: (is_symmetric_tuple(m), is_symmetric_tuple(t)),
        }
    }

    /// A reason the two tuples cannot be isomorphic, if the invariants show one.
    pub fn obstruction(&self) -> Option<String> {
        let (r1, r2) = self.stacked_rank;
        if r1 != r2 {
            return Some(format!("stacked_rank {r1} vs {r2}"));
        }
        let (s1, s2) = self.symmetric;
        if s1 != s2 {
            return Some(format!("symmetric {s1} vs {s2}"));
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoVerdict {
    pub outcome: Outcome,
    pub witness: Option<WitnessMatrix>,
    pub reason: String,
    pub report: InvariantReport,
}

/// Decides `m ~ t` as far as the theory allows.
///
/// Order: supplied witness, equal tuples, rank/symmetry invariants, and for
/// n = 2 the classification. Anything left is undecided.
pub fn decide(m: &MatrixTuple, t: &MatrixTuple, witness: Option<&WitnessMatrix>) -> Result<IsoVerdict> {
    if m.n() != t.n() {
        return Err(Error::GeneratorMismatch { left: m.n(), right: t.n() });
    }
    if !m.is_crisscross() || !t.is_crisscross() {
        return Err(Error::NotCrisscross);
    }
    let report = InvariantReport::of(m, t);
    let verdict = |outcome, witness, reason: String| IsoVerdict { outcome, witness, reason, report: report.clone() };
    let mut rejected = None;
    if let Some(a) = witness {
        if check_witness(m, t, a)? {
            return Ok(verdict(Outcome::Isomorphic, Some(a.clone()), "supplied witness verified".into()));
        }
        rejected = Some("supplied witness rejected");
    }
    let with_note = |s: String| match rejected {
        Some(r) => format!("{r}; {s}"),
        None => s,
    };
    if m == t {
        return Ok(verdict(Outcome::Isomorphic, Some(WitnessMatrix::identity(m.n())), with_note("identical tuples".into())));
    }
    if let Some(reason) = report.obstruction() {
        return Ok(verdict(Outcome::NotIsomorphic, None, with_note(reason)));
    }
    if m.n() == 2 {
        let a = classify2::classify_reduced(m)?;
        let b = classify2::classify_reduced(t)?;
        if a.label == b.label {
            let w = a.witness.then(&b.witness.inverse())?;
            debug_assert!(witness_equations_hold(m, t, &w));
            return Ok(verdict(Outcome::Isomorphic, Some(w), with_note(format!("both classify as {}", a.label))));
        }
        return Ok(verdict(
            Outcome::Undecided,
            None,
            with_note(format!("classified as {} vs {}; no invariant separates them", a.label, b.label)),
        ));
    }
    Ok(verdict(Outcome::Undecided, None, with_note(format!("no witness search for n = {}", m.n()))))
}

/// Scalar multiple of the identity, a convenience for tests and catalogs.
pub fn scalar_witness(n: usize, c: Rational) -> Result<WitnessMatrix> {
    WitnessMatrix::new(Matrix::identity(n).scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify2::{canonical_tuple, ClassLabel};
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn b1() -> MatrixTuple {
        MatrixTuple::from_ints(&[[[1, 0], [0, 0]], [[0, 0], [1, 0]]])
    }
    fn b2() -> MatrixTuple {
        MatrixTuple::from_ints(&[[[1, 0], [0, 0]], [[0, 1], [0, 0]]])
    }
    fn b6() -> MatrixTuple {
        MatrixTuple::from_ints(&[[[0, 0], [0, 1]], [[0, 0], [0, 0]]])
    }
    fn b8() -> MatrixTuple {
        MatrixTuple::from_ints(&[[[0, 0], [0, 1]], [[0, 0], [0, 1]]])
    }
    fn bst(s: Rational, t: Rational) -> MatrixTuple {
        let one = int(1);
        let m1 = Matrix::from_rows(vec![
            vec![&one + &s - &s * &t, one.clone()],
            vec![one.clone(), one.clone() / &s],
        ])
        .unwrap();
        let m2 = Matrix::from_rows(vec![vec![s, one.clone()], vec![one, t]]).unwrap();
        MatrixTuple::new(vec![m1, m2]).unwrap()
    }

    #[test]
    fn known_witness_examples() {
        // Case 2 with nu = 1 and Case 8 with mu = 1.
        let case2 = MatrixTuple::from_ints(&[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]);
        let case8 = MatrixTuple::from_ints(&[[[0, 1], [0, 0]], [[0, 0], [0, 1]]]);
        let swap = WitnessMatrix::from_ints(&[[0, 1], [1, 0]]);
        assert!(check_witness(&case2, &case8, &swap).unwrap());
        assert!(check_witness(&b1(), &b1(), &WitnessMatrix::identity(2)).unwrap());
        let a = WitnessMatrix::new(
            Matrix::from_rows(vec![vec![int(2), frac(5, 2)], vec![int(3), frac(3, 2)]]).unwrap(),
        )
        .unwrap();
        assert!(check_witness(&b8(), &bst(int(2), frac(1, 2)), &a).unwrap());
    }

    #[test]
    fn witness_rejects_bad_input() {
        assert_eq!(WitnessMatrix::new(Matrix::from_ints(&[[1, 1], [1, 1]])), Err(Error::Singular));
        let bad = MatrixTuple::from_ints(&[[[0, 1], [0, 0]], [[0, 0], [0, 0]]]);
        assert_eq!(check_witness(&bad, &bad, &WitnessMatrix::identity(2)), Err(Error::NotCrisscross));
        assert!(check_witness(&b1(), &b1(), &WitnessMatrix::identity(3)).is_err());
    }

    #[test]
    fn invariants() {
        assert_eq!(stacked_rank(&b1()), 1);
        assert_eq!(stacked_rank(&b2()), 2);
        assert_eq!(stacked_rank(&MatrixTuple::zero(2)), 0);
        assert!(is_symmetric_tuple(&b6()));
        assert!(!is_symmetric_tuple(&b1()));
        assert!(is_symmetric_tuple(&MatrixTuple::zero(3)));
    }

    #[test]
    fn automorphisms() {
        assert!(is_automorphism(&b1(), &WitnessMatrix::identity(2)).unwrap());
        let a = WitnessMatrix::from_ints(&[[2, 7], [-1, 3]]);
        assert!(is_automorphism(&MatrixTuple::zero(2), &a).unwrap());
        // d(x1) = d(x2) = x2^2; the swap would send d(x1) to y1^2, not y2^2.
        let swap = WitnessMatrix::from_ints(&[[0, 1], [1, 0]]);
        assert!(!is_automorphism(&b8(), &swap).unwrap());
        // x1 -> a x1 + (1 - a) x2, x2 -> x2.
        let g = WitnessMatrix::from_ints(&[[2, -1], [0, 1]]);
        let h = WitnessMatrix::from_ints(&[[-2, 3], [0, 1]]);
        assert!(is_automorphism(&b8(), &g).unwrap());
        assert!(is_automorphism(&b8(), &h).unwrap());
        assert!(is_automorphism(&b8(), &g.then(&h).unwrap()).unwrap());
        assert!(is_automorphism(&b8(), &g.inverse()).unwrap());
    }

    #[test]
    fn composition_order() {
        // Case 2 (nu = 1) -> Case 8 (mu = 2) -> Case 11 (nu = 3, mu = 2).
        let c2 = b1();
        let c8 = MatrixTuple::from_ints(&[[[0, 2], [0, 0]], [[0, 0], [0, 2]]]);
        let c11 = MatrixTuple::from_ints(&[[[3, 2], [0, 0]], [[0, 0], [3, 2]]]);
        let a = WitnessMatrix::from_ints(&[[0, 2], [1, 0]]);
        let b = WitnessMatrix::new(Matrix::from_rows(vec![vec![int(1), int(0)], vec![frac(3, 2), int(1)]]).unwrap()).unwrap();
        assert!(check_witness(&c2, &c8, &a).unwrap());
        assert!(check_witness(&c8, &c11, &b).unwrap());
        assert!(check_witness(&c2, &c11, &a.then(&b).unwrap()).unwrap());
        assert!(!check_witness(&c2, &c11, &b.then(&a).unwrap()).unwrap());
        assert!(check_witness(&c11, &c2, &a.then(&b).unwrap().inverse()).unwrap());
    }

    #[test]
    fn decide_examples() {
        let v = decide(&b1(), &b2(), None).unwrap();
        assert_eq!(v.outcome, Outcome::NotIsomorphic);
        assert_eq!(v.reason, "stacked_rank 1 vs 2");
        let v = decide(&b6(), &b6(), None).unwrap();
        assert_eq!(v.outcome, Outcome::Isomorphic);
        assert_eq!(v.witness, Some(WitnessMatrix::identity(2)));
        let v = decide(&b8(), &bst(int(2), frac(1, 2)), None).unwrap();
        assert_eq!(v.outcome, Outcome::Isomorphic);
        assert!(check_witness(&b8(), &bst(int(2), frac(1, 2)), v.witness.as_ref().unwrap()).unwrap());
        let t3 = MatrixTuple::from_ints(&[[[1, 0, 0], [0, 0, 0], [0, 0, 0]], [[0; 3]; 3], [[0; 3]; 3]]);
        let v = decide(&t3, &transport(&t3, &WitnessMatrix::from_ints(&[[1, 1, 0], [0, 1, 0], [0, 0, 2]])).unwrap(), None).unwrap();
        assert_eq!(v.outcome, Outcome::Undecided);
    }

    fn invertible() -> impl Strategy<Value = WitnessMatrix> {
        prop::array::uniform4(-3i64..=3i64).prop_filter_map("singular", |[a, b, c, d]| {
            WitnessMatrix::new(Matrix::from_ints(&[[a, b], [c, d]])).ok()
        })
    }

    proptest! {
        #[test]
        fn transport_is_certified(label in prop::sample::select(ClassLabel::fixed().to_vec()), a in invertible()) {
            let m = canonical_tuple(&label).unwrap();
            let t = transport(&m, &a).unwrap();
            prop_assert!(t.is_crisscross());
            prop_assert!(check_witness(&m, &t, &a).unwrap());
            prop_assert!(check_witness(&t, &m, &a.inverse()).unwrap());
            prop_assert_eq!(stacked_rank(&m), stacked_rank(&t));
            if is_symmetric_tuple(&m) {
                prop_assert!(is_symmetric_tuple(&t));
            }
        }
    }
}
