//! Degreewise cohomology of `(k<x1..xn>, d)`.
//!
//! The degree-d component has the basis `basis_words(n, d)`; a word's
//! coordinate is its base-n index. Ranks use the sparse integer echelon.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::dgcore::MatrixTuple;
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::linalg::{sparse_kernel, SparseEchelon, SparseVec};
use crate::matrix::Matrix;
use crate::rational::{common_denominator, Rational};

/// `d` restricted to the degree-`degree` component, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub degree: usize,
    n: usize,
    /// Column `i` is the image of the word with index `i`, as `(row, value)` pairs.
    columns: Vec<Vec<(usize, Rational)>>,
}

impl DifferentialMatrix {
    pub fn rows(&self) -> usize {
        self.n.pow(self.degree as u32 + 1)
    }

    pub fn cols(&self) -> usize {
        self.n.pow(self.degree as u32)
    }

    pub fn column(&self, i: usize) -> &[(usize, Rational)] {
        &self.columns[i]
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows(), self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m[(*r, c)] = v.clone();
            }
        }
        m
    }

    /// Columns scaled by one common denominator, so images and kernels are unchanged.
    pub fn integer_columns(&self) -> Vec<SparseVec> {
        let den = common_denominator(self.columns.iter().flatten().map(|(_, v)| v));
        let den = Rational::from(den);
        self.columns
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, (v * &den).to_integer())).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new();
        let mut cols = self.integer_columns();
        cols.sort_by_key(Vec::len);
        for c in cols {
            ech.insert(c);
        }
        ech.rank()
    }

    /// Applies the map to coordinates in degree `degree`.
    pub fn apply(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows()];
        for (c, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                out[*r] += x * v;
            }
        }
        out
    }
}

fn require_crisscross(t: &MatrixTuple) -> Result<()> {
    if t.is_crisscross() {
        Ok(())
    } else {
        Err(Error::NotCrisscross)
    }
}

/// Coordinatization of `d: A^d -> A^(d+1)` by index arithmetic on words.
pub fn differential_matrix(t: &MatrixTuple, d: usize) -> Result<DifferentialMatrix> {
    require_crisscross(t)?;
    Ok(differential_matrix_unchecked(t, d))
}

fn differential_matrix_unchecked(t: &MatrixTuple, d: usize) -> DifferentialMatrix {
    let n = t.n();
    let images = t.generator_images();
    let pow = |e: usize| n.pow(e as u32);
    let columns = (0..pow(d))
        .map(|idx| {
            let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
            let letters = Word::from_index(n, d, idx);
            let letters = letters.letters();
            for p in 0..d {
                // idx = prefix * n^(d-p) + letter * n^(d-p-1) + suffix
                let tail = pow(d - p - 1);
                let prefix = idx / (tail * n);
                let suffix = idx % tail;
                let positive = p % 2 == 0;
                for (j, k, v) in &images[letters[p] as usize] {
                    let row = (prefix * n * n + *j as usize * n + *k as usize) * tail + suffix;
                    let e = acc.entry(row).or_insert_with(Rational::zero);
                    if positive {
                        *e += v;
                    } else {
                        *e -= v;
                    }
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    DifferentialMatrix { degree: d, n, columns }
}

fn rank_in_degree(t: &MatrixTuple, d: Option<usize>) -> usize {
    d.map_or(0, |d| differential_matrix_unchecked(t, d).rank())
}

/// `dim H^d = n^d - rank d^d - rank d^(d-1)`.
pub fn cohomology_dim(t: &MatrixTuple, d: usize) -> Result<usize> {
    require_crisscross(t)?;
    Ok(t.n().pow(d as u32) - rank_in_degree(t, Some(d)) - rank_in_degree(t, d.checked_sub(1)))
}

fn to_rational(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = Rational::from(x.clone());
    }
    out
}

/// Echelon of the coboundaries `im d^(d-1)` inside degree `d`.
fn coboundaries(t: &MatrixTuple, d: usize) -> SparseEchelon {
    let mut ech = SparseEchelon::new();
    if let Some(prev) = d.checked_sub(1) {
        for c in differential_matrix_unchecked(t, prev).integer_columns() {
            ech.insert(c);
        }
    }
    ech
}

/// Cocycles whose classes form a basis of `H^d`.
///
/// Kernel vectors of `d^d` are taken in the order produced by elimination over
/// the words' index order, and kept when independent of the coboundaries and
/// the ones kept before.
pub fn cohomology_basis(t: &MatrixTuple, d: usize) -> Result<Vec<Element>> {
    require_crisscross(t)?;
    let n = t.n();
    let dm = differential_matrix_unchecked(t, d);
    let kernel = sparse_kernel(&dm.integer_columns(), dm.rows());
    let mut span = coboundaries(t, d);
    let mut reps = Vec::new();
    for k in kernel {
        if span.insert(k.clone()) {
            reps.push(Element::from_coordinates(n, d, &to_rational(&k, dm.cols())));
        }
    }
    Ok(reps)
}

fn homogeneous_degree(z1: &Element, z2: &Element) -> Result<usize> {
    let degs: Vec<usize> = z1.degrees().into_iter().chain(z2.degrees()).collect();
    match degs.first() {
        None => Ok(0),
        Some(&d) if degs.iter().all(|&e| e == d) => Ok(d),
        Some(_) => Err(Error::NotCocycle("inputs must be homogeneous of one degree".into())),
    }
}

/// Whether `z1 - z2` is a coboundary.
pub fn class_equal(t: &MatrixTuple, z1: &Element, z2: &Element) -> Result<bool> {
    require_crisscross(t)?;
    for z in [z1, z2] {
        if z.n() != t.n() {
            return Err(Error::GeneratorMismatch { left: t.n(), right: z.n() });
        }
        if !t.differential(z)?.is_zero() {
            return Err(Error::NotCocycle(z.to_string()));
        }
    }
    let d = homogeneous_degree(z1, z2)?;
    let diff = z1.checked_sub(z2)?;
    let den = Rational::from(common_denominator(diff.terms().map(|(_, c)| c)));
    let v: SparseVec = diff
        .terms()
        .map(|(w, c)| (w.index(t.n()), (c * &den).to_integer()))
        .collect::<std::collections::BTreeMap<usize, BigInt>>()
        .into_iter()
        .collect();
    Ok(coboundaries(t, d).contains(v))
}

/// An element `b` with `d(b) = z1 - z2`, when one exists.
pub fn coboundary_preimage(t: &MatrixTuple, z1: &Element, z2: &Element) -> Result<Option<Element>> {
    if !class_equal(t, z1, z2)? {
        return Ok(None);
    }
    let d = homogeneous_degree(z1, z2)?;
    let Some(prev) = d.checked_sub(1) else {
        return Ok(Some(Element::zero(t.n())));
    };
    let dm = differential_matrix_unchecked(t, prev);
    let target = z1.checked_sub(z2)?.coordinates(d);
    // Solve dm * x = target with a dense reduced echelon form on [dm | target].
    let m = dm.to_matrix();
    let mut rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(target[r].clone());
            row
        })
        .collect();
    let pivots = crate::linalg::rref(&mut rows, dm.cols());
    let mut x = vec![Rational::zero(); dm.cols()];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[dm.cols()].clone();
    }
    let b = Element::from_coordinates(t.n(), prev, &x);
    debug_assert_eq!(t.differential(&b)?, z1.checked_sub(z2)?);
    Ok(Some(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: usize,
    pub dim_component: usize,
    pub rank_d: usize,
    pub dim_ker: usize,
    pub dim_h: usize,
    #[serde(serialize_with = "crate::io::serialize_elements")]
    pub representatives: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub degrees: Vec<DegreeRecord>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|r| r.dim_h).collect()
    }

    /// Columns: degree, dim_component, rank_d, dim_ker, dim_H.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("degree\tdim_component\trank_d\tdim_ker\tdim_H\n");
        for r in &self.degrees {
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", r.degree, r.dim_component, r.rank_d, r.dim_ker, r.dim_h));
        }
        out
    }
}

/// Dimensions and ranks for degrees `0..=max_degree`, with representatives
/// when `with_representatives` is set.
pub fn cohomology_report(t: &MatrixTuple, max_degree: usize, with_representatives: bool) -> Result<CohomologyReport> {
    require_crisscross(t)?;
    let n = t.n();
    let ranks: Vec<usize> = (0..=max_degree).map(|d| rank_in_degree(t, Some(d))).collect();
    let degrees = (0..=max_degree)
        .map(|d| {
            let dim = n.pow(d as u32);
            let prev = if d == 0 { 0 } else { ranks[d - 1] };
            let dim_h = dim - ranks[d] - prev;
            let representatives = if with_representatives { cohomology_basis(t, d)? } else { Vec::new() };
            debug_assert!(!with_representatives || representatives.len() == dim_h);
            Ok(DegreeRecord { degree: d, dim_component: dim, rank_d: ranks[d], dim_ker: dim - ranks[d], dim_h, representatives })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyReport { n, degrees })
}

/// The full report for degrees `0..=max_degree`, representatives included.
pub fn cohomology_table(t: &MatrixTuple, max_degree: usize) -> Result<CohomologyReport> {
    cohomology_report(t, max_degree, true)
}

/// `dim H^d` for `d` in `0..=max_degree`.
pub fn cohomology_dims(t: &MatrixTuple, max_degree: usize) -> Result<Vec<usize>> {
    Ok(cohomology_report(t, max_degree, false)?.dims())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify2::{canonical_tuple, ClassLabel};
    use crate::freealg::basis_words;
    use crate::rational::int;

    fn b(k: u8) -> MatrixTuple {
        canonical_tuple(&ClassLabel::B(k)).unwrap()
    }

    fn el(s: &str) -> Element {
        Element::parse(2, s).unwrap()
    }

    #[test]
    fn differential_matrix_examples() {
        let m = differential_matrix(&b(6), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 2));
        assert_eq!(m.column(0), &[(Word::parse("x2.x2").unwrap().index(2), int(1))]);
        assert!(m.column(1).is_empty());
        assert!(differential_matrix(&MatrixTuple::zero(2), 3).unwrap().to_matrix().is_zero());
        let m = differential_matrix(&b(1), 1).unwrap();
        assert_eq!(m.to_matrix().transpose().row(0), el("x1.x1").coordinates(2).as_slice());
        assert_eq!(m.to_matrix().transpose().row(1), el("x2.x1").coordinates(2).as_slice());
    }

    #[test]
    fn index_route_matches_leibniz_route() {
        for t in [b(1), b(6), b(7), b(10), canonical_tuple(&ClassLabel::bst(int(2), int(3)).unwrap()).unwrap()] {
            for d in 0..=4 {
                let m = differential_matrix(&t, d).unwrap().to_matrix();
                for (i, w) in basis_words(2, d).into_iter().enumerate() {
                    let image = t.differential(&Element::monomial(2, w, int(1))).unwrap();
                    let col: Vec<Rational> = (0..m.rows()).map(|r| m[(r, i)].clone()).collect();
                    assert_eq!(col, image.coordinates(d + 1));
                }
            }
        }
    }

    #[test]
    fn dims_examples() {
        assert_eq!(cohomology_dim(&b(1), 3).unwrap(), 0);
        assert_eq!(cohomology_dim(&MatrixTuple::zero(2), 3).unwrap(), 8);
        assert_eq!(cohomology_dim(&b(6), 2).unwrap(), 1);
        let bad = MatrixTuple::from_ints(&[[[0, 1], [0, 0]], [[0, 0], [0, 0]]]);
        assert_eq!(cohomology_dim(&bad, 1), Err(Error::NotCrisscross));
    }

    #[test]
    fn basis_examples() {
        let reps = cohomology_basis(&b(8), 1).unwrap();
        assert_eq!(reps.len(), 1);
        let target = el("x2 - x1");
        assert!(reps[0] == target || reps[0] == -&target);
        let reps = cohomology_basis(&b(5), 2).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(class_equal(&b(5), &reps[0], &el("x2.x2")).unwrap() || class_equal(&b(5), &reps[0], &el("-1 * x2.x2")).unwrap());
        assert!(cohomology_basis(&b(1), 2).unwrap().is_empty());
    }

    #[test]
    fn class_equal_examples() {
        let w = el("x1.x2 + x2.x1");
        let x2 = el("x2");
        assert!(class_equal(&b(6), &(&x2 * &w), &(&w * &x2)).unwrap());
        let pre = coboundary_preimage(&b(6), &(&x2 * &w), &(&w * &x2)).unwrap().unwrap();
        assert_eq!(b(6).differential(&pre).unwrap(), &(&x2 * &w) - &(&w * &x2));
        assert!(class_equal(&b(6), &w, &w).unwrap());
        assert!(class_equal(&b(6), &(&x2 * &x2), &Element::zero(2)).unwrap());
        assert!(!class_equal(&b(6), &x2, &Element::zero(2)).unwrap());
        assert!(matches!(class_equal(&b(6), &el("x1"), &x2), Err(Error::NotCocycle(_))));
    }

    #[test]
    fn table_examples() {
        let bst = canonical_tuple(&ClassLabel::bst(int(1), int(3)).unwrap()).unwrap();
        assert_eq!(cohomology_dims(&bst, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(cohomology_dims(&b(6), 5).unwrap(), vec![1; 6]);
        let report = cohomology_table(&b(5), 5).unwrap();
        assert_eq!(report.dims(), vec![1; 6]);
        for r in &report.degrees {
            assert_eq!(r.dim_ker + r.rank_d, r.dim_component);
            assert_eq!(r.representatives.len(), r.dim_h);
        }
        assert!(report.to_tsv().starts_with("degree\tdim_component\trank_d\tdim_ker\tdim_H\n0\t1\t0\t1\t1\n"));
    }
}
